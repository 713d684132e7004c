/*
   Copyright 2026 The mrn Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>

#include "mrn/empirical.hpp"
#include "mrn/measure.hpp"

namespace mrn {

/// Extended nonnegative rate value with an optional witness naming the
/// constraint that forced +inf.
struct RatePair {
    double value = 0.0;
    bool finite = true;
    std::string witness;

    static RatePair of(double v) { return {v, true, {}}; }
    static RatePair infinite(std::string w) { return {kInf, false, std::move(w)}; }
};

/// I(rho,pi) = H(rho||eta) + (1/2) h_{kappa/ell}(pi||rho).
RatePair rate_I(const ProbabilityMeasure& rho, const PairMeasure& pi,
                const ProbabilityMeasure& eta, const ConnectivityKernel& kernel);

/// I_1(omega,pi) = (1/2) h_{kappa/ell}(pi||omega).
RatePair rate_I1(const ProbabilityMeasure& omega, const PairMeasure& pi,
                 const ConnectivityKernel& kernel);

/// Truncated Poisson pmf q_c(k) = e^{-c} c^k / k!, tail mass in overflow.
DegreeDistribution poisson_pmf(double c, int k_max);

/// q1(a,l) = omega1(a) prod_b Poisson(pi(a,b)/omega1(a))(l(b)), profiles
/// truncated at cap per coordinate with the tail in per-type overflow.
NeighbourhoodMeasure q1_kernel(const PairMeasure& pi, const ProbabilityMeasure& omega1, int cap);

/// J1(pi,omega) = H(omega||q1) + H(omega1||eta) + (1/2) h_{kappa/ell}(pi||omega1)
/// when (pi,omega) are consistent; +inf with a witness otherwise.
RatePair rate_J1(const PairMeasure& pi, const NeighbourhoodMeasure& omega,
                 const ProbabilityMeasure& eta, const ConnectivityKernel& kernel, int cap);

/// lambda(d) = H(d||q_<d>) + (1/2)<d> log(<d>/c) - (1/2)<d> + c/2 with
/// c = kernel_scalar; +inf when d has overflow mass (infinite-mean proxy).
RatePair degree_rate_lambda(const DegreeDistribution& d, double kernel_scalar);

/// Unique positive root t of 1 - e^{-t} = (c/t)(1 - z), by bracketed
/// bisection; the residual of the returned t is below 1e-12.
double solve_t(double z, double kernel_scalar);

/// Isolated-vertex rate h(z) = z log z + c z(1 - z/2)
///   - (1-z)[log(c/t) - (t - c(1-z))^2 / (2c(1-z))], t = solve_t(z, c).
/// h(0) uses 0 log 0 = 0; h(1) = c/2 (closed-form limit).
RatePair isolated_rate_h(double z, double kernel_scalar);

/// min{ lambda(d) : d(0) = z } over pmfs truncated at k_max, by projected
/// gradient descent on the simplex with random restarts plus a warm start
/// at the analytic stationary shape d_k ~ t^k/k!.
double min_degree_rate_given_isolated(double z, double kernel_scalar, int k_max,
                                      int restarts = 1000, std::uint64_t seed = 1);

}  // namespace mrn
