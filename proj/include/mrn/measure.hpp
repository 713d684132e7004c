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

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mrn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Finite ordered set of group labels. The ordering is fixed for the
/// lifetime of a run; all measures index into it by position.
class TypeAlphabet {
public:
    explicit TypeAlphabet(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Index of a label, or nullopt if unknown.
    std::optional<std::size_t> index_of(const std::string& label) const;

private:
    std::vector<std::string> labels_;
};

/// Nonnegative weights over the alphabet summing to 1 (tolerance 1e-12).
class ProbabilityMeasure {
public:
    explicit ProbabilityMeasure(std::vector<double> weights);

    /// Point mass on label index `i` over an alphabet of `m` labels.
    static ProbabilityMeasure point_mass(std::size_t m, std::size_t i);

    std::size_t size() const { return w_.size(); }
    double operator()(std::size_t a) const { return w_[a]; }
    const std::vector<double>& weights() const { return w_; }

private:
    std::vector<double> w_;
};

/// Nonnegative matrix over ordered label pairs; not necessarily normalized.
/// If the symmetric flag is set, weights(a,b) == weights(b,a) exactly.
class PairMeasure {
public:
    PairMeasure(std::size_t m, std::vector<double> weights, bool symmetric);

    /// Zero measure.
    static PairMeasure zero(std::size_t m, bool symmetric = true);

    std::size_t size() const { return m_; }
    bool symmetric() const { return symmetric_; }
    double operator()(std::size_t a, std::size_t b) const { return w_[a * m_ + b]; }
    double& at(std::size_t a, std::size_t b) { return w_[a * m_ + b]; }
    const std::vector<double>& weights() const { return w_; }

    /// Total mass (compensated summation).
    double total_mass() const;

    /// Second marginal pi_2(b) = sum_a pi(a,b), as raw weights.
    std::vector<double> second_marginal() const;

    PairMeasure scaled(double factor) const;

private:
    std::size_t m_;
    std::vector<double> w_;
    bool symmetric_;
};

/// The limit ratio c(a,b) = kappa(a,b)/ell(a,b); only the ratio enters any
/// limit object, so kappa and ell are never stored separately. ell = inf
/// (no links) is represented as c = 0.
class ConnectivityKernel {
public:
    ConnectivityKernel(std::size_t m, std::vector<double> entries);

    /// Constant kernel c(a,b) = value.
    static ConnectivityKernel constant(std::size_t m, double value);

    std::size_t size() const { return m_; }
    double operator()(std::size_t a, std::size_t b) const { return c_[a * m_ + b]; }
    const std::vector<double>& entries() const { return c_; }
    bool is_symmetric() const;

private:
    std::size_t m_;
    std::vector<double> c_;
};

/// Real-valued function on ordered label pairs, all entries finite.
class TestFunction {
public:
    TestFunction(std::size_t m, std::vector<double> values);

    static TestFunction constant(std::size_t m, double value);

    std::size_t size() const { return m_; }
    double operator()(std::size_t a, std::size_t b) const { return g_[a * m_ + b]; }
    double& at(std::size_t a, std::size_t b) { return g_[a * m_ + b]; }
    const std::vector<double>& values() const { return g_; }

private:
    std::size_t m_;
    std::vector<double> g_;
};

/// H(mu||nu) = sum_x mu(x) log(mu(x)/nu(x)) with 0 log(0/q) = 0 and
/// mu(x) > 0, nu(x) = 0 -> +inf. Inputs need not be normalized.
double relative_entropy(const std::vector<double>& mu, const std::vector<double>& nu);

/// (kappa/ell) rho (x) rho: entry (a,b) = c(a,b) rho(a) rho(b).
PairMeasure kernel_product(const ConnectivityKernel& kernel, const ProbabilityMeasure& rho);

/// Kullback action h_{kappa/ell}(pi||rho) = H(pi||c rho(x)rho) + ||c rho(x)rho|| - ||pi||.
/// Nonnegative; zero iff pi equals the kernel product entrywise.
double kullback_action(const PairMeasure& pi, const ProbabilityMeasure& rho,
                       const ConnectivityKernel& kernel);

/// Spectral potential rho_{kappa/ell}(g, omega) = -<(1 - e^g), c omega(x)omega>.
/// Throws std::overflow_error if e^g overflows where the coefficient is nonzero.
double spectral_potential(const TestFunction& g, const ProbabilityMeasure& omega,
                          const ConnectivityKernel& kernel);

struct VariationalGap {
    double value;                            // sup_g {<g,pi> - rho(g,omega)}
    std::optional<TestFunction> maximizer;   // g* = log(pi / (c omega(x)omega)); empty when value = +inf
};

/// Finite-dimensional variational identity for the Kullback action:
/// sup_g {<g,pi> - rho(g,omega)} attained at g* = log(pi/(c omega(x)omega)),
/// with value equal to kullback_action(pi, omega, kernel). Entries where
/// pi vanishes use a large negative floor so the maximizer stays finite.
VariationalGap kullback_variational_gap(const PairMeasure& pi, const ProbabilityMeasure& omega,
                                        const ConnectivityKernel& kernel);

/// <g, pi> = sum_{a,b} g(a,b) pi(a,b).
double pairing(const TestFunction& g, const PairMeasure& pi);

/// Total variation distance (1/2) sum |p - q| between pmfs on a shared support.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace mrn
