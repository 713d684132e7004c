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

#include "mrn/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mrn/rng.hpp"

namespace mrn {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// log q_c(k) for c > 0.
double log_poisson(double c, int k) {
    return -c + static_cast<double>(k) * std::log(c) - std::lgamma(static_cast<double>(k) + 1.0);
}

/// Euclidean projection onto {x >= 0, sum x = s}.
void project_simplex(std::vector<double>& x, double s) {
    std::vector<double> u(x);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumsum = 0.0, theta = 0.0;
    std::size_t rho = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumsum += u[j];
        double th = (cumsum - s) / static_cast<double>(j + 1);
        if (u[j] - th > 0.0) {
            rho = j + 1;
            theta = th;
        }
    }
    (void)rho;
    for (double& v : x) v = std::max(v - theta, 0.0);
}

}  // namespace

RatePair rate_I(const ProbabilityMeasure& rho, const PairMeasure& pi,
                const ProbabilityMeasure& eta, const ConnectivityKernel& kernel) {
    double h = relative_entropy(rho.weights(), eta.weights());
    if (std::isinf(h)) return RatePair::infinite("rho not absolutely continuous w.r.t. eta");
    double kb = kullback_action(pi, rho, kernel);
    if (std::isinf(kb)) return RatePair::infinite("pi charges a pair outside the kernel product support");
    return RatePair::of(h + 0.5 * kb);
}

RatePair rate_I1(const ProbabilityMeasure& omega, const PairMeasure& pi,
                 const ConnectivityKernel& kernel) {
    double kb = kullback_action(pi, omega, kernel);
    if (std::isinf(kb)) return RatePair::infinite("pi charges a pair outside the kernel product support");
    return RatePair::of(0.5 * kb);
}

DegreeDistribution poisson_pmf(double c, int k_max) {
    if (c < 0.0) throw std::domain_error("poisson_pmf: c must be >= 0");
    if (k_max < 0) throw std::invalid_argument("poisson_pmf: k_max must be >= 0");
    DegreeDistribution out;
    out.pmf.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    if (c == 0.0) {
        out.pmf[0] = 1.0;
        return out;
    }
    double term = std::exp(-c);
    double total = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        out.pmf[k] = term;
        total += term;
        term *= c / static_cast<double>(k + 1);
    }
    out.overflow = std::max(0.0, 1.0 - total);
    return out;
}

NeighbourhoodMeasure q1_kernel(const PairMeasure& pi, const ProbabilityMeasure& omega1, int cap) {
    if (pi.size() != omega1.size())
        throw std::invalid_argument("q1_kernel: alphabet size mismatch");
    if (cap < 1) throw std::invalid_argument("q1_kernel: cap must be >= 1");
    const std::size_t m = pi.size();
    if (std::pow(static_cast<double>(cap) + 1.0, static_cast<double>(m)) > 2e6)
        throw std::invalid_argument("q1_kernel: (cap+1)^m profile table too large");

    NeighbourhoodMeasure out;
    out.num_labels = m;
    out.cap = cap;
    out.overflow.assign(m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        if (omega1(a) == 0.0) {
            for (std::size_t b = 0; b < m; ++b)
                if (pi(a, b) > 0.0)
                    throw std::domain_error("q1_kernel: pi charges a type with zero omega1 mass");
            continue;
        }
        // Per-coordinate Poisson pmfs with means pi(a,b)/omega1(a).
        std::vector<std::vector<double>> pois(m);
        for (std::size_t b = 0; b < m; ++b) {
            double lambda = pi(a, b) / omega1(a);
            auto q = poisson_pmf(lambda, cap);
            pois[b] = q.pmf;
        }
        CountProfile l(m, 0);
        double stored = 0.0;
        while (true) {
            double w = omega1(a);
            for (std::size_t b = 0; b < m; ++b) w *= pois[b][l[b]];
            if (w > 0.0) {
                out.mass[{static_cast<std::uint32_t>(a), l}] = w;
                stored += w;
            }
            // odometer over {0..cap}^m
            std::size_t b = 0;
            while (b < m && l[b] == cap) l[b++] = 0;
            if (b == m) break;
            ++l[b];
        }
        out.overflow[a] = std::max(0.0, omega1(a) - stored);
    }
    return out;
}

RatePair rate_J1(const PairMeasure& pi, const NeighbourhoodMeasure& omega,
                 const ProbabilityMeasure& eta, const ConnectivityKernel& kernel, int cap) {
    if (pi.size() != omega.num_labels || eta.size() != pi.size() || kernel.size() != pi.size())
        throw std::invalid_argument("rate_J1: alphabet size mismatch");
    auto cons = consistency_check(pi, omega);
    if (!cons.ok) return RatePair::infinite("consistency");

    ProbabilityMeasure omega1(omega.type_marginal());
    NeighbourhoodMeasure q1 = q1_kernel(pi, omega1, cap);

    double h_omega_q1 = 0.0;
    for (const auto& [key, w] : omega.mass) {
        if (w == 0.0) continue;
        auto it = q1.mass.find(key);
        if (it == q1.mass.end() || it->second == 0.0)
            return RatePair::infinite("omega charges a profile outside the q1 support");
        h_omega_q1 += w * std::log(w / it->second);
    }

    double h_eta = relative_entropy(omega1.weights(), eta.weights());
    if (std::isinf(h_eta)) return RatePair::infinite("omega1 not absolutely continuous w.r.t. eta");
    double kb = kullback_action(pi, omega1, kernel);
    if (std::isinf(kb)) return RatePair::infinite("pi charges a pair outside the kernel product support");
    return RatePair::of(h_omega_q1 + h_eta + 0.5 * kb);
}

RatePair degree_rate_lambda(const DegreeDistribution& d, double kernel_scalar) {
    const double c = kernel_scalar;
    if (!(c > 0.0)) throw std::domain_error("degree_rate_lambda: kernel scalar must be > 0");
    if (d.overflow > 0.0) return RatePair::infinite("infinite mean (overflow mass at the cap)");
    const double mean = d.mean();

    double h = 0.0;
    for (std::size_t k = 0; k < d.pmf.size(); ++k) {
        double dk = d.pmf[k];
        if (dk == 0.0) continue;
        if (mean == 0.0) {
            if (k > 0) return RatePair::infinite("d charges k > 0 with zero mean");
            continue;  // d(0) log(d(0)/1) with d(0) = 1
        }
        h += dk * (std::log(dk) - log_poisson(mean, static_cast<int>(k)));
    }

    double value = h + 0.5 * (mean > 0.0 ? mean * std::log(mean / c) : 0.0) - 0.5 * mean + 0.5 * c;
    return RatePair::of(value);
}

double solve_t(double z, double kernel_scalar) {
    const double c = kernel_scalar;
    if (!(c > 0.0)) throw std::domain_error("solve_t: kernel scalar must be > 0");
    if (!(z >= 0.0) || z >= 1.0) throw std::domain_error("solve_t: z must lie in [0, 1)");
    auto residual = [&](double t) { return 1.0 - std::exp(-t) - (c / t) * (1.0 - z); };
    double lo = 1e-12;
    double hi = std::max(c, 1.0);
    while (residual(hi) <= 0.0) hi *= 2.0;
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0) lo = mid; else hi = mid;
    }
    double t = 0.5 * (lo + hi);
    if (std::abs(residual(t)) >= 1e-12)
        throw std::runtime_error("solve_t: bisection failed to reach residual tolerance");
    return t;
}

RatePair isolated_rate_h(double z, double kernel_scalar) {
    const double c = kernel_scalar;
    if (!(c > 0.0)) throw std::domain_error("isolated_rate_h: kernel scalar must be > 0");
    if (!(z >= 0.0) || !(z <= 1.0)) throw std::domain_error("isolated_rate_h: z must lie in [0, 1]");
    if (z == 1.0) return RatePair::of(0.5 * c);  // limit; the bracketed term vanishes
    double t = solve_t(z, c);
    double bracket = std::log(c / t)
                     - (t - c * (1.0 - z)) * (t - c * (1.0 - z)) / (2.0 * c * (1.0 - z));
    double value = xlogx(z) + c * z * (1.0 - z / 2.0) - (1.0 - z) * bracket;
    return RatePair::of(value);
}

namespace {

/// lambda(d) with d(0) = z fixed and d(1..K) = x, no truncation overflow.
double lambda_objective(double z, const std::vector<double>& x, double c) {
    double mean = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
        mean += static_cast<double>(k + 1) * x[k];
    double h = xlogx(z) - (z > 0.0 && mean > 0.0 ? z * log_poisson(mean, 0) : 0.0);
    if (mean == 0.0) return (z >= 1.0) ? 0.5 * c : kInf;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] == 0.0) continue;
        h += x[k] * (std::log(x[k]) - log_poisson(mean, static_cast<int>(k + 1)));
    }
    return h + 0.5 * mean * std::log(mean / c) - 0.5 * mean + 0.5 * c;
}

/// d lambda / d x_k = log x_k + 1 + log (k+1)! - ((k+1)/2) log(mean * c).
void lambda_gradient(const std::vector<double>& x, double c, std::vector<double>& grad) {
    double mean = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
        mean += static_cast<double>(k + 1) * x[k];
    double logmc = std::log(std::max(mean, 1e-300) * c);
    for (std::size_t k = 0; k < x.size(); ++k) {
        double lx = x[k] > 0.0 ? std::log(x[k]) : -690.0;
        grad[k] = lx + 1.0 + std::lgamma(static_cast<double>(k + 2))
                  - 0.5 * static_cast<double>(k + 1) * logmc;
    }
}

double pgd_from(double z, std::vector<double> x, double c, int iters) {
    const double s = 1.0 - z;
    project_simplex(x, s);
    double f = lambda_objective(z, x, c);
    double step = 0.05;
    std::vector<double> grad(x.size()), trial(x.size());
    for (int it = 0; it < iters; ++it) {
        lambda_gradient(x, c, grad);
        trial = x;
        for (std::size_t k = 0; k < x.size(); ++k) trial[k] -= step * grad[k];
        project_simplex(trial, s);
        double ft = lambda_objective(z, trial, c);
        if (ft < f) {
            x.swap(trial);
            f = ft;
            step *= 1.25;
        } else {
            step *= 0.5;
            if (step < 1e-16) break;
        }
    }
    return f;
}

}  // namespace

double min_degree_rate_given_isolated(double z, double kernel_scalar, int k_max,
                                      int restarts, std::uint64_t seed) {
    const double c = kernel_scalar;
    if (!(c > 0.0)) throw std::domain_error("min_degree_rate_given_isolated: kernel scalar must be > 0");
    if (!(z >= 0.0) || z >= 1.0)
        throw std::domain_error("min_degree_rate_given_isolated: z must lie in [0, 1)");
    if (k_max < 1) throw std::invalid_argument("min_degree_rate_given_isolated: k_max must be >= 1");
    const std::size_t K = static_cast<std::size_t>(k_max);
    const double s = 1.0 - z;

    // Warm start at the stationary shape d_k ~ t^k / k!.
    double t = solve_t(z, c);
    std::vector<double> warm(K);
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        warm[k] = std::exp(static_cast<double>(k + 1) * std::log(t)
                           - std::lgamma(static_cast<double>(k + 2)));
        total += warm[k];
    }
    for (double& v : warm) v *= s / total;
    double best = pgd_from(z, warm, c, 20000);

    SeededRng rng(seed, 0);
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> x(K);
        double tot = 0.0;
        for (auto& v : x) {
            v = -std::log(1.0 - rng.uniform01());
            tot += v;
        }
        for (auto& v : x) v *= s / tot;
        best = std::min(best, pgd_from(z, x, c, 300));
    }
    // Polish: the objective is convex, so the warm-started run dominates;
    // one long run from scratch guards against a bad warm start.
    std::vector<double> uniform(K, s / static_cast<double>(K));
    best = std::min(best, pgd_from(z, uniform, c, 20000));
    return best;
}

}  // namespace mrn
