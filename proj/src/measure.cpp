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

#include "mrn/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mrn {

namespace {

constexpr double kMassTol = 1e-12;

// Floor for log(0) inside the analytic maximizer; exp(kLogFloor) underflows
// to a value below 1e-300, so the floored entries contribute nothing at
// double precision.
constexpr double kLogFloor = -745.0;

double kahan_sum(const std::vector<double>& v) {
    double s = 0.0, comp = 0.0;
    for (double x : v) {
        double y = x - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace

TypeAlphabet::TypeAlphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty())
        throw std::invalid_argument("TypeAlphabet: at least one label required");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
        throw std::invalid_argument("TypeAlphabet: labels must be distinct");
}

std::optional<std::size_t> TypeAlphabet::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

ProbabilityMeasure::ProbabilityMeasure(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw std::invalid_argument("ProbabilityMeasure: empty weight vector");
    for (double x : w_) {
        if (!(x >= 0.0)) throw std::domain_error("ProbabilityMeasure: negative or NaN weight");
    }
    double total = kahan_sum(w_);
    if (std::abs(total - 1.0) > kMassTol)
        throw std::invalid_argument("ProbabilityMeasure: weights must sum to 1");
}

ProbabilityMeasure ProbabilityMeasure::point_mass(std::size_t m, std::size_t i) {
    std::vector<double> w(m, 0.0);
    w.at(i) = 1.0;
    return ProbabilityMeasure(std::move(w));
}

PairMeasure::PairMeasure(std::size_t m, std::vector<double> weights, bool symmetric)
    : m_(m), w_(std::move(weights)), symmetric_(symmetric) {
    if (m_ == 0 || w_.size() != m_ * m_)
        throw std::invalid_argument("PairMeasure: weight vector must have m*m entries");
    for (double x : w_) {
        if (!(x >= 0.0)) throw std::domain_error("PairMeasure: negative or NaN weight");
    }
    if (symmetric_) {
        for (std::size_t a = 0; a < m_; ++a)
            for (std::size_t b = a + 1; b < m_; ++b)
                if (w_[a * m_ + b] != w_[b * m_ + a])
                    throw std::invalid_argument("PairMeasure: symmetric flag set but weights asymmetric");
    }
}

PairMeasure PairMeasure::zero(std::size_t m, bool symmetric) {
    return PairMeasure(m, std::vector<double>(m * m, 0.0), symmetric);
}

double PairMeasure::total_mass() const { return kahan_sum(w_); }

std::vector<double> PairMeasure::second_marginal() const {
    std::vector<double> out(m_, 0.0);
    for (std::size_t a = 0; a < m_; ++a)
        for (std::size_t b = 0; b < m_; ++b) out[b] += w_[a * m_ + b];
    return out;
}

PairMeasure PairMeasure::scaled(double factor) const {
    std::vector<double> w(w_);
    for (double& x : w) x *= factor;
    return PairMeasure(m_, std::move(w), symmetric_);
}

ConnectivityKernel::ConnectivityKernel(std::size_t m, std::vector<double> entries)
    : m_(m), c_(std::move(entries)) {
    if (m_ == 0 || c_.size() != m_ * m_)
        throw std::invalid_argument("ConnectivityKernel: entries must have m*m values");
    for (double x : c_) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::domain_error("ConnectivityKernel: entries must be finite and >= 0");
    }
}

ConnectivityKernel ConnectivityKernel::constant(std::size_t m, double value) {
    return ConnectivityKernel(m, std::vector<double>(m * m, value));
}

bool ConnectivityKernel::is_symmetric() const {
    for (std::size_t a = 0; a < m_; ++a)
        for (std::size_t b = a + 1; b < m_; ++b)
            if (c_[a * m_ + b] != c_[b * m_ + a]) return false;
    return true;
}

TestFunction::TestFunction(std::size_t m, std::vector<double> values)
    : m_(m), g_(std::move(values)) {
    if (m_ == 0 || g_.size() != m_ * m_)
        throw std::invalid_argument("TestFunction: values must have m*m entries");
    for (double x : g_) {
        if (!std::isfinite(x)) throw std::domain_error("TestFunction: entries must be finite");
    }
}

TestFunction TestFunction::constant(std::size_t m, double value) {
    return TestFunction(m, std::vector<double>(m * m, value));
}

double relative_entropy(const std::vector<double>& mu, const std::vector<double>& nu) {
    if (mu.size() != nu.size())
        throw std::invalid_argument("relative_entropy: index sets differ");
    std::vector<double> terms;
    terms.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        double m = mu[i], n = nu[i];
        if (!(m >= 0.0) || !(n >= 0.0))
            throw std::domain_error("relative_entropy: negative entry");
        if (m == 0.0) continue;  // 0 log(0/q) = 0
        if (n == 0.0) return kInf;
        terms.push_back(m * std::log(m / n));
    }
    return kahan_sum(terms);
}

PairMeasure kernel_product(const ConnectivityKernel& kernel, const ProbabilityMeasure& rho) {
    if (kernel.size() != rho.size())
        throw std::invalid_argument("kernel_product: alphabet size mismatch");
    std::size_t m = kernel.size();
    std::vector<double> w(m * m);
    // Fill the upper triangle and mirror so a symmetric kernel yields a
    // bitwise-symmetric product (rounding is order-dependent otherwise).
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            w[a * m + b] = kernel(a, b) * rho(a) * rho(b);
            w[b * m + a] = kernel.is_symmetric() ? w[a * m + b]
                                                 : kernel(b, a) * rho(b) * rho(a);
        }
    }
    return PairMeasure(m, std::move(w), kernel.is_symmetric());
}

double kullback_action(const PairMeasure& pi, const ProbabilityMeasure& rho,
                       const ConnectivityKernel& kernel) {
    if (pi.size() != rho.size() || kernel.size() != rho.size())
        throw std::invalid_argument("kullback_action: alphabet size mismatch");
    PairMeasure ref = kernel_product(kernel, rho);
    double h = relative_entropy(pi.weights(), ref.weights());
    if (std::isinf(h)) return kInf;
    return h + ref.total_mass() - pi.total_mass();
}

double spectral_potential(const TestFunction& g, const ProbabilityMeasure& omega,
                          const ConnectivityKernel& kernel) {
    if (g.size() != omega.size() || kernel.size() != omega.size())
        throw std::invalid_argument("spectral_potential: alphabet size mismatch");
    std::size_t m = omega.size();
    std::vector<double> terms;
    terms.reserve(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            double coef = kernel(a, b) * omega(a) * omega(b);
            if (coef == 0.0) continue;
            double e = std::exp(g(a, b));
            if (std::isinf(e))
                throw std::overflow_error("spectral_potential: exp(g) overflow");
            terms.push_back(-(1.0 - e) * coef);
        }
    }
    std::vector<double> v(terms.begin(), terms.end());
    double s = 0.0, comp = 0.0;
    for (double x : v) {
        double y = x - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

VariationalGap kullback_variational_gap(const PairMeasure& pi, const ProbabilityMeasure& omega,
                                        const ConnectivityKernel& kernel) {
    if (pi.size() != omega.size() || kernel.size() != omega.size())
        throw std::invalid_argument("kullback_variational_gap: alphabet size mismatch");
    std::size_t m = omega.size();
    PairMeasure ref = kernel_product(kernel, omega);
    std::vector<double> gstar(m * m, kLogFloor);
    for (std::size_t i = 0; i < m * m; ++i) {
        double p = pi.weights()[i], r = ref.weights()[i];
        if (p > 0.0) {
            if (r == 0.0) return {kInf, std::nullopt};  // absolute-continuity failure
            gstar[i] = std::log(p / r);
        }
    }
    // Value via the algebraic identity; equals <g*,pi> - rho(g*,omega) up to
    // the exp(kLogFloor) underflow, which is below double resolution.
    double value = relative_entropy(pi.weights(), ref.weights()) + ref.total_mass() - pi.total_mass();
    return {value, TestFunction(m, std::move(gstar))};
}

double pairing(const TestFunction& g, const PairMeasure& pi) {
    if (g.size() != pi.size()) throw std::invalid_argument("pairing: alphabet size mismatch");
    double s = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < g.values().size(); ++i) {
        double x = g.values()[i] * pi.weights()[i];
        double y = x - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("total_variation: support size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace mrn
