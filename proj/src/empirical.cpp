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

#include "mrn/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrn {

std::vector<double> NeighbourhoodMeasure::type_marginal() const {
    std::vector<double> out(num_labels, 0.0);
    for (const auto& [key, w] : mass) out[key.first] += w;
    for (std::size_t a = 0; a < num_labels; ++a) out[a] += overflow[a];
    return out;
}

double NeighbourhoodMeasure::total_overflow() const {
    double s = 0.0;
    for (double x : overflow) s += x;
    return s;
}

double DegreeDistribution::mean() const {
    double s = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) s += static_cast<double>(k) * pmf[k];
    return s;
}

std::vector<std::int64_t> type_counts(const TypedGraph& graph) {
    std::vector<std::int64_t> counts(graph.num_types, 0);
    for (std::uint32_t t : graph.types) ++counts.at(t);
    return counts;
}

std::vector<std::int64_t> cooperative_counts(const TypedGraph& graph) {
    const std::size_t m = graph.num_types;
    std::vector<std::int64_t> counts(m * m, 0);
    for (const auto& [i, j] : graph.edges) {
        std::uint32_t a = graph.types[i], b = graph.types[j];
        if (graph.symmetric) {
            ++counts[a * m + b];
            ++counts[b * m + a];
        } else {
            counts[a * m + b] += 2;
        }
    }
    return counts;
}

std::vector<std::int64_t> degree_counts(const TypedGraph& graph) {
    std::vector<std::int64_t> degree(graph.n, 0);
    for (const auto& [i, j] : graph.edges) {
        ++degree[i];
        ++degree[j];
    }
    std::vector<std::int64_t> hist(graph.n, 0);
    for (std::int64_t d : degree) ++hist[d];
    return hist;
}

NeighbourhoodCounts neighbourhood_counts(const TypedGraph& graph, int cap) {
    if (cap < 1) throw std::invalid_argument("neighbourhood_counts: cap must be >= 1");
    const std::size_t m = graph.num_types;
    std::vector<CountProfile> profiles(graph.n, CountProfile(m, 0));
    for (const auto& [i, j] : graph.edges) {
        ++profiles[i][graph.types[j]];
        ++profiles[j][graph.types[i]];
    }
    NeighbourhoodCounts out;
    out.num_labels = m;
    out.cap = cap;
    out.overflow.assign(m, 0);
    for (std::size_t i = 0; i < graph.n; ++i) {
        bool over = std::any_of(profiles[i].begin(), profiles[i].end(),
                                [cap](int c) { return c > cap; });
        if (over)
            ++out.overflow[graph.types[i]];
        else
            ++out.counts[{graph.types[i], profiles[i]}];
    }
    return out;
}

ProbabilityMeasure type_measure(const TypedGraph& graph) {
    if (graph.n == 0) throw std::invalid_argument("type_measure: empty graph");
    auto counts = type_counts(graph);
    std::vector<double> w(counts.size());
    for (std::size_t a = 0; a < counts.size(); ++a)
        w[a] = static_cast<double>(counts[a]) / static_cast<double>(graph.n);
    return ProbabilityMeasure(std::move(w));
}

PairMeasure cooperative_measure(const TypedGraph& graph) {
    auto counts = cooperative_counts(graph);
    std::vector<double> w(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        w[i] = static_cast<double>(counts[i]) / static_cast<double>(graph.n);
    return PairMeasure(graph.num_types, std::move(w), graph.symmetric);
}

NeighbourhoodMeasure neighbourhood_measure(const TypedGraph& graph, int cap) {
    auto counts = neighbourhood_counts(graph, cap);
    NeighbourhoodMeasure out;
    out.num_labels = counts.num_labels;
    out.cap = cap;
    out.overflow.resize(counts.overflow.size());
    const double n = static_cast<double>(graph.n);
    for (std::size_t a = 0; a < counts.overflow.size(); ++a)
        out.overflow[a] = static_cast<double>(counts.overflow[a]) / n;
    for (const auto& [key, c] : counts.counts)
        out.mass[key] = static_cast<double>(c) / n;
    return out;
}

DegreeDistribution degree_measure(const TypedGraph& graph, int k_max) {
    if (k_max < 0) throw std::invalid_argument("degree_measure: k_max must be >= 0");
    auto hist = degree_counts(graph);
    DegreeDistribution out;
    out.pmf.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    const double n = static_cast<double>(graph.n);
    for (std::size_t k = 0; k < hist.size(); ++k) {
        if (hist[k] == 0) continue;
        double w = static_cast<double>(hist[k]) / n;
        if (k <= static_cast<std::size_t>(k_max))
            out.pmf[k] = w;
        else
            out.overflow += w;
    }
    return out;
}

ConsistencyResult consistency_check(const PairMeasure& pi, const NeighbourhoodMeasure& omega,
                                    double tol) {
    if (pi.size() != omega.num_labels)
        throw std::invalid_argument("consistency_check: alphabet size mismatch");
    const std::size_t m = pi.size();
    double residual = omega.total_overflow();

    // Pair mass seen from the profiles: sum_l l(b) omega(a,l) = pi(a,b).
    std::vector<double> seen(m * m, 0.0);
    for (const auto& [key, w] : omega.mass) {
        const auto& [a, profile] = key;
        for (std::size_t b = 0; b < m; ++b)
            seen[a * m + b] += static_cast<double>(profile[b]) * w;
    }
    for (std::size_t i = 0; i < m * m; ++i)
        residual = std::max(residual, std::abs(seen[i] - pi.weights()[i]));

    return {residual <= tol, residual};
}

}  // namespace mrn
