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

#include "mrn/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mrn {

namespace {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Bernoulli trials over `total` slots with success probability p, emitting
/// the indices of successes via geometric skip lengths. One uniform draw per
/// emitted index plus one terminal draw.
template <typename Emit>
void skip_sample(std::int64_t total, double p, SeededRng& rng, Emit emit) {
    if (total <= 0 || p <= 0.0) return;
    const double logq = std::log1p(-p);  // < 0 for p in (0,1)
    std::int64_t pos = -1;
    while (true) {
        double u = rng.uniform01();
        double ratio = std::log1p(-u) / logq;  // >= 0
        if (ratio >= static_cast<double>(total - pos)) break;
        pos += static_cast<std::int64_t>(ratio) + 1;
        if (pos >= total) break;
        emit(pos);
    }
}

/// Pairs (S[r], S[r']) with r < r' inside one type group, lexicographic order.
void sample_same_type_block(const std::vector<std::uint32_t>& sites, double p, SeededRng& rng,
                            std::vector<Edge>& out) {
    const std::int64_t s = static_cast<std::int64_t>(sites.size());
    if (s < 2) return;
    const std::int64_t total = s * (s - 1) / 2;
    auto cum = [s](std::int64_t r) { return r * (s - 1) - r * (r - 1) / 2; };
    skip_sample(total, p, rng, [&](std::int64_t t) {
        std::int64_t lo = 0, hi = s - 1;  // largest r with cum(r) <= t
        while (lo < hi) {
            std::int64_t mid = (lo + hi + 1) / 2;
            if (cum(mid) <= t) lo = mid; else hi = mid - 1;
        }
        std::int64_t off = t - cum(lo);
        out.emplace_back(sites[lo], sites[lo + 1 + off]);
    });
}

/// Pairs (i, j) with i in A, j in B and i < j (both lists ascending).
/// These pairs carry the ordered class (type(A), type(B)).
void sample_cross_block(const std::vector<std::uint32_t>& A, const std::vector<std::uint32_t>& B,
                        double p, SeededRng& rng, std::vector<Edge>& out) {
    if (A.empty() || B.empty()) return;
    const std::size_t na = A.size(), nb = B.size();
    std::vector<std::size_t> ub(na);      // first index of B with B[idx] > A[r]
    std::vector<std::int64_t> prefix(na + 1, 0);
    std::size_t k = 0;
    for (std::size_t r = 0; r < na; ++r) {
        while (k < nb && B[k] < A[r]) ++k;
        ub[r] = k;
        prefix[r + 1] = prefix[r] + static_cast<std::int64_t>(nb - k);
    }
    skip_sample(prefix[na], p, rng, [&](std::int64_t t) {
        std::size_t lo = 0, hi = na - 1;  // largest r with prefix[r] <= t
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (prefix[mid] <= t) lo = mid; else hi = mid - 1;
        }
        std::int64_t off = t - prefix[lo];
        out.emplace_back(A[lo], B[ub[lo] + off]);
    });
}

std::vector<std::vector<std::uint32_t>> sites_by_type(std::size_t m,
                                                      const std::vector<std::uint32_t>& types) {
    std::vector<std::vector<std::uint32_t>> groups(m);
    for (std::uint32_t i = 0; i < types.size(); ++i) groups[types[i]].push_back(i);
    return groups;
}

/// Shared edge sampler; class_prob(a,b) is the per-pair link probability for
/// pairs i < j with (Z(i),Z(j)) = (a,b). Block order is fixed so that two
/// samplers with identical probabilities consume identical draws.
template <typename ClassProb>
TypedGraph sample_edges(const ModelSpec& spec, const std::vector<std::uint32_t>& types,
                        ClassProb class_prob, SeededRng& rng) {
    if (types.size() != spec.n())
        throw std::invalid_argument("sample_graph: types length must equal n");
    const std::size_t m = spec.num_types();
    auto groups = sites_by_type(m, types);
    TypedGraph graph;
    graph.n = spec.n();
    graph.num_types = m;
    graph.types = types;
    graph.symmetric = spec.symmetric();
    for (std::size_t a = 0; a < m; ++a)
        sample_same_type_block(groups[a], class_prob(a, a), rng, graph.edges);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            sample_cross_block(groups[a], groups[b], class_prob(a, b), rng, graph.edges);
            sample_cross_block(groups[b], groups[a], class_prob(b, a), rng, graph.edges);
        }
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    return graph;
}

}  // namespace

ModelSpec::ModelSpec(TypeAlphabet alphabet, ProbabilityMeasure eta, ConnectivityKernel kernel,
                     std::size_t n, bool symmetric)
    : alphabet_(std::move(alphabet)), eta_(std::move(eta)), kernel_(std::move(kernel)),
      n_(n), symmetric_(symmetric) {
    if (n_ < 1) throw std::invalid_argument("ModelSpec: n must be >= 1");
    if (eta_.size() != alphabet_.size() || kernel_.size() != alphabet_.size())
        throw std::invalid_argument("ModelSpec: eta/kernel size must match alphabet");
    if (symmetric_ && !kernel_.is_symmetric())
        throw std::invalid_argument("ModelSpec: symmetric model requires symmetric kernel");
}

double edge_probability(const ModelSpec& spec, std::size_t a, std::size_t b) {
    double c = spec.kernel()(a, b);
    return c / (static_cast<double>(spec.n()) + c);
}

double tilted_edge_probability(double p, double g) {
    if (p <= 0.0) return 0.0;
    if (g >= 0.0) return p / (p + (1.0 - p) * std::exp(-g));
    double e = std::exp(g);
    return e * p / (e * p + 1.0 - p);
}

std::vector<std::uint32_t> sample_types(const ModelSpec& spec, SeededRng& rng) {
    std::vector<std::uint32_t> types(spec.n());
    for (auto& t : types)
        t = static_cast<std::uint32_t>(rng.draw_index(spec.eta().weights()));
    return types;
}

TypedGraph sample_graph(const ModelSpec& spec, const std::vector<std::uint32_t>& types,
                        SeededRng& rng) {
    return sample_edges(spec, types,
                        [&](std::size_t a, std::size_t b) { return edge_probability(spec, a, b); },
                        rng);
}

TypedGraph sample_tilted_graph(const ModelSpec& spec, const std::vector<std::uint32_t>& types,
                               const TestFunction& g, SeededRng& rng) {
    if (g.size() != spec.num_types())
        throw std::invalid_argument("sample_tilted_graph: test function size mismatch");
    return sample_edges(spec, types,
                        [&](std::size_t a, std::size_t b) {
                            return tilted_edge_probability(edge_probability(spec, a, b), g(a, b));
                        },
                        rng);
}

std::vector<std::int64_t> ordered_pair_counts(std::size_t m,
                                              const std::vector<std::uint32_t>& types) {
    std::vector<std::int64_t> counts(m * m, 0);
    std::vector<std::int64_t> seen(m, 0);
    for (std::uint32_t t : types) {
        for (std::size_t a = 0; a < m; ++a) counts[a * m + t] += seen[a];
        ++seen[t];
    }
    return counts;
}

std::vector<std::int64_t> ordered_edge_counts(std::size_t m, const TypedGraph& graph) {
    std::vector<std::int64_t> counts(m * m, 0);
    for (const auto& [i, j] : graph.edges)
        ++counts[graph.types[i] * m + graph.types[j]];
    return counts;
}

double log_rn_derivative(const ModelSpec& spec, const TypedGraph& graph, const TestFunction& g) {
    if (graph.types.size() != spec.n())
        throw std::invalid_argument("log_rn_derivative: graph size mismatch");
    const std::size_t m = spec.num_types();
    auto pairs = ordered_pair_counts(m, graph.types);
    auto edges = ordered_edge_counts(m, graph);
    // Per class: E*log(p/p~) + (N-E)*log((1-p)/(1-p~))
    //          = -E*g + N*log(1 + (e^g - 1)*p).
    double total = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            std::int64_t N = pairs[a * m + b];
            if (N == 0) continue;
            std::int64_t E = edges[a * m + b];
            double p = edge_probability(spec, a, b);
            double gv = g(a, b);
            total += -static_cast<double>(E) * gv
                     + static_cast<double>(N) * std::log1p(std::expm1(gv) * p);
        }
    }
    return total;
}

void write_graph(std::ostream& out, const TypedGraph& graph, const TypeAlphabet& alphabet) {
    out << graph.n << ' ' << graph.edges.size() << ' ' << (graph.symmetric ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < graph.n; ++i)
        out << i << ' ' << alphabet.label(graph.types[i]) << '\n';
    for (const auto& [i, j] : graph.edges) out << i << ' ' << j << '\n';
}

TypedGraph read_graph(std::istream& in, const TypeAlphabet& alphabet) {
    TypedGraph graph;
    std::size_t n = 0, num_edges = 0;
    int symmetric = 0;
    if (!(in >> n >> num_edges >> symmetric))
        throw std::runtime_error("read_graph: malformed header");
    graph.n = n;
    graph.num_types = alphabet.size();
    graph.symmetric = symmetric != 0;
    graph.types.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i;
        std::string label;
        if (!(in >> i >> label) || i >= n)
            throw std::runtime_error("read_graph: malformed site line");
        auto idx = alphabet.index_of(label);
        if (!idx) throw std::runtime_error("read_graph: unknown label '" + label + "'");
        graph.types[i] = static_cast<std::uint32_t>(*idx);
    }
    graph.edges.reserve(num_edges);
    for (std::size_t k = 0; k < num_edges; ++k) {
        std::uint32_t i, j;
        if (!(in >> i >> j) || i >= j || j >= n)
            throw std::runtime_error("read_graph: malformed edge line");
        graph.edges.emplace_back(i, j);
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    return graph;
}

}  // namespace mrn
