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
#include <iosfwd>
#include <utility>
#include <vector>

#include "mrn/measure.hpp"
#include "mrn/rng.hpp"

namespace mrn {

/// A multitype random network: n sites typed i.i.d. from eta, each unordered
/// pair (i,j) linked independently with probability p_n(Z(i),Z(j)).
class ModelSpec {
public:
    ModelSpec(TypeAlphabet alphabet, ProbabilityMeasure eta, ConnectivityKernel kernel,
              std::size_t n, bool symmetric);

    const TypeAlphabet& alphabet() const { return alphabet_; }
    const ProbabilityMeasure& eta() const { return eta_; }
    const ConnectivityKernel& kernel() const { return kernel_; }
    std::size_t n() const { return n_; }
    bool symmetric() const { return symmetric_; }
    std::size_t num_types() const { return alphabet_.size(); }

    ModelSpec with_n(std::size_t n) const { return {alphabet_, eta_, kernel_, n, symmetric_}; }

private:
    TypeAlphabet alphabet_;
    ProbabilityMeasure eta_;
    ConnectivityKernel kernel_;
    std::size_t n_;
    bool symmetric_;
};

/// Typed graph: per-site labels plus unordered edges (i < j), no self-loops,
/// no duplicates. Edges are kept sorted lexicographically.
struct TypedGraph {
    std::size_t n = 0;
    std::size_t num_types = 0;
    std::vector<std::uint32_t> types;                          // label index per site
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, sorted
    bool symmetric = true;

    std::size_t edge_count() const { return edges.size(); }
};

/// p_n(a,b) = c(a,b)/(n + c(a,b)); the canonical finite-n scaling with
/// kappa_n/ell_n = c/n exactly, so n p_n -> c(a,b).
double edge_probability(const ModelSpec& spec, std::size_t a, std::size_t b);

/// Tilted per-pair probability p~ = e^g p / (e^g p + 1 - p).
double tilted_edge_probability(double p, double g);

/// n i.i.d. type draws from eta.
std::vector<std::uint32_t> sample_types(const ModelSpec& spec, SeededRng& rng);

/// Sample the edge set given types. Uses geometric skip-sampling over
/// homogeneous type-pair blocks, so the cost is O(n + |E| log n).
TypedGraph sample_graph(const ModelSpec& spec, const std::vector<std::uint32_t>& types,
                        SeededRng& rng);

/// Sample under the exponentially tilted law: pair (i,j) linked with
/// probability tilted_edge_probability(p_n(Z(i),Z(j)), g(Z(i),Z(j))).
/// For g == 0 this is bitwise identical to sample_graph on a shared stream.
TypedGraph sample_tilted_graph(const ModelSpec& spec, const std::vector<std::uint32_t>& types,
                               const TestFunction& g, SeededRng& rng);

/// Exact log dP/dP~ of a sampled graph: the likelihood ratio accumulated
/// over all C(n,2) pairs (edges and non-edges), grouped by type-pair class.
double log_rn_derivative(const ModelSpec& spec, const TypedGraph& graph, const TestFunction& g);

/// Total pair count per ordered type class: entry (a,b) counts pairs i < j
/// with (Z(i),Z(j)) = (a,b). Same orientation convention as the samplers.
std::vector<std::int64_t> ordered_pair_counts(std::size_t m, const std::vector<std::uint32_t>& types);

/// Edge count per ordered type class (orientation by site index, i < j).
std::vector<std::int64_t> ordered_edge_counts(std::size_t m, const TypedGraph& graph);

/// Edge-list text format: header "n m symmetric", one "i label" line per
/// site, one "i j" line per edge. Round-trips bit-exactly.
void write_graph(std::ostream& out, const TypedGraph& graph, const TypeAlphabet& alphabet);
TypedGraph read_graph(std::istream& in, const TypeAlphabet& alphabet);

}  // namespace mrn
