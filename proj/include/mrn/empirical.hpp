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
#include <map>
#include <utility>
#include <vector>

#include "mrn/measure.hpp"
#include "mrn/model.hpp"

namespace mrn {

/// Number of neighbours of each type seen from one site.
using CountProfile = std::vector<int>;

/// Pmf over (type, neighbour-count profile) pairs, profiles truncated at a
/// declared cap per coordinate. Mass of profiles exceeding the cap is pooled
/// into a per-type overflow bucket.
struct NeighbourhoodMeasure {
    std::size_t num_labels = 0;
    int cap = 0;
    std::map<std::pair<std::uint32_t, CountProfile>, double> mass;
    std::vector<double> overflow;  // per type

    /// Marginal over profiles, including overflow mass.
    std::vector<double> type_marginal() const;
    double total_overflow() const;
};

/// Pmf over degrees 0..k_max with explicit overflow mass.
struct DegreeDistribution {
    std::vector<double> pmf;  // index k = 0..k_max
    double overflow = 0.0;

    /// <d> = sum k d(k) over the truncated part.
    double mean() const;
};

/// Integer-count forms. The per-site masses all share denominator n, so
/// identities between empirical measures hold exactly on the counts; the
/// measure-valued wrappers below divide through by n.
std::vector<std::int64_t> type_counts(const TypedGraph& graph);

/// Cooperative counts: symmetric branch adds one per orientation per edge,
/// asymmetric branch adds two at the index orientation (i < j). Total is
/// 2|E| in both branches.
std::vector<std::int64_t> cooperative_counts(const TypedGraph& graph);

std::vector<std::int64_t> degree_counts(const TypedGraph& graph);  // histogram, k = 0..n-1

struct NeighbourhoodCounts {
    std::size_t num_labels = 0;
    int cap = 0;
    std::map<std::pair<std::uint32_t, CountProfile>, std::int64_t> counts;
    std::vector<std::int64_t> overflow;  // per type
};
NeighbourhoodCounts neighbourhood_counts(const TypedGraph& graph, int cap);

/// L1(a) = (# sites of type a)/n.
ProbabilityMeasure type_measure(const TypedGraph& graph);

/// L2: symmetric case (1/n) sum_E [delta_(Z(i),Z(j)) + delta_(Z(j),Z(i))],
/// asymmetric case (2/n) sum_E delta_(Z(i),Z(j)); ||L2|| = 2|E|/n in both.
PairMeasure cooperative_measure(const TypedGraph& graph);

/// M1(a,l) = (1/n) sum_j delta_(Z(j),L(j)), profiles capped coordinatewise.
NeighbourhoodMeasure neighbourhood_measure(const TypedGraph& graph, int cap);

/// Degree pmf with overflow beyond k_max; <deg> = 2|E|/n when no overflow.
DegreeDistribution degree_measure(const TypedGraph& graph, int k_max);

struct ConsistencyResult {
    bool ok = false;
    double residual = 0.0;
};

/// True iff the pair mass seen from the neighbourhood profiles reproduces
/// pi: sum_l l(b) omega(a,l) = pi(a,b) for all a,b within tol. This is the
/// unique identity holding exactly for measures extracted from any graph.
/// Overflow mass in omega counts toward the residual since its pair mass
/// is unobservable.
ConsistencyResult consistency_check(const PairMeasure& pi, const NeighbourhoodMeasure& omega,
                                    double tol = 1e-9);

}  // namespace mrn
