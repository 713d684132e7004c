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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mrn/empirical.hpp"
#include "mrn/measure.hpp"
#include "mrn/model.hpp"

namespace mrn {

enum class Observable {
    TypeMeasure,        // L1 as per-type counts
    CooperativeMeasure, // L2 as pair counts
    Degree,             // degree histogram
    Neighbourhood,      // M1 as (type, profile, count) entries
    IsolatedFraction,   // number of isolated sites
};

const char* observable_name(Observable kind);

/// Integer encoding of an observable value; empirical measures from a graph
/// on n sites are integer counts over denominator n, so keys are exact.
using ObservableKey = std::vector<std::int64_t>;

ObservableKey observe(const TypedGraph& graph, Observable kind);

/// Exact or empirical law of an observable over the graph ensemble.
struct EnsembleDistribution {
    Observable kind;
    std::map<ObservableKey, double> prob;
};

/// Exact pushforward law by brute force over all m^n * 2^(C(n,2))
/// configurations. Throws with the required budget when it exceeds 1e7.
EnsembleDistribution enumerate_ensemble(const ModelSpec& spec, Observable kind);

/// Total variation distance over the union of supports.
double distribution_tv(const EnsembleDistribution& p, const EnsembleDistribution& q);

struct McEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::size_t replicas = 0;
    std::uint64_t seed = 0;
    std::size_t hits = 0;  // replicas with nonzero contribution; 0 flags zero ESS
};

/// Empirical law over i.i.d. replicas, one rng stream per replica.
EnsembleDistribution mc_law(const ModelSpec& spec, Observable kind, std::size_t replicas,
                            std::uint64_t seed, unsigned workers = 1);

/// Monte Carlo mean/SE of a scalar graph functional.
McEstimate mc_scalar(const ModelSpec& spec, const std::function<double(const TypedGraph&)>& fn,
                     std::size_t replicas, std::uint64_t seed, unsigned workers = 1);

/// Importance-sampling estimate of P(event): sample under the tilted law,
/// weight event hits by exp(log_rn_derivative). Unbiased for any finite g;
/// hits == 0 flags zero effective sample size.
McEstimate rare_event_tilted(const ModelSpec& spec,
                             const std::function<bool(const TypedGraph&)>& event,
                             const TestFunction& g, std::size_t replicas, std::uint64_t seed,
                             unsigned workers = 1);

struct SlopeRow {
    std::size_t n = 0;
    double p_hat = 0.0;
    double se = 0.0;
    double slope = 0.0;  // -(1/n) log p_hat
    bool usable = false; // se <= 30% of p_hat
};

/// Slope sequence -(1/n) log P(event_n) across an n-grid, estimated by
/// tilted MC, against a reference rate value.
std::vector<SlopeRow> ldp_slope_scan(const ModelSpec& spec, const std::vector<std::size_t>& n_grid,
                                     const std::function<bool(const TypedGraph&)>& event,
                                     const TestFunction& g, std::size_t replicas,
                                     std::uint64_t seed, unsigned workers = 1);

/// Max absolute deviation over replicas between the exact pairwise log-RN
/// derivative and its asymptotic decomposition through (L1, L2) with the
/// limit intensity h(a,b) = (e^{g(a,b)} - 1) c(a,b). Symmetric models only.
double asymptotic_rn_check(const ModelSpec& spec, const TestFunction& g, std::size_t replicas,
                           std::uint64_t seed);

}  // namespace mrn
