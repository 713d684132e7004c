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

#include "mrn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mrn/rng.hpp"

namespace mrn {

namespace {

double kahan_mean(const std::vector<double>& v) {
    double s = 0.0, comp = 0.0;
    for (double x : v) {
        double y = x - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s / static_cast<double>(v.size());
}

McEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
    McEstimate est;
    est.replicas = values.size();
    est.seed = seed;
    est.mean = kahan_mean(values);
    double ss = 0.0, comp = 0.0;
    for (double x : values) {
        double d = (x - est.mean) * (x - est.mean);
        double y = d - comp;
        double t = ss + y;
        comp = (t - ss) - y;
        ss = t;
    }
    if (values.size() > 1)
        est.se = std::sqrt(ss / (static_cast<double>(values.size()) *
                                 static_cast<double>(values.size() - 1)));
    est.hits = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [](double x) { return x != 0.0; }));
    return est;
}

void parallel_chunks(std::size_t total, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (workers <= 1 || total < 2) {
        fn(0, total);
        return;
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(total));
    std::vector<std::thread> pool;
    std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(fn, lo, hi);
    }
    for (auto& t : pool) t.join();
}

TypedGraph sample_replica(const ModelSpec& spec, std::uint64_t seed, std::uint64_t replica) {
    SeededRng rng(seed, replica);
    auto types = sample_types(spec, rng);
    return sample_graph(spec, types, rng);
}

}  // namespace

const char* observable_name(Observable kind) {
    switch (kind) {
        case Observable::TypeMeasure: return "type-measure";
        case Observable::CooperativeMeasure: return "cooperative-measure";
        case Observable::Degree: return "degree";
        case Observable::Neighbourhood: return "neighbourhood";
        case Observable::IsolatedFraction: return "isolated-fraction";
    }
    return "unknown";
}

ObservableKey observe(const TypedGraph& graph, Observable kind) {
    switch (kind) {
        case Observable::TypeMeasure:
            return type_counts(graph);
        case Observable::CooperativeMeasure:
            return cooperative_counts(graph);
        case Observable::Degree:
            return degree_counts(graph);
        case Observable::Neighbourhood: {
            auto nc = neighbourhood_counts(graph, static_cast<int>(graph.n));
            ObservableKey key;
            for (const auto& [tk, count] : nc.counts) {
                key.push_back(tk.first);
                for (int l : tk.second) key.push_back(l);
                key.push_back(count);
            }
            return key;
        }
        case Observable::IsolatedFraction: {
            auto hist = degree_counts(graph);
            return {hist.empty() ? 0 : hist[0]};
        }
    }
    throw std::logic_error("observe: unknown observable kind");
}

EnsembleDistribution enumerate_ensemble(const ModelSpec& spec, Observable kind) {
    const std::size_t n = spec.n();
    const std::size_t m = spec.num_types();
    const std::size_t pair_count = n * (n - 1) / 2;
    double budget = std::pow(static_cast<double>(m), static_cast<double>(n)) *
                    std::pow(2.0, static_cast<double>(pair_count));
    if (budget > 1e7) {
        std::ostringstream msg;
        msg << "enumerate_ensemble: configuration budget " << budget
            << " exceeds the 1e7 limit (m^n * 2^(n(n-1)/2) with m=" << m << ", n=" << n << ")";
        throw std::runtime_error(msg.str());
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(pair_count);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    EnsembleDistribution dist;
    dist.kind = kind;
    TypedGraph graph;
    graph.n = n;
    graph.num_types = m;
    graph.symmetric = spec.symmetric();
    graph.types.assign(n, 0);
    const std::uint64_t edge_masks = std::uint64_t{1} << pair_count;

    while (true) {
        double type_prob = 1.0;
        for (std::uint32_t t : graph.types) type_prob *= spec.eta()(t);
        if (type_prob > 0.0) {
            std::vector<double> p(pair_count);
            for (std::size_t k = 0; k < pair_count; ++k)
                p[k] = edge_probability(spec, graph.types[pairs[k].first],
                                        graph.types[pairs[k].second]);
            for (std::uint64_t mask = 0; mask < edge_masks; ++mask) {
                graph.edges.clear();
                double prob = type_prob;
                for (std::size_t k = 0; k < pair_count; ++k) {
                    if (mask & (std::uint64_t{1} << k)) {
                        prob *= p[k];
                        graph.edges.push_back(pairs[k]);
                    } else {
                        prob *= 1.0 - p[k];
                    }
                }
                if (prob > 0.0) dist.prob[observe(graph, kind)] += prob;
            }
        }
        // odometer over type assignments
        std::size_t i = 0;
        while (i < n && graph.types[i] == m - 1) graph.types[i++] = 0;
        if (i == n) break;
        ++graph.types[i];
    }
    return dist;
}

double distribution_tv(const EnsembleDistribution& p, const EnsembleDistribution& q) {
    double s = 0.0;
    auto it = p.prob.begin();
    auto jt = q.prob.begin();
    while (it != p.prob.end() || jt != q.prob.end()) {
        if (jt == q.prob.end() || (it != p.prob.end() && it->first < jt->first)) {
            s += it->second;
            ++it;
        } else if (it == p.prob.end() || jt->first < it->first) {
            s += jt->second;
            ++jt;
        } else {
            s += std::abs(it->second - jt->second);
            ++it;
            ++jt;
        }
    }
    return 0.5 * s;
}

EnsembleDistribution mc_law(const ModelSpec& spec, Observable kind, std::size_t replicas,
                            std::uint64_t seed, unsigned workers) {
    if (replicas < 1) throw std::invalid_argument("mc_law: replicas must be >= 1");
    unsigned used = std::max<unsigned>(1, std::min<unsigned>(workers, static_cast<unsigned>(replicas)));
    std::size_t chunk = (replicas + used - 1) / used;
    std::vector<std::map<ObservableKey, std::int64_t>> locals((replicas + chunk - 1) / chunk);
    parallel_chunks(replicas, used, [&](std::size_t lo, std::size_t hi) {
        auto& local = locals[lo / chunk];
        for (std::size_t r = lo; r < hi; ++r)
            ++local[observe(sample_replica(spec, seed, r), kind)];
    });
    EnsembleDistribution dist;
    dist.kind = kind;
    std::map<ObservableKey, std::int64_t> counts;
    for (const auto& local : locals)
        for (const auto& [key, c] : local) counts[key] += c;
    for (const auto& [key, c] : counts)
        dist.prob[key] = static_cast<double>(c) / static_cast<double>(replicas);
    return dist;
}

McEstimate mc_scalar(const ModelSpec& spec, const std::function<double(const TypedGraph&)>& fn,
                     std::size_t replicas, std::uint64_t seed, unsigned workers) {
    if (replicas < 1) throw std::invalid_argument("mc_scalar: replicas must be >= 1");
    std::vector<double> values(replicas);
    parallel_chunks(replicas, workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r)
            values[r] = fn(sample_replica(spec, seed, r));
    });
    return summarize(values, seed);
}

McEstimate rare_event_tilted(const ModelSpec& spec,
                             const std::function<bool(const TypedGraph&)>& event,
                             const TestFunction& g, std::size_t replicas, std::uint64_t seed,
                             unsigned workers) {
    if (replicas < 1) throw std::invalid_argument("rare_event_tilted: replicas must be >= 1");
    std::vector<double> values(replicas);
    parallel_chunks(replicas, workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            SeededRng rng(seed, r);
            auto types = sample_types(spec, rng);
            auto graph = sample_tilted_graph(spec, types, g, rng);
            values[r] = event(graph) ? std::exp(log_rn_derivative(spec, graph, g)) : 0.0;
        }
    });
    return summarize(values, seed);
}

std::vector<SlopeRow> ldp_slope_scan(const ModelSpec& spec, const std::vector<std::size_t>& n_grid,
                                     const std::function<bool(const TypedGraph&)>& event,
                                     const TestFunction& g, std::size_t replicas,
                                     std::uint64_t seed, unsigned workers) {
    std::vector<SlopeRow> rows;
    rows.reserve(n_grid.size());
    for (std::size_t n : n_grid) {
        auto est = rare_event_tilted(spec.with_n(n), event, g, replicas, seed, workers);
        SlopeRow row;
        row.n = n;
        row.p_hat = est.mean;
        row.se = est.se;
        row.slope = est.mean > 0.0 ? -std::log(est.mean) / static_cast<double>(n) : kInf;
        row.usable = est.hits > 0 && est.se <= 0.3 * est.mean;
        rows.push_back(row);
    }
    return rows;
}

double asymptotic_rn_check(const ModelSpec& spec, const TestFunction& g, std::size_t replicas,
                           std::uint64_t seed) {
    if (!spec.symmetric())
        throw std::invalid_argument("asymptotic_rn_check: symmetric models only");
    const std::size_t m = spec.num_types();
    const double n = static_cast<double>(spec.n());
    // Limit intensity of the non-edge product: h(a,b) = (e^g - 1) c(a,b).
    std::vector<double> h(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            h[a * m + b] = std::expm1(g(a, b)) * spec.kernel()(a, b);

    double max_dev = 0.0;
    for (std::size_t r = 0; r < replicas; ++r) {
        SeededRng rng(seed, r);
        auto types = sample_types(spec, rng);
        auto graph = sample_tilted_graph(spec, types, g, rng);
        double exact = log_rn_derivative(spec, graph, g);

        auto l1 = type_counts(graph);
        auto l2 = cooperative_counts(graph);
        double term_g = 0.0, term_h = 0.0, term_diag = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                double l2ab = static_cast<double>(l2[a * m + b]) / n;
                double l1a = static_cast<double>(l1[a]) / n;
                double l1b = static_cast<double>(l1[b]) / n;
                term_g += l2ab * g(a, b);
                term_h += l1a * l1b * h[a * m + b];
            }
            term_diag += (static_cast<double>(l1[a]) / n) * h[a * m + a];
        }
        double asym = -0.5 * n * term_g + 0.5 * n * term_h - 0.5 * term_diag;
        max_dev = std::max(max_dev, std::abs(exact - asym));
    }
    return max_dev;
}

}  // namespace mrn
