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

#include <cmath>
#include <stdexcept>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mrn/model.hpp"
#include "test_helpers.hpp"

using namespace mrn;
using namespace mrn::testing;

namespace {

ModelSpec single_type(double c, std::size_t n) {
    return ModelSpec(TypeAlphabet({"a"}), ProbabilityMeasure({1.0}),
                     ConnectivityKernel::constant(1, c), n, true);
}

ModelSpec two_type(std::size_t n, bool symmetric = true) {
    std::vector<double> c = symmetric ? std::vector<double>{1.0, 2.0, 2.0, 4.0}
                                      : std::vector<double>{1.0, 2.0, 3.0, 4.0};
    return ModelSpec(TypeAlphabet({"a", "b"}), ProbabilityMeasure({0.5, 0.5}),
                     ConnectivityKernel(2, c), n, symmetric);
}

/// Reference per-pair sampler, O(n^2); the production sampler must match
/// its distribution (checked via edge-count statistics and enumeration).
double naive_log_rn(const ModelSpec& spec, const TypedGraph& graph, const TestFunction& g) {
    double total = 0.0;
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges(graph.edges.begin(), graph.edges.end());
    for (std::uint32_t i = 0; i < spec.n(); ++i) {
        for (std::uint32_t j = i + 1; j < spec.n(); ++j) {
            std::size_t a = graph.types[i], b = graph.types[j];
            double p = edge_probability(spec, a, b);
            double pt = tilted_edge_probability(p, g(a, b));
            if (edges.count({i, j}))
                total += std::log(p) - std::log(pt);
            else
                total += std::log(1.0 - p) - std::log(1.0 - pt);
        }
    }
    return total;
}

bool graph_well_formed(const TypedGraph& g) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& [i, j] : g.edges) {
        if (i >= j || j >= g.n) return false;
        if (!seen.insert({i, j}).second) return false;
    }
    return g.types.size() == g.n;
}

}  // namespace

TEST_CASE("edge probability canonical scaling") {
    CHECK(edge_probability(single_type(2.0, 2), 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(edge_probability(single_type(0.0, 5), 0, 0) == 0.0);
    auto big = single_type(2.0, 1000000);
    double p = edge_probability(big, 0, 0);
    CHECK(p == doctest::Approx(2e-6).epsilon(1e-5));
    CHECK(1e6 * p == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("sample_types: point mass, frequency, determinism") {
    auto point = ModelSpec(TypeAlphabet({"a", "b"}), ProbabilityMeasure({1.0, 0.0}),
                           ConnectivityKernel::constant(2, 1.0), 100, true);
    SeededRng rng(1);
    for (auto t : sample_types(point, rng)) CHECK(t == 0);

    auto spec = two_type(100000);
    SeededRng rng2(2);
    auto types = sample_types(spec, rng2);
    double freq = 0.0;
    for (auto t : types) freq += (t == 0) ? 1.0 : 0.0;
    freq /= static_cast<double>(types.size());
    CHECK(std::abs(freq - 0.5) <= 3.0 * std::sqrt(0.25 / 1e5));

    SeededRng r3(7, 3), r4(7, 3);
    CHECK(sample_types(spec, r3) == sample_types(spec, r4));
}

TEST_CASE("sample_graph: empty kernel, edge density, determinism") {
    auto empty = single_type(0.0, 100);
    SeededRng rng(3);
    auto types = sample_types(empty, rng);
    CHECK(sample_graph(empty, types, rng).edges.empty());

    auto spec = single_type(2.0, 10000);
    SeededRng rng2(4);
    auto t2 = sample_types(spec, rng2);
    auto g = sample_graph(spec, t2, rng2);
    CHECK(graph_well_formed(g));
    double n = 1e4;
    double p = edge_probability(spec, 0, 0);
    double mean = (n - 1.0) / 2.0 * p;               // E|E|/n
    double se = std::sqrt(n * (n - 1.0) / 2.0 * p) / n;
    CHECK(std::abs(static_cast<double>(g.edge_count()) / n - mean) <= 3.0 * se);

    SeededRng r5(9, 1), r6(9, 1);
    auto ta = sample_types(spec, r5);
    auto tb = sample_types(spec, r6);
    CHECK(sample_graph(spec, ta, r5).edges == sample_graph(spec, tb, r6).edges);
}

TEST_CASE("skip sampler edge count matches the binomial law (chi-square)") {
    auto spec = single_type(2.0, 50);
    const double p = edge_probability(spec, 0, 0);
    const int pairs = 50 * 49 / 2;
    const int replicas = 10000;
    std::vector<int> counts;
    for (int r = 0; r < replicas; ++r) {
        SeededRng rng(21, static_cast<std::uint64_t>(r));
        auto types = sample_types(spec, rng);
        counts.push_back(static_cast<int>(sample_graph(spec, types, rng).edge_count()));
    }
    // binomial pmf over 0..pairs
    std::vector<double> pmf(pairs + 1, 0.0);
    double logp = std::log(p), logq = std::log1p(-p);
    for (int k = 0; k <= pairs; ++k) {
        double lg = std::lgamma(pairs + 1.0) - std::lgamma(k + 1.0) - std::lgamma(pairs - k + 1.0);
        pmf[k] = std::exp(lg + k * logp + (pairs - k) * logq);
    }
    // bin tails so every expected count is >= 5
    std::vector<int> observed;
    std::vector<double> expected;
    int obs_acc = 0;
    double exp_acc = 0.0;
    std::vector<int> hist(pairs + 1, 0);
    for (int c : counts) ++hist[c];
    for (int k = 0; k <= pairs; ++k) {
        obs_acc += hist[k];
        exp_acc += replicas * pmf[k];
        if (exp_acc >= 5.0) {
            observed.push_back(obs_acc);
            expected.push_back(exp_acc);
            obs_acc = 0;
            exp_acc = 0.0;
        }
    }
    if (exp_acc > 0.0 && !expected.empty()) {
        observed.back() += obs_acc;
        expected.back() += exp_acc;
    }
    double chi2 = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        double d = observed[i] - expected[i];
        chi2 += d * d / expected[i];
    }
    // Wilson-Hilferty critical value at p = 0.001
    double df = static_cast<double>(expected.size() - 1);
    double z = 3.0902;
    double crit = df * std::pow(1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df)), 3.0);
    CHECK(chi2 < crit);
}

TEST_CASE("tilted sampler: bitwise identity at g = 0, density at g = log 2, empty at huge negative g") {
    auto spec = single_type(2.0, 2000);
    auto g0 = TestFunction::constant(1, 0.0);
    SeededRng ra(5, 2), rb(5, 2);
    auto ta = sample_types(spec, ra);
    auto tb = sample_types(spec, rb);
    auto plain = sample_graph(spec, ta, ra);
    auto tilted = sample_tilted_graph(spec, tb, g0, rb);
    CHECK(plain.edges == tilted.edges);

    auto spec2 = single_type(2.0, 10000);
    auto glog2 = TestFunction::constant(1, std::log(2.0));
    SeededRng rng(6);
    auto types = sample_types(spec2, rng);
    auto gt = sample_tilted_graph(spec2, types, glog2, rng);
    double n = 1e4;
    double p = edge_probability(spec2, 0, 0);
    double pt = tilted_edge_probability(p, std::log(2.0));
    double mean_deg = (n - 1.0) * pt;
    CHECK(mean_deg == doctest::Approx(4.0).epsilon(1e-3));
    double se_deg = 2.0 * std::sqrt(n * (n - 1.0) / 2.0 * pt) / n;
    CHECK(std::abs(2.0 * static_cast<double>(gt.edge_count()) / n - mean_deg) <= 3.0 * se_deg);

    auto gneg = TestFunction::constant(1, -1000.0);
    SeededRng rng3(8);
    auto t3 = sample_types(spec, rng3);
    CHECK(sample_tilted_graph(spec, t3, gneg, rng3).edges.empty());
}

TEST_CASE("log RN derivative: zero at g = 0 and hand value on the single-edge graph") {
    auto spec = single_type(2.0, 30);
    SeededRng rng(9);
    auto types = sample_types(spec, rng);
    auto graph = sample_graph(spec, types, rng);
    CHECK(log_rn_derivative(spec, graph, TestFunction::constant(1, 0.0)) == 0.0);

    auto tiny = single_type(2.0, 2);
    TypedGraph one_edge;
    one_edge.n = 2;
    one_edge.num_types = 1;
    one_edge.types = {0, 0};
    one_edge.edges = {{0, 1}};
    double v = log_rn_derivative(tiny, one_edge, TestFunction::constant(1, std::log(2.0)));
    CHECK(v == doctest::Approx(std::log(3.0 / 4.0)).epsilon(1e-12));
}

TEST_CASE("log RN derivative matches the naive pairwise oracle") {
    SeededRng seedgen(10);
    for (int rep = 0; rep < 10; ++rep) {
        auto spec = two_type(40, rep % 2 == 0);
        auto g = random_test_function(2, seedgen, 2.0);
        SeededRng rng(30, static_cast<std::uint64_t>(rep));
        auto types = sample_types(spec, rng);
        auto graph = sample_tilted_graph(spec, types, g, rng);
        CHECK(log_rn_derivative(spec, graph, g)
              == doctest::Approx(naive_log_rn(spec, graph, g)).epsilon(1e-9));
    }
}

TEST_CASE("mean of exp(log RN) under the tilted law is 1") {
    auto spec = single_type(2.0, 15);
    auto g = TestFunction::constant(1, std::log(2.0));
    const int replicas = 10000;
    std::vector<double> w(replicas);
    for (int r = 0; r < replicas; ++r) {
        SeededRng rng(31, static_cast<std::uint64_t>(r));
        auto types = sample_types(spec, rng);
        auto graph = sample_tilted_graph(spec, types, g, rng);
        w[r] = std::exp(log_rn_derivative(spec, graph, g));
    }
    double mean = 0.0;
    for (double x : w) mean += x;
    mean /= replicas;
    double ss = 0.0;
    for (double x : w) ss += (x - mean) * (x - mean);
    double se = std::sqrt(ss / (static_cast<double>(replicas) * (replicas - 1.0)));
    CHECK(std::abs(mean - 1.0) <= 3.0 * se);
}

TEST_CASE("asymmetric pair orientation uses the lower-index site's type first") {
    // n = 2 forced types (a, b): the only pair is (0,1) with class (a,b).
    auto spec = two_type(2, false);
    std::vector<std::uint32_t> types = {0, 1};
    auto counts = ordered_pair_counts(2, types);
    CHECK(counts[0 * 2 + 1] == 1);
    CHECK(counts[1 * 2 + 0] == 0);
}

TEST_CASE("model spec rejects symmetric flag with asymmetric kernel") {
    CHECK_THROWS_AS(ModelSpec(TypeAlphabet({"a", "b"}), ProbabilityMeasure({0.5, 0.5}),
                              ConnectivityKernel(2, {1.0, 2.0, 3.0, 4.0}), 10, true),
                    std::invalid_argument);
}

TEST_CASE("graph serialization round-trips bit-exactly") {
    auto spec = two_type(60);
    TypeAlphabet alphabet({"a", "b"});
    SeededRng rng(12);
    auto types = sample_types(spec, rng);
    auto graph = sample_graph(spec, types, rng);

    std::ostringstream first;
    write_graph(first, graph, alphabet);
    std::istringstream in(first.str());
    auto back = read_graph(in, alphabet);
    CHECK(back.types == graph.types);
    CHECK(back.edges == graph.edges);
    CHECK(back.symmetric == graph.symmetric);
    std::ostringstream second;
    write_graph(second, back, alphabet);
    CHECK(first.str() == second.str());
}
