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

   End-to-end acceptance checks. Each numbered criterion prints one
   PASS/FAIL line; the binary exits nonzero if any criterion fails.
*/

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mrn/empirical.hpp"
#include "mrn/measure.hpp"
#include "mrn/model.hpp"
#include "mrn/rates.hpp"
#include "mrn/rng.hpp"
#include "mrn/verify.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace mrn;
using namespace mrn::testing;

namespace {

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail = {}) {
    std::printf("%s  %2d. %s%s%s\n", ok ? "PASS" : "FAIL", index, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

ModelSpec single_type(double c, std::size_t n) {
    return ModelSpec(TypeAlphabet({"a"}), ProbabilityMeasure({1.0}),
                     ConnectivityKernel::constant(1, c), n, true);
}

// --------------------------------------------------------------------------
// 1. Kullback action nonnegativity, zero iff pi equals the kernel product.
// --------------------------------------------------------------------------
void criterion_1() {
    SeededRng rng(1001);
    bool ok = true;
    for (int rep = 0; rep < 10000 && ok; ++rep) {
        auto c = random_kernel(3, rng, rep % 2 == 0);
        auto rho = random_probability(3, rng);
        auto pi = random_pair_on_support(c, rho, rng);
        double h = kullback_action(pi, rho, c);
        if (h < -1e-12) ok = false;
        auto kp = kernel_product(c, rho);
        if (h <= 1e-12)
            for (std::size_t i = 0; i < 9; ++i)
                if (std::abs(pi.weights()[i] - kp.weights()[i]) > 1e-12) ok = false;
        if (std::abs(kullback_action(kp, rho, c)) > 1e-12) ok = false;
    }
    report(1, "kullback action >= 0 over 1e4 triples, = 0 iff pi = c rho (x) rho", ok);
}

// --------------------------------------------------------------------------
// 2. Variational identity: sup over g of <g,pi> - potential equals the action.
// --------------------------------------------------------------------------
void criterion_2() {
    SeededRng rng(1002);
    bool ok = true;
    for (int rep = 0; rep < 1000 && ok; ++rep) {
        auto c = random_kernel(3, rng);
        auto omega = random_probability(3, rng);
        auto pi = random_pair_on_support(c, omega, rng);
        auto gap = kullback_variational_gap(pi, omega, c);
        double action = kullback_action(pi, omega, c);
        if (std::abs(gap.value - action) > 1e-10) ok = false;
        for (int i = 0; i < 100 && ok; ++i) {
            auto g = random_test_function(3, rng);
            if (pairing(g, pi) - spectral_potential(g, omega, c) > gap.value + 1e-12) ok = false;
        }
    }
    report(2, "variational identity on 1e3 triples, 100-point g-grid never exceeds it", ok);
}

// --------------------------------------------------------------------------
// 3. LLN triple at n = 1e5 over 20 seeds.
// --------------------------------------------------------------------------
void criterion_3() {
    const std::size_t n = 100000;
    const int seeds = 20;
    const int cap = 60;

    auto spec = single_type(2.0, n);
    std::vector<double> iso(seeds);
    std::vector<std::int64_t> deg_hist(cap + 1, 0);
    std::int64_t edge_total = 0;
    for (int s = 0; s < seeds; ++s) {
        SeededRng rng(3000, static_cast<std::uint64_t>(s));
        auto types = sample_types(spec, rng);
        auto graph = sample_graph(spec, types, rng);
        auto hist = degree_counts(graph);
        iso[s] = static_cast<double>(hist[0]) / static_cast<double>(n);
        for (std::size_t k = 0; k < hist.size() && k <= static_cast<std::size_t>(cap); ++k)
            deg_hist[k] += hist[k];
        edge_total += static_cast<std::int64_t>(graph.edge_count());
    }
    double iso_mean = 0.0;
    for (double v : iso) iso_mean += v;
    iso_mean /= seeds;
    double iso_var = 0.0;
    for (double v : iso) iso_var += (v - iso_mean) * (v - iso_mean);
    double iso_se = std::sqrt(iso_var / (seeds * (seeds - 1.0)));
    bool ok_iso = std::abs(iso_mean - std::exp(-2.0)) <= 3.0 * iso_se;

    auto q2 = poisson_pmf(2.0, cap);
    double tv = q2.overflow;  // empirical mass beyond the cap is negligible here
    double total_sites = static_cast<double>(n) * seeds;
    for (int k = 0; k <= cap; ++k)
        tv += std::abs(static_cast<double>(deg_hist[k]) / total_sites - q2.pmf[k]);
    tv *= 0.5;
    bool ok_tv = tv < 0.02;

    double l2_mass = 2.0 * static_cast<double>(edge_total) / total_sites;
    bool ok_mass = std::abs(l2_mass - 2.0) < 0.05;

    // Two types, eta = (1/2, 1/2): entrywise L2 -> c rho (x) rho.
    ModelSpec two(TypeAlphabet({"a", "b"}), ProbabilityMeasure({0.5, 0.5}),
                  ConnectivityKernel(2, {1.0, 2.0, 2.0, 4.0}), n, true);
    std::vector<std::int64_t> coop(4, 0);
    for (int s = 0; s < seeds; ++s) {
        SeededRng rng(3001, static_cast<std::uint64_t>(s));
        auto types = sample_types(two, rng);
        auto graph = sample_graph(two, types, rng);
        auto cc = cooperative_counts(graph);
        for (std::size_t i = 0; i < 4; ++i) coop[i] += cc[i];
    }
    auto target = kernel_product(two.kernel(), two.eta());
    bool ok_two = true;
    for (std::size_t i = 0; i < 4; ++i)
        if (std::abs(static_cast<double>(coop[i]) / total_sites - target.weights()[i]) >= 0.05)
            ok_two = false;

    std::ostringstream detail;
    detail << "iso=" << iso_mean << " tv=" << tv << " |L2|=" << l2_mass;
    report(3, "LLN triple at n=1e5 (isolated fraction, TV(deg,q_2), L2 limits)",
           ok_iso && ok_tv && ok_mass && ok_two, detail.str());
}

// --------------------------------------------------------------------------
// 4. Exact-oracle agreement at n = 4 with 1e6 MC replicas per observable.
// --------------------------------------------------------------------------
void criterion_4() {
    ModelSpec spec(TypeAlphabet({"a", "b"}), ProbabilityMeasure({0.5, 0.5}),
                   ConnectivityKernel(2, {1.0, 2.0, 2.0, 1.0}), 4, true);
    bool ok = true;
    std::ostringstream detail;
    for (auto kind : {Observable::TypeMeasure, Observable::CooperativeMeasure, Observable::Degree,
                      Observable::Neighbourhood, Observable::IsolatedFraction}) {
        auto exact = enumerate_ensemble(spec, kind);
        auto mc = mc_law(spec, kind, 1000000, 4000, 4);
        double tv = distribution_tv(exact, mc);
        detail << observable_name(kind) << "=" << tv << " ";
        if (tv >= 0.005) ok = false;
    }
    report(4, "MC law vs exact enumeration at n=4: TV < 0.005 per observable", ok, detail.str());
}

// --------------------------------------------------------------------------
// 5. Rate-function zeros at the LLN points for c in {0.5, 1, 2, 4}.
// --------------------------------------------------------------------------
void criterion_5() {
    bool ok = true;
    for (double c : {0.5, 1.0, 2.0, 4.0}) {
        auto q = poisson_pmf(c, 150);
        q.overflow = 0.0;  // drop the sub-1e-12 tail; overflow means +inf by contract
        if (std::abs(degree_rate_lambda(q, c).value) > 1e-10) ok = false;
        if (std::abs(isolated_rate_h(std::exp(-c), c).value) > 1e-10) ok = false;

        ProbabilityMeasure eta({0.6, 0.4});
        auto kernel = ConnectivityKernel::constant(2, c);
        auto pi = kernel_product(kernel, eta);
        if (std::abs(rate_I(eta, pi, eta, kernel).value) > 1e-10) ok = false;
        auto omega = q1_kernel(pi, eta, 60);
        if (std::abs(rate_J1(pi, omega, eta, kernel, 60).value) > 1e-10) ok = false;
    }
    report(5, "rate zeros: lambda(q_c), h(e^{-c}), I, J1 all < 1e-10 for c in {0.5,1,2,4}", ok);
}

// --------------------------------------------------------------------------
// 6. Contraction identity: min over d with d(0) = z of lambda(d) = h(z).
// --------------------------------------------------------------------------
void criterion_6() {
    const double c = 2.0;
    bool ok = true;
    std::ostringstream detail;
    for (double z : {0.2, std::exp(-2.0), 0.6, 0.9}) {
        double direct = isolated_rate_h(z, c).value;
        double contracted = min_degree_rate_given_isolated(z, c, 40, 400, 6006);
        detail << "z=" << z << " gap=" << std::abs(contracted - direct) << " ";
        if (std::abs(contracted - direct) > 1e-6) ok = false;
    }
    report(6, "contraction: min{lambda(d): d(0)=z} = h(z) within 1e-6 at c=2", ok, detail.str());
}

// --------------------------------------------------------------------------
// 7. Empty-graph slope: exact values, tilted MC agreement, 2% at n = 200.
// --------------------------------------------------------------------------
void criterion_7() {
    const double c = 2.0;
    bool ok = true;
    std::ostringstream detail;
    double slope200 = 0.0;
    for (std::size_t n : {std::size_t{50}, std::size_t{100}, std::size_t{200}}) {
        auto spec = single_type(c, n);
        double p = edge_probability(spec, 0, 0);
        double pairs = static_cast<double>(n * (n - 1) / 2);
        double log_exact = pairs * std::log1p(-p);
        double slope_exact = -log_exact / static_cast<double>(n);
        if (n == 200) slope200 = slope_exact;

        auto est = rare_event_tilted(spec, [](const TypedGraph& g) { return g.edges.empty(); },
                                     TestFunction::constant(1, -6.0), 20000, 7000 + n, 4);
        if (est.hits == 0 || std::abs(est.mean - std::exp(log_exact)) > 3.0 * est.se) ok = false;
        detail << "n=" << n << " slope=" << slope_exact << " ";
    }
    if (std::abs(slope200 - c / 2.0) > 0.02 * (c / 2.0)) ok = false;
    report(7, "empty-graph slope: tilted MC within 3 SE, n=200 slope within 2% of c/2", ok,
           detail.str());
}

// --------------------------------------------------------------------------
// 8. Change-of-measure unbiasedness: E~[RN] = 1 and agreement with the oracle.
// --------------------------------------------------------------------------
void criterion_8() {
    bool ok = true;
    std::ostringstream detail;

    ModelSpec spec(TypeAlphabet({"a", "b"}), ProbabilityMeasure({0.5, 0.5}),
                   ConnectivityKernel(2, {1.0, 2.0, 2.0, 4.0}), 15, true);
    const std::vector<TestFunction> tilts = {
        TestFunction::constant(2, std::log(2.0)),
        TestFunction::constant(2, -0.7),
        TestFunction(2, {0.5, -0.3, -0.3, 0.8}),
    };
    for (std::size_t t = 0; t < tilts.size(); ++t) {
        const auto& g = tilts[t];
        std::vector<double> values(100000);
        for (std::size_t r = 0; r < values.size(); ++r) {
            SeededRng rng(8000 + t, r);
            auto types = sample_types(spec, rng);
            auto graph = sample_tilted_graph(spec, types, g, rng);
            values[r] = std::exp(log_rn_derivative(spec, graph, g));
        }
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        double se = std::sqrt(var / (static_cast<double>(values.size()) *
                                     (static_cast<double>(values.size()) - 1.0)));
        detail << "mean=" << mean << "+-" << se << " ";
        if (std::abs(mean - 1.0) > 3.0 * se) ok = false;
    }

    auto small = ModelSpec(TypeAlphabet({"a", "b"}), ProbabilityMeasure({0.5, 0.5}),
                           ConnectivityKernel(2, {1.0, 2.0, 2.0, 4.0}), 4, true);
    double exact = enumerate_ensemble(small, Observable::IsolatedFraction).prob.at({4});
    auto est = rare_event_tilted(small, [](const TypedGraph& g) { return g.edges.empty(); },
                                 TestFunction::constant(2, -2.0), 100000, 8800, 4);
    if (std::abs(est.mean - exact) > 3.0 * est.se) ok = false;

    report(8, "change of measure: E~[exp(log RN)] = 1 (3 tilts), oracle match at n=4", ok,
           detail.str());
}

// --------------------------------------------------------------------------
// 9. Empirical-measure identities, exact on the integer counts.
// --------------------------------------------------------------------------
void criterion_9() {
    SeededRng seedgen(9009);
    bool ok = true;
    for (int rep = 0; rep < 1000 && ok; ++rep) {
        std::size_t n = 3 + (rep % 48);
        auto eta = random_probability(2, seedgen);
        auto kernel = random_kernel(2, seedgen, true);
        ModelSpec spec(TypeAlphabet({"a", "b"}), eta, kernel, n, true);
        SeededRng rng(9100, static_cast<std::uint64_t>(rep));
        auto types = sample_types(spec, rng);
        auto graph = sample_graph(spec, types, rng);

        auto cc = cooperative_counts(graph);
        std::int64_t cc_total = 0;
        for (auto v : cc) cc_total += v;
        if (cc_total != 2 * static_cast<std::int64_t>(graph.edge_count())) ok = false;

        auto nc = neighbourhood_counts(graph, static_cast<int>(n));
        auto tc = type_counts(graph);
        std::vector<std::int64_t> marg(2, 0);
        for (const auto& [key, v] : nc.counts) marg[key.first] += v;
        if (marg != tc) ok = false;

        auto res = consistency_check(cooperative_measure(graph),
                                     neighbourhood_measure(graph, static_cast<int>(n)));
        if (!res.ok) ok = false;
    }
    report(9, "empirical identities exact on 1e3 sampled graphs (mass, marginal, consistency)", ok);
}

// --------------------------------------------------------------------------
// 10. Byte-identical experiment outputs under 1, 4, and 16 workers.
// --------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10() {
    fs::path base = fs::temp_directory_path() / "mrn_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);

    const std::vector<std::pair<std::string, std::string>> experiments = {
        {"lln", R"({"experiment":"lln","model":{"labels":["a"],"eta":[1.0],"kernel":[[2.0]],"symmetric":true},"n":2000,"replicas":8,"seed":5,"caps":{"degree":40}})"},
        {"enumerate", R"({"experiment":"enumerate","model":{"labels":["a","b"],"eta":[0.5,0.5],"kernel":[[1.0,2.0],[2.0,1.0]],"symmetric":true},"n":4,"replicas":20000,"seed":5,"observable":"degree"})"},
        {"rare-event", R"({"experiment":"rare-event","model":{"labels":["a"],"eta":[1.0],"kernel":[[2.0]],"symmetric":true},"n":50,"replicas":5000,"seed":5,"tilt":-6.0,"event":{"kind":"no-edges"}})"},
        {"rate-landscape", R"({"experiment":"rate-landscape","model":{"labels":["a"],"eta":[1.0],"kernel":[[2.0]],"symmetric":true},"points":200})"},
        {"slope-scan", R"({"experiment":"slope-scan","model":{"labels":["a"],"eta":[1.0],"kernel":[[2.0]],"symmetric":true},"n_grid":[20,40],"replicas":5000,"seed":5,"tilt":-6.0,"event":{"kind":"no-edges"}})"},
    };

    bool ok = true;
    std::ostringstream detail;
    for (const auto& [name, body_base] : experiments) {
        std::vector<fs::path> outs;
        for (int workers : {1, 4, 16}) {
            std::string body = body_base;
            body.insert(body.size() - 1, ",\"workers\":" + std::to_string(workers));
            fs::path cfg = base / (name + "_w" + std::to_string(workers) + ".json");
            fs::path out = base / (name + "_w" + std::to_string(workers));
            std::ofstream(cfg) << body;
            std::string cmd = std::string(MRN_CLI_PATH) + " run " + cfg.string() + " --out " +
                              out.string() + " >/dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                detail << name << ":run-failed ";
            }
            outs.push_back(out);
        }
        for (const auto& entry : fs::directory_iterator(outs[0])) {
            auto fname = entry.path().filename();
            std::string ref = slurp(entry.path());
            if (ref != slurp(outs[1] / fname) || ref != slurp(outs[2] / fname)) {
                ok = false;
                detail << name << "/" << fname.string() << ":differs ";
            }
        }
    }
    report(10, "byte-identical experiment outputs under 1, 4, and 16 workers", ok, detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
