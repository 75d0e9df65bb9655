#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gapcover/oracle.hpp"
#include "gapcover/rng.hpp"
#include "gapcover/strategies.hpp"

using namespace gapcover;

namespace {

StagedConfig desk(std::uint64_t x, std::uint64_t seed = 1, Stage3Method m = Stage3Method::Nibble) {
    StagedConfig c;
    c.x = x;
    c.seed = seed;
    c.stage3 = m;
    return c;
}

std::vector<std::uint64_t> trial_primes(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(n);
    }
    return out;
}

std::uint64_t largest_factor(std::uint64_t n) {
    std::uint64_t best = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            best = d;
            n /= d;
        }
    return n > 1 ? std::max(best, n) : best;
}

std::vector<std::uint64_t> moduli(const ResidueSystem& s) {
    std::vector<std::uint64_t> out;
    for (const auto& [p, a] : s.entries()) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("config validation and names") {
    StagedConfig c;
    CHECK_NOTHROW(c.validate());
    c.x = 50;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.v_exp = 0.4;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.z_exp = 0.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.c = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    for (auto m : {Stage3Method::Independent, Stage3Method::Greedy, Stage3Method::Nibble})
        CHECK(parse_stage3_method(to_string(m)) == m);
    CHECK(parse_threshold_mode("paper-formula") == ThresholdMode::PaperFormula);
    CHECK(parse_edge_weighting("weights") == EdgeWeighting::SieveWeights);
    CHECK_THROWS_AS(parse_stage3_method("random"), std::invalid_argument);
}

TEST_CASE("y and r at desk scale") {
    // 5000 log 5000 / log log 5000, log_3 5000 < 1
    const double x = 5000, lx = std::log(x);
    CHECK(target_y(5000, 1.0) == static_cast<std::uint64_t>(std::ceil(x * lx / std::log(lx))));
    CHECK(target_y(5000, 1.0) > 19800);
    CHECK(target_y(5000, 1.0) < 19900);
    CHECK(default_r(5000) == 2);
    CHECK(default_r(100000) == 2);
    // log^{1/5} x >= 3 needs log x >= 243
    CHECK(default_r(1000000) == 2);
}

TEST_CASE("stage 1 at x = 10^4: zero classes for p <= 2 and 25 < p <= 5000") {
    const ResidueSystem s = stage1_zero_classes(desk(10000));
    std::vector<std::uint64_t> expect{2};
    for (std::uint64_t p : trial_primes(26, 5000)) expect.push_back(p);
    CHECK(moduli(s) == expect);
    for (const auto& [p, a] : s.entries()) CHECK(a == 0);
}

TEST_CASE("stage 1 at x = 100, v_exp = 0.2: only p = 2 among the very small primes") {
    StagedConfig c = desk(100);
    c.v_exp = 0.2;  // 100^0.2 = 2.51
    c.z_exp = 0.35; // 100^0.35 = 5.01
    const ResidueSystem s = stage1_zero_classes(c);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(3));
    CHECK_FALSE(s.contains(5));
    CHECK(s.contains(7));
    CHECK(s.contains(47));
    CHECK_FALSE(s.contains(53));
    CHECK(small_sieve_primes(c) == std::vector<std::uint64_t>{3, 5});
}

TEST_CASE("asymptotic threshold mode clamps v at desk scale") {
    StagedConfig c = desk(10000);
    c.mode = ThresholdMode::PaperFormula;
    const Thresholds t = thresholds(c);
    CHECK(t.v_clamped);
    CHECK(t.v == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_FALSE(t.warnings.empty());
    const double lx = std::log(10000.0);
    CHECK(t.z == doctest::Approx(std::exp(lx * std::log(std::log(lx)) / (4 * std::log(lx)))));
    // z < v here, so the random stage is empty and stage 1 takes every p <= x/2.
    CHECK(small_sieve_primes(c).empty());
    CHECK(stage1_zero_classes(c).size() == primes_up_to(5000).size());
}

TEST_CASE("asymptotic thresholds at x = 10^1000 in log space") {
    using Big = boost::multiprecision::cpp_bin_float_50;
    const Big lx = Big(1000) * log(Big(10));
    const Big l2 = log(lx), l3 = log(l2);
    const Big log_v = 20 * l2;
    const Big log_z = lx * l3 / (4 * l2);
    const auto got = paper_threshold_logs(static_cast<double>(lx));
    CHECK(got.log_v == doctest::Approx(static_cast<double>(log_v)).epsilon(1e-12));
    CHECK(got.log_z == doctest::Approx(static_cast<double>(log_z)).epsilon(1e-12));
    CHECK(got.log_v == doctest::Approx(154.83).epsilon(1e-3));
    CHECK(got.log_z == doctest::Approx(152.2).epsilon(1e-3));
    // Even here log^20 x still exceeds z, so S = (log^20 x, z] is empty.
    CHECK(got.log_v > got.log_z);
    // The clamp x^{1/4} is far above both at this size.
    CHECK(static_cast<double>(lx) / 4 > got.log_v);
}

TEST_CASE("stage 2: empty S, determinism, uniform classes") {
    StagedConfig c = desk(100);
    c.v_exp = 0.30;  // 3.98
    c.z_exp = 0.31;  // 4.17
    CHECK(stage2_random_small(c).empty());

    StagedConfig d = desk(10000, 7);
    const auto a = stage2_random_small(d);
    CHECK(a.residue(7) == stage2_random_small(d).residue(7));
    CHECK(a.residue(7) == RandomStream(7, StreamTag::Stage2, 7).below(7));
    CHECK(moduli(a) == std::vector<std::uint64_t>{3, 5, 7, 11, 13, 17, 19, 23});

    std::vector<int> freq(5, 0);
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        d.seed = seed;
        ++freq[*stage2_random_small(d).residue(5)];
    }
    for (int f : freq) CHECK(std::fabs(f / 2000.0 - 0.2) <= 0.03);
}

TEST_CASE("sigma is the product over S") {
    const StagedConfig c = desk(5000);
    double expect = 1;
    for (std::uint64_t s : trial_primes(3, 19)) expect *= 1.0 - 1.0 / s;
    CHECK(std::fabs(sigma(c) - expect) < 1e-12);
    CHECK(std::fabs(run_pipeline(c).report.sigma - expect) < 1e-12);
}

TEST_CASE("survivor split at x = 5000 agrees with direct factoring") {
    StagedConfig c = desk(5000, 3);
    ResidueSystem sys = stage1_zero_classes(c);
    sys.merge(stage2_random_small(c));
    const SurvivorSplit split = survivors_after_small(c, sys);
    const Thresholds t = thresholds(c);
    std::size_t primes = 0, smooth = 0, other = 0, total = 0;
    for (std::uint64_t n = c.x + 1; n <= t.y; ++n) {
        if (sys.covers(static_cast<std::int64_t>(n))) continue;
        ++total;
        const std::uint64_t f = largest_factor(n);
        if (f == n)
            ++primes;
        else if (static_cast<double>(f) <= t.z)
            ++smooth;
        else
            ++other;
    }
    CHECK(split.survivors.count() == total);
    CHECK(split.primes == primes);
    CHECK(split.smooth == smooth);
    CHECK(split.other == other);
    // With every class zero each z-smooth number is hit by one of its factors.
    ResidueSystem zeros = stage1_zero_classes(c);
    for (std::uint64_t s : small_sieve_primes(c)) zeros.add(s, 0);
    const SurvivorSplit z = survivors_after_small(c, zeros);
    CHECK(z.smooth == 0);
}

TEST_CASE("expected prime survivors over 50 seeds") {
    StagedConfig c = desk(5000);
    const Thresholds t = thresholds(c);
    const double expect = sigma(c) * static_cast<double>(trial_primes(c.x + 1, t.y).size());
    std::vector<double> obs;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        c.seed = seed;
        ResidueSystem sys = stage1_zero_classes(c);
        sys.merge(stage2_random_small(c));
        obs.push_back(static_cast<double>(survivors_after_small(c, sys).primes));
    }
    const double mean = std::accumulate(obs.begin(), obs.end(), 0.0) / obs.size();
    double ss = 0;
    for (double v : obs) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (obs.size() - 1) / obs.size());
    CHECK(std::fabs(mean - expect) <= 3 * se);
}

TEST_CASE("edges for one prime") {
    const AdmissibleTuple h{{3, 5}};
    const auto e = edges_for_prime(h, 7, {22, 36});
    // 1 + 3*7 = 22 and 1 + 5*7 = 36
    REQUIRE(e.count(1));
    CHECK(e.at(1) == Edge{0, 1});
    CHECK(e.at(22 - 35) == Edge{0});
    CHECK(e.at(36 - 21) == Edge{1});
    CHECK(e.size() == 3);
}

TEST_CASE("edge model at x = 5000") {
    StagedConfig c = desk(5000, 2);
    ResidueSystem sys = stage1_zero_classes(c);
    sys.merge(stage2_random_small(c));
    const auto surv = survivors_after_small(c, sys).survivors.survivors();
    const EdgeModel m = build_edge_distributions(c, surv);
    CHECK(m.primes.front() > 2500);
    CHECK(m.primes.back() <= 5000);
    CHECK(codegree_violations(m) == 0);
    for (std::size_t i = 0; i < m.primes.size(); ++i) {
        const auto& d = *m.instance.dist[i];
        CHECK(d.total() == doctest::Approx(1.0));
        for (std::size_t t = 0; t < d.support.size(); ++t) {
            const std::int64_t n = m.n_values[i][t];
            std::vector<VertexId> expect;
            for (std::int64_t off : m.tuple.offsets) {
                const auto it = std::lower_bound(surv.begin(), surv.end(), n + off * static_cast<std::int64_t>(m.primes[i]));
                if (it != surv.end() && *it == n + off * static_cast<std::int64_t>(m.primes[i]))
                    expect.push_back(static_cast<VertexId>(it - surv.begin()));
            }
            CHECK(d.support[t].edge == expect);
        }
    }
    // Distinct vertices share an edge only under the prime dividing their difference.
    for (std::size_t i = 0; i < 5; ++i)
        for (const auto& o : m.instance.dist[i]->support)
            if (o.edge.size() == 2) CHECK((m.vertices[o.edge[1]] - m.vertices[o.edge[0]]) % static_cast<std::int64_t>(m.primes[i]) == 0);
}

TEST_CASE("single survivor: its edges carry all the mass") {
    StagedConfig c = desk(100);
    const EdgeModel m = build_edge_distributions(c, {101});
    for (const auto& d : m.instance.dist) {
        double mass = 0;
        for (const auto& o : d->support) {
            CHECK(o.edge == Edge{0});
            mass += o.prob;
        }
        CHECK(mass == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(build_edge_distributions(c, {}), NoEdgesError);
}

TEST_CASE("weights mode gives normalized distributions with empty remainder") {
    StagedConfig c = desk(1000, 4);
    c.weighting = EdgeWeighting::SieveWeights;
    ResidueSystem sys = stage1_zero_classes(c);
    sys.merge(stage2_random_small(c));
    const auto surv = survivors_after_small(c, sys).survivors.survivors();
    const EdgeModel m = build_edge_distributions(c, surv);
    for (const auto& d : m.instance.dist) {
        CHECK(d->total() <= 1 + 1e-12);
        CHECK(d->empty_mass() > 0);
    }
}

namespace {

// Hand-built model over explicit vertices and primes, uniform over given n.
EdgeModel manual_model(std::vector<std::int64_t> vertices, std::vector<std::uint64_t> primes, AdmissibleTuple h) {
    EdgeModel m;
    m.vertices = std::move(vertices);
    m.primes = std::move(primes);
    m.tuple = h;
    m.instance.num_vertices = m.vertices.size();
    for (std::uint64_t p : m.primes) {
        auto edges = edges_for_prime(h, p, m.vertices);
        auto d = std::make_shared<EdgeDistribution>();
        std::vector<std::int64_t> ns;
        for (auto& [n, e] : edges) {
            d->support.push_back({e, 1.0 / static_cast<double>(edges.size())});
            ns.push_back(n);
        }
        m.n_values.push_back(ns);
        m.instance.dist.push_back(d);
    }
    return m;
}

std::size_t covered_by(const EdgeModel& m, const std::vector<std::uint8_t>& alive, std::uint64_t p, std::uint64_t a) {
    std::size_t k = 0;
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
        if (alive[v] && mod_floor(m.vertices[v], p) == a) ++k;
    return k;
}

}  // namespace

TEST_CASE("one prime, one edge: every method takes it") {
    EdgeModel m;
    m.vertices = {1009};
    m.primes = {31};
    m.tuple = AdmissibleTuple{{1, 3}};
    m.instance.num_vertices = 1;
    auto d = std::make_shared<EdgeDistribution>();
    d->support.push_back({Edge{0}, 1.0});
    m.instance.dist.push_back(d);
    m.n_values = {{1009 - 31}};
    for (auto method : {Stage3Method::Independent, Stage3Method::Greedy, Stage3Method::Nibble}) {
        StagedConfig c = desk(100, 5, method);
        const auto sel = stage3_select(c, m);
        REQUIRE(sel.classes[0]);
        CHECK(*sel.classes[0] == 1009 % 31);
        CHECK(sel.model_leftover == 0);
    }
}

TEST_CASE("greedy matches brute force on two primes") {
    // 11 and 13 both have one class covering three vertices; the best classes overlap.
    const std::vector<std::int64_t> verts{200, 211, 213, 222, 226, 239, 241, 255, 267};
    const EdgeModel m = manual_model(verts, {11, 13}, AdmissibleTuple{{1, 3}});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto sel = stage3_select(desk(100, seed, Stage3Method::Greedy), m);
        REQUIRE(sel.classes[0]);
        REQUIRE(sel.classes[1]);
        // One of the two orders reproduces the choice by exhaustive search.
        bool ok = false;
        for (int first : {0, 1}) {
            const int second = 1 - first;
            std::vector<std::uint8_t> alive(verts.size(), 1);
            auto best = [&](int i) {
                std::size_t top = 0;
                for (std::uint64_t a = 0; a < m.primes[i]; ++a) top = std::max(top, covered_by(m, alive, m.primes[i], a));
                return top;
            };
            if (covered_by(m, alive, m.primes[first], *sel.classes[first]) != best(first)) continue;
            for (std::size_t v = 0; v < verts.size(); ++v)
                if (mod_floor(verts[v], m.primes[first]) == *sel.classes[first]) alive[v] = 0;
            if (covered_by(m, alive, m.primes[second], *sel.classes[second]) == best(second)) ok = true;
        }
        CHECK(ok);
    }
}

TEST_CASE("nibble leaves fewer model vertices than independent at x = 5000") {
    double ind = 0, nib = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        StagedConfig c = desk(5000, seed);
        ResidueSystem sys = stage1_zero_classes(c);
        sys.merge(stage2_random_small(c));
        const EdgeModel m = build_edge_distributions(c, survivors_after_small(c, sys).survivors.survivors());
        c.stage3 = Stage3Method::Independent;
        ind += static_cast<double>(stage3_select(c, m).model_leftover);
        c.stage3 = Stage3Method::Nibble;
        const auto sel = stage3_select(c, m);
        nib += static_cast<double>(sel.model_leftover);
        CHECK(sel.degree_median > 0);
        CHECK(std::accumulate(sel.round_sizes.begin(), sel.round_sizes.end(), std::size_t{0}) + sel.unscheduled == m.primes.size());
    }
    CHECK(nib <= ind);
}

TEST_CASE("atypical filter removes primes only when enabled") {
    StagedConfig c = desk(1000, 9);
    ResidueSystem sys = stage1_zero_classes(c);
    sys.merge(stage2_random_small(c));
    const EdgeModel m = build_edge_distributions(c, survivors_after_small(c, sys).survivors.survivors());
    CHECK(stage3_select(c, m).filtered == 0);
    c.filter_atypical = true;
    c.atypical_tolerance = 0.05;
    const auto sel = stage3_select(c, m);
    CHECK(sel.filtered > 0);
    CHECK(sel.filtered < m.primes.size());
    CHECK(std::count_if(sel.classes.begin(), sel.classes.end(), [](const auto& a) { return a.has_value(); }) <=
          static_cast<std::ptrdiff_t>(m.primes.size() - sel.filtered));
}

TEST_CASE("final matching") {
    StagedConfig c = desk(1000, 11);
    c.extend_beyond_y = false;
    const PipelineResult run = run_pipeline(c);
    const std::uint64_t y = run.report.thresholds.y;

    SUBCASE("nothing left: no extension") {
        const FinalMatching fm = final_matching(c, run.system, y);
        CHECK(fm.extension.empty());
        CHECK(fm.achieved_y == y);
    }
    SUBCASE("five residuals get five distinct fresh primes") {
        ResidueSystem base;
        std::vector<std::uint64_t> fresh;
        for (const auto& [p, a] : run.system.entries())
            if (p > c.x) fresh.push_back(p);
        REQUIRE(fresh.size() >= 5);
        std::set<std::uint64_t> drop(fresh.begin(), fresh.begin() + 5);
        for (const auto& [p, a] : run.system.entries())
            if (!drop.count(p)) base.add(p, a);
        const FinalMatching fm = final_matching(c, base, y);
        CHECK(fm.extension.size() == 5);
        for (const auto& [p, a] : fm.extension.entries()) {
            CHECK(p > c.x);
            CHECK(p <= 10 * c.x);
            CHECK_FALSE(base.contains(p));
        }
        ResidueSystem all = base;
        all.merge(fm.extension);
        CHECK_FALSE(first_uncovered(all, c.x + 1, y));
    }
    SUBCASE("one residual gets the first fresh prime") {
        ResidueSystem base;
        for (const auto& [p, a] : run.system.entries())
            if (p != 1009) base.add(p, a);
        const auto n = first_uncovered(base, c.x + 1, y);
        REQUIRE(n);
        const FinalMatching fm = final_matching(c, base, y);
        REQUIRE(fm.extension.size() == 1);
        CHECK(fm.extension.entries().begin()->first == 1009);
        CHECK(fm.extension.entries().begin()->second == mod_floor(*n, 1009));
    }
}

TEST_CASE("budget exceeded reports the required multiplier") {
    StagedConfig c = desk(5000, 1);
    c.C_extra = 1.02;
    try {
        run_pipeline(c);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.required_C > 1.02);
        CHECK(e.needed > 0);
        c.C_extra = e.required_C + 1e-9;
        c.extend_beyond_y = false;
        const auto rep = run_pipeline(c).report;
        CHECK(rep.extra_primes_used == e.needed);
    }
}

TEST_CASE("pipeline soundness and report") {
    for (auto method : {Stage3Method::Independent, Stage3Method::Greedy, Stage3Method::Nibble}) {
        const PipelineResult r = run_pipeline(desk(500, 3, method));
        const auto& rep = r.report;
        CHECK(rep.verified);
        CHECK(rep.achieved_y > 500);
        CHECK(rep.achieved_y >= rep.thresholds.y);
        CHECK(rep.interval >= rep.after_stage1);
        CHECK(rep.after_stage1 >= rep.after_stage2);
        CHECK(rep.after_stage2 >= rep.after_stage3);
        CHECK(rep.after_final == 0);
        CHECK(rep.stage2_primes + rep.stage2_smooth + rep.stage2_other == rep.after_stage2);
        CHECK_FALSE(first_uncovered(r.system, 501, static_cast<std::int64_t>(rep.achieved_y)));
        CHECK(r.system.covers(static_cast<std::int64_t>(rep.achieved_y) + 1) == false);
        CHECK(rep.smooth_in_Q == smooth_count(rep.thresholds.y, 8) - smooth_count(500, 8));
    }
}

TEST_CASE("pipeline is deterministic and the asymptotic mode runs") {
    const auto a = run_pipeline(desk(1000, 21)).report.json();
    CHECK(a == run_pipeline(desk(1000, 21)).report.json());
    CHECK(a != run_pipeline(desk(1000, 22)).report.json());
    StagedConfig p = desk(1000, 21);
    p.mode = ThresholdMode::PaperFormula;
    const auto rep = run_pipeline(p).report;
    CHECK(rep.verified);
    CHECK(rep.thresholds.v_clamped);
    CHECK(rep.sigma == 1.0);
}
