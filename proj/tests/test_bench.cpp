#include "doctest.h"

#include <cmath>

#include "gapcover/bench.hpp"

using namespace gapcover;

TEST_CASE("empty grid gives the header only") {
    BenchOptions o;
    o.methods = {Stage3Method::Nibble};
    o.seeds = {1, 2};
    const BenchTable t = compare_strategies(o);
    CHECK(t.rows.empty());
    CHECK(t.csv() == "x,seed,method,achieved_y,residual_count,runtime\n");
}

TEST_CASE("single row matches a direct pipeline run") {
    BenchOptions o;
    o.xs = {1000};
    o.seeds = {17};
    o.methods = {Stage3Method::Greedy};
    const BenchTable t = compare_strategies(o);
    REQUIRE(t.rows.size() == 1);
    StagedConfig c;
    c.x = 1000;
    c.seed = 17;
    c.stage3 = Stage3Method::Greedy;
    const auto rep = run_pipeline(c).report;
    CHECK(t.rows[0].achieved_y == rep.achieved_y);
    CHECK(t.rows[0].residual_count == rep.after_stage3);
    CHECK(t.rows[0].runtime < 0);
    CHECK(t.csv() == "x,seed,method,achieved_y,residual_count,runtime\n1000,17,greedy," + std::to_string(rep.achieved_y) + "," +
                         std::to_string(rep.after_stage3) + ",\n");
}

TEST_CASE("paired difference interval") {
    // mean 2, sd 1, se 1/sqrt(3), t_{0.975, 2} = 4.302652729749464
    const auto d = paired_difference({1, 2, 3});
    CHECK(d.mean == doctest::Approx(2.0));
    CHECK(d.se == doctest::Approx(1 / std::sqrt(3.0)));
    CHECK(d.ci_hi - d.mean == doctest::Approx(4.302652729749464 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(d.mean - d.ci_lo == doctest::Approx(4.302652729749464 / std::sqrt(3.0)).epsilon(1e-12));
    const auto one = paired_difference({5});
    CHECK(one.ci_lo == 5);
    CHECK(one.ci_hi == 5);
}

TEST_CASE("tables do not depend on the thread count") {
    BenchOptions o;
    o.xs = {500, 1000};
    o.seeds = {1, 2, 3};
    o.methods = {Stage3Method::Independent, Stage3Method::Nibble};
    const BenchTable a = compare_strategies(o);
    o.threads = 3;
    const BenchTable b = compare_strategies(o);
    CHECK(a.csv() == b.csv());
    CHECK(a.summary_csv() == b.summary_csv());
    CHECK(a.paired_csv() == b.paired_csv());
    REQUIRE(a.paired.size() == 2);
    CHECK(a.paired[0].pairs == 3);
    CHECK(a.summary.size() == 4);
}
