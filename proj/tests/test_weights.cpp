#include "doctest.h"

#include <cmath>
#include <numeric>
#include <set>

#include "gapcover/primes.hpp"
#include "gapcover/weights.hpp"
#include "oracles.hpp"

using namespace gapcover;
using namespace gapcover::oracles;

TEST_CASE("omega") {
    const auto s = twins();
    CHECK(omega(s, 2) == 1);
    CHECK(omega(s, 3) == 2);
    CHECK(omega(FormSystem({{1, 0}}), 7) == 1);
    for (std::uint64_t p : primes_up_to(300)) {
        const auto a = omega_info(s, p), b = omega_scan(s, p);
        CHECK(a.roots == b.roots);
        CHECK(a.j == b.j);
    }
    const FormSystem odd({{3, 1}, {5, 1}, {7, 3}});
    for (std::uint64_t p : primes_up_to(200)) {
        const auto a = omega_info(odd, p), b = omega_scan(odd, p);
        CHECK(a.roots == b.roots);
        CHECK(a.j == b.j);
    }
    CHECK_THROWS_AS(FormSystem({{1, 0}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(FormSystem({{1, 0}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(FormSystem({{0, 1}}), std::invalid_argument);
}

TEST_CASE("singular series") {
    CHECK(singular_series(FormSystem({{1, 0}}), 1000).value == doctest::Approx(1.0).epsilon(1e-12));
    const auto s = singular_series(twins(), 100000);
    // Twin prime constant product, recomputed to a much higher cutoff.
    double log_c = 0;
    for (std::uint64_t p : primes_up_to(20'000'000))
        if (p > 2) log_c += std::log1p(-1.0 / (double(p - 1) * double(p - 1)));
    CHECK(std::abs(s.value - 2 * std::exp(log_c)) < 1e-3);
    CHECK(std::abs(2 * std::exp(log_c) - 2 * 0.6601618158) < 1e-7);
    // Doubling the cutoff moves log S by less than the tail bound.
    for (std::uint64_t c = 1000; c <= 64000; c *= 2) {
        const auto a = singular_series(twins(), c), b = singular_series(twins(), 2 * c);
        CHECK(std::abs(std::log(a.value) - std::log(b.value)) <= a.log_tail_bound);
    }
}

TEST_CASE("D_k membership") {
    const auto s = twins();
    CHECK(in_Dk(s, {1, 1}));
    CHECK_FALSE(in_Dk(s, {11, 11}));
    CHECK_FALSE(in_Dk(s, {7, 1}));
    CHECK_FALSE(in_Dk(s, {121, 1}));
    // Mod 11 the twin forms have roots 9 (n + 2) and 11 (n), so both coordinates may carry 11.
    const auto info = omega_scan(s, 11);
    CHECK(info.roots == std::vector<std::uint64_t>{9, 11});
    CHECK(in_Dk(s, {11, 1}));
    CHECK(in_Dk(s, {1, 11}));
    // A system where 11 kills only the first form.
    const FormSystem one({{1, 0}, {11, 2}});
    CHECK(in_Dk(one, {11, 1}));
    CHECK_FALSE(in_Dk(one, {1, 11}));
}

TEST_CASE("lambda table against the brute force evaluator") {
    for (double R : {30.0, 35.0, 50.0}) {
        const WeightSystem ws(twins(), R);
        TwinOracle o{R, twin_series_wb(100000)};
        CHECK(std::abs(ws.series().value_wb - o.series_wb) <= 1e-12 * o.series_wb);
        for (std::uint64_t d1 = 1; d1 <= 50; ++d1)
            for (std::uint64_t d2 = 1; d1 * d2 <= 50; ++d2) {
                const double want = o.lambda(d1, d2);
                const double got = ws.lambda_at({d1, d2});
                CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
            }
        for (std::size_t s = 0; s < ws.support().size(); ++s) {
            const auto& d = ws.support()[s];
            CHECK(in_Dk(ws.system(), d));
            CHECK(double(d[0] * d[1]) <= R);
            CHECK(ws.lambda()[s] * moebius(d[0] * d[1]) >= 0);
        }
    }
}

TEST_CASE("w(n) by Moebius inversion through the y-weights") {
    for (double R : {30.0, 35.0, 50.0}) {
        const WeightSystem ws(twins(), R);
        for (std::int64_t n = 1; n <= 1000; ++n) {
            double s = 0;
            for (const auto& r : ws.support()) {
                const double g = ws.y(r) / ws.phi_omega(r[0] * r[1]);
                double prod = 1;
                const std::int64_t L[2] = {n, n + 2};
                for (int i = 0; i < 2; ++i)
                    for (auto q : naive_primes_of(std::gcd<std::uint64_t, std::uint64_t>(r[i], L[i]))) prod *= 1.0 - double(q);
                s += g * prod;
            }
            const double w = ws.w(n);
            CHECK(w >= 0);
            CHECK(std::abs(w - s * s) <= 1e-9 * std::max(1.0, s * s));
        }
    }
}

TEST_CASE("degenerate table") {
    const WeightSystem ws(twins(), 5.0);
    CHECK(ws.support().size() == 1);
    const double l = ws.lambda()[0];
    for (std::int64_t n = -20; n <= 20; ++n) CHECK(ws.w(n) == doctest::Approx(l * l));
}

TEST_CASE("pair weights") {
    const auto h = first_r_primes_tuple(3);
    const double R = 200;
    const PairWeights pw(h, R, 1000);
    WeightOptions o;
    o.series_cutoff = 2000;
    const WeightSystem base(FormSystem::from_tuple(h), R, o);
    for (std::uint64_t p : {211ull, 1009ull}) {
        // Same truncation on both sides, and it includes p.
        const WeightSystem direct(FormSystem::shifted(h, p), R, o);
        const double rho = pw.ratio(p);
        CHECK(direct.support() == base.support());
        CHECK(direct.support().size() > 10);
        for (std::size_t s = 0; s < direct.support().size(); ++s) {
            const double want = direct.lambda()[s];
            CHECK(std::abs(want - rho * base.lambda()[s]) <= 1e-9 * std::max(1.0, std::abs(want)));
        }
        for (std::int64_t n = -1010; n <= 1010; ++n) {
            const double w = pw(p, n);
            CHECK(w >= 0);
            if (std::llabs(n) > 1000) CHECK(w == 0);
        }
    }
    CHECK_THROWS_AS(pw.ratio(199), std::invalid_argument);
}

TEST_CASE("shifted systems have omega(s) = #{h_i mod s}") {
    const auto h = first_r_primes_tuple(3);
    for (std::uint64_t p : {50021ull, 99991ull})
        for (std::uint64_t s : primes_up_to(1000)) {
            std::set<std::int64_t> cls;
            for (auto v : h.offsets) cls.insert(v % static_cast<std::int64_t>(s));
            CHECK(omega_scan(FormSystem::shifted(h, p), s).omega() == cls.size());
        }
}

TEST_CASE("simplex integrals") {
    auto F1 = [](std::span<const double> t) { return t[0] <= 1 ? (1 - t[0]) * (1 - t[0]) : 0.0; };
    const auto e = integrals_IJ(F1, 1, 200000, 3);
    CHECK(std::abs(e.I - 0.2) <= 3 * e.se_I);
    CHECK(std::abs(e.J - 1.0 / 9) <= 3 * e.se_J);
    const auto z = integrals_IJ([](std::span<const double>) { return 0.0; }, 3, 1000, 3);
    CHECK(z.I == 0);
    CHECK(z.J == 0);
    // Thread count does not change the estimate.
    const auto a = integrals_IJ(default_F, 2, 300000, 9, 1), b = integrals_IJ(default_F, 2, 300000, 9, 4);
    CHECK(a.I == b.I);
    CHECK(a.J == b.J);
    // k = 2, F = (1 - t1 - t2)^3: I = int (1-s)^6 over the triangle = 1/56.
    CHECK(std::abs(a.I - 1.0 / 56) <= 4 * a.se_I);
}

TEST_CASE("tau and u") {
    const WeightSystem ws(twins(), 50);
    IntegralEstimate ij;
    ij.I = 0.1;
    ij.J = 0.02;
    const auto t = tau_u(ws, 1e6, ij);
    const double lr = std::log(50.0), lx = std::log(1e6);
    CHECK(t.tau == doctest::Approx(2 * ws.series().value * lr * lr * lx * lx * 0.1));
    CHECK(t.u == doctest::Approx(lr / lx * 2 * 0.02 / 0.2));
    ij.J = 0.04;
    CHECK(tau_u(ws, 1e6, ij).u == doctest::Approx(2 * t.u));
}

TEST_CASE("table json") {
    const WeightSystem ws(twins(), 12);
    const auto j = ws.table_json();
    CHECK(j.find("\"k\":2") != std::string::npos);
    CHECK(j.find("\"forms\":[[1,0],[1,2]]") != std::string::npos);
}
