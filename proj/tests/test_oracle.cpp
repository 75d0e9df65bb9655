#include "doctest.h"

#include <cmath>

#include "gapcover/oracle.hpp"
#include "gapcover/primes.hpp"
#include "gapcover/rng.hpp"

using namespace gapcover;

TEST_CASE("known values of Y") {
    const std::uint64_t want[][2] = {{2, 1}, {3, 3}, {5, 5}, {7, 9}, {11, 13}, {13, 21}, {17, 25}};
    for (const auto& w : want) {
        const auto r = exact_Y(w[0]);
        CHECK(r.Y == w[1]);
        CHECK(covered_prefix_length(r.witness) >= r.Y);
        CHECK(r.witness.size() == primes_up_to(w[0]).size());
    }
    CHECK_THROWS_AS(exact_Y(19), std::invalid_argument);
}

TEST_CASE("jacobsthal function") {
    CHECK(jacobsthal(1) == 1);
    CHECK(jacobsthal(2) == 2);
    CHECK(jacobsthal(6) == 4);
    CHECK(jacobsthal(30) == 6);
    CHECK(jacobsthal(210) == 10);
    CHECK(jacobsthal(2310) == 14);
    CHECK(jacobsthal(30030) == 22);
    CHECK(jacobsthal(510510) == 26);
    CHECK(jacobsthal(9699690) == 34);
    CHECK(jacobsthal(12) == jacobsthal(6));
    CHECK_THROWS_AS(jacobsthal(30030, 1000), std::invalid_argument);
}

TEST_CASE("smooth counts") {
    // 10-smooth numbers <= 100: 1,2,3,4,5,6,7,8,9,10,12,14,15,16,18,20,21,24,25,27,28,30,32,35,36,40,42,45,48,49,50,54,56,60,63,64,70,72,75,80,81,84,90,96,98,100
    CHECK(smooth_count(100, 10) == 46);
    CHECK(smooth_count(100, 100) == 100);
    CHECK(smooth_count(1, 1) == 1);
    CHECK(smooth_count(10, 2) == 4);    // 1, 2, 4, 8
    CHECK(smooth_count(100, 5) == 34);
    for (std::uint64_t z : {2u, 3u, 7u, 31u, 97u}) {
        std::uint64_t naive = 0;
        for (std::uint64_t n = 1; n <= 3000; ++n) {
            std::uint64_t m = n;
            for (std::uint64_t p = 2; p <= z; ++p)
                while (m % p == 0) m /= p;
            naive += m == 1;
        }
        CHECK(smooth_count(3000, z) == naive);
    }
}

TEST_CASE("chebyshev check on independent draws") {
    RandomStream rng(7, StreamTag::Test, 0);
    std::vector<std::vector<double>> groups(2000, std::vector<double>(4));
    for (auto& g : groups)
        for (auto& f : g) f = rng.uniform() < 0.5 ? 1.0 : 0.0;
    const auto v = chebyshev_check(groups, 0.5, 0.05, 0.4);
    CHECK(v.first_moment == doctest::Approx(0.5).epsilon(0.05));
    CHECK(v.second_moment == doctest::Approx(0.25).epsilon(0.08));
    CHECK(v.pass);
    CHECK_THROWS_AS(chebyshev_check({{1.0}}, 0.5, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("gap from the x = 3 witness") {
    const auto o = exact_Y(3);
    REQUIRE(o.Y == 3);
    const auto g = assemble_gap(o.witness, 3);
    CHECK(g.run_length == 3);
    CHECK(g.m > 3);
    CHECK(g.m <= 6 + 3);
    CHECK(certify_assembly(o.witness, g));
    const auto m = g.m.get_ui();
    for (std::uint64_t t = 1; t <= 3; ++t) CHECK_FALSE(is_prime_u64(m + t));
}
