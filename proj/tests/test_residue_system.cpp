#include "doctest.h"

#include "gapcover/primes.hpp"
#include "gapcover/residue_system.hpp"

using namespace gapcover;

TEST_CASE("residue system validation") {
    ResidueSystem s;
    s.add(2, 1);
    CHECK_THROWS_AS(s.add(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(s.add(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(s.add(5, 5), std::invalid_argument);
    s.set(2, 0);
    CHECK(s.residue(2) == 0u);
    CHECK(s.covers(-4));
    CHECK_FALSE(s.covers(-3));
}

TEST_CASE("sift agrees with per-entry coverage") {
    ResidueSystem s;
    s.add(2, 1);
    s.add(3, 0);
    s.add(5, 2);
    s.add(7, 6);
    const auto iv = sift(s, -50, 200);
    for (std::int64_t n = -50; n <= 200; ++n) CHECK(iv.survives(n) == !s.covers(n));
    std::size_t c = 0;
    for (std::int64_t n = -50; n <= 200; ++n) c += !s.covers(n);
    CHECK(iv.count() == c);
    CHECK(iv.survivors().size() == c);
}

TEST_CASE("covered prefix and first uncovered") {
    // 2:0, 3:0 leaves 1 uncovered.
    ResidueSystem s;
    s.add(2, 0);
    s.add(3, 0);
    CHECK(covered_prefix_length(s) == 0);
    // 2:1, 3:2 covers 1 and 2, leaves 3? 3 mod 2 = 1: covered; 4 mod 2 = 0, 4 mod 3 = 1 -> uncovered.
    ResidueSystem t;
    t.add(2, 1);
    t.add(3, 2);
    CHECK(covered_prefix_length(t) == 3);
    CHECK(first_uncovered(t, 1, 100) == 4);
    CHECK(first_uncovered(t, 1, 3) == std::nullopt);
}

TEST_CASE("crt") {
    const auto c = crt_combine({{2, 3}, {3, 5}, {2, 7}});
    CHECK(c.modulus == 105);
    CHECK(c.residue == 23);
    CHECK_THROWS_AS(crt_combine({{1, 4}, {1, 6}}), std::invalid_argument);
}

TEST_CASE("gap assembly on a small system") {
    ResidueSystem s;
    s.add(2, 1);
    s.add(3, 2);
    s.add(5, 4);
    // a_p = -1 for each p: m = 1 (mod 30), run 1..? m+t composite for t = 1.
    const auto g = assemble_gap(s, 5);
    CHECK(g.m > 5);
    CHECK(certify_assembly(s, g));
    for (std::uint64_t t = 1; t <= g.run_length; ++t) {
        mpz_class v = g.m + static_cast<unsigned long>(t);
        CHECK(mpz_probab_prime_p(v.get_mpz_t(), 30) == 0);
    }
    ResidueSystem big;
    big.add(7, 0);
    CHECK_THROWS_AS(assemble_gap(big, 5), std::invalid_argument);
}

TEST_CASE("json round trip and errors") {
    ResidueSystem s;
    s.add(2, 1);
    s.add(13, 7);
    const auto text = to_json(s, 13);
    CHECK(text == R"({"x":13,"classes":[[2,1],[13,7]]})");
    const auto back = residue_system_from_json(text);
    CHECK(back.x == 13);
    CHECK(back.system == s);
    CHECK_THROWS_AS(residue_system_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(residue_system_from_json(R"({"classes":[[2,1],[2,0]]})"), std::invalid_argument);
    CHECK_THROWS_AS(residue_system_from_json(R"({"classes":[[5,9]]})"), std::invalid_argument);
    CHECK_THROWS_AS(residue_system_from_json(R"({"classes":[[9,1]]})"), std::invalid_argument);
}
