// oracle.hpp
// Ground-truth engines used to validate everything else: exact Y(x) by
// exhaustive search, Jacobsthal's function by direct scan, exact smooth
// counts, and an empirical second-moment (Chebyshev) check.

#pragma once

#include <cstdint>
#include <vector>

#include "gapcover/residue_system.hpp"

namespace gapcover {

struct OracleResult {
    std::uint64_t x = 0;
    std::uint64_t Y = 0;
    ResidueSystem witness;        // one class for every prime <= x
    std::uint64_t nodes_explored = 0;
};

struct ExactYOptions {
    std::uint64_t cutoff = 17;    // largest x accepted
};

// Largest y such that one class per prime p <= x covers [1, y].
// Throws std::invalid_argument above the cutoff.
OracleResult exact_Y(std::uint64_t x, const ExactYOptions& opts = {});

// Can one class per prime in `primes` cover [1, y]? y <= 63.
bool cover_feasible(const std::vector<std::uint64_t>& primes, std::uint64_t y, ResidueSystem* witness = nullptr,
                    std::uint64_t* nodes = nullptr);

inline constexpr std::uint64_t kJacobsthalMaxPeriod = 100'000'000'000ULL;

// Maximal gap between consecutive integers coprime to n. Scans one period of
// rad(n); throws std::invalid_argument when rad(n) exceeds max_period.
std::uint64_t jacobsthal(std::uint64_t n, std::uint64_t max_period = kJacobsthalMaxPeriod);

inline constexpr std::uint64_t kSmoothCountMax = 100'000'000ULL;

// #{1 <= n <= y : every prime factor of n is <= z}. y <= 1e8.
std::uint64_t smooth_count(std::uint64_t y, std::uint64_t z);

// Per-n smoothness flags for n in [lo, hi] (lo >= 1).
std::vector<bool> smooth_flags(std::uint64_t lo, std::uint64_t hi, std::uint64_t z);

// Each group holds F(X_i, Y_ij) for one outer draw X_i and several conditionally
// independent inner draws Y_ij (at least two per group).
struct ChebyshevVerdict {
    std::size_t groups = 0;
    double first_moment = 0;        // E F(X, Y)
    double second_moment = 0;       // E F(X, Y) F(X, Y')
    double first_moment_eps = 0;    // |E F - alpha| / alpha
    double second_moment_eps = 0;   // |E FF' - alpha^2| / alpha^2
    double deviation_frequency = 0; // share of groups with |Z_i - alpha| > theta
    double predicted_bound = 0;     // constant * epsilon * alpha^2 / theta^2
    bool moments_ok = false;        // both eps values <= epsilon
    bool pass = false;              // deviation_frequency <= predicted_bound
    std::vector<double> conditional_means;  // Z_i
};

ChebyshevVerdict chebyshev_check(const std::vector<std::vector<double>>& groups, double alpha, double epsilon,
                                 double theta, double constant = 3.0);

}  // namespace gapcover
