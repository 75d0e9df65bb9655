// primes.hpp
// Prime generation, primorials, maximal prime gaps and admissible tuples.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace gapcover {

// All primes <= limit, strictly increasing.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    // Membership by binary search; n must be <= limit().
    bool contains(std::uint64_t n) const;
    // pi(n) for n <= limit().
    std::size_t count_upto(std::uint64_t n) const;
    // Primes in the half-open range (lo, hi], hi <= limit().
    std::span<const std::uint64_t> range(std::uint64_t lo, std::uint64_t hi) const;

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> primes_;
};

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;

// Segmented Eratosthenes over odd numbers.
PrimeTable primes_up_to(std::uint64_t x, std::size_t segment_size = kDefaultSegmentSize);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Distinct prime factors, ascending (trial division, then Pollard rho).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Product of the primes <= x (1 for x < 2).
mpz_class primorial(std::uint64_t x);

struct PrimeGap {
    std::uint64_t lower = 0;  // p_n
    std::uint64_t upper = 0;  // p_{n+1}
    std::uint64_t length() const { return upper - lower; }
    bool operator==(const PrimeGap&) const = default;
};

// Largest p_{n+1} - p_n with p_{n+1} <= X; ties go to the smallest p_n.
// Throws std::invalid_argument when fewer than two primes are <= X.
PrimeGap max_gap_below(std::uint64_t X);

// Offsets h_1 < ... < h_r.
struct AdmissibleTuple {
    std::vector<std::int64_t> offsets;
    std::size_t size() const { return offsets.size(); }
    bool operator==(const AdmissibleTuple&) const = default;
};

// No prime p <= r has every residue class occupied by the offsets.
bool is_admissible(const AdmissibleTuple& t);

// The first r primes larger than r.
AdmissibleTuple first_r_primes_tuple(int r);

// (1^2, 3^2, ..., (2r-1)^2).
AdmissibleTuple odd_squares_tuple(int r);

enum class TupleKind { FirstPrimes, OddSquares, Auto };

// Auto returns the first-primes tuple when its largest offset is <= 2r^2 and
// the odd-squares tuple otherwise.
AdmissibleTuple admissible_tuple(int r, TupleKind kind = TupleKind::Auto);

}  // namespace gapcover
