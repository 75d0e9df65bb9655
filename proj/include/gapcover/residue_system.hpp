// residue_system.hpp
// Covering systems of congruences with prime moduli: sifting, coverage,
// CRT assembly of runs of composites, and the JSON file format
//
//   {"x": <integer>, "classes": [[p, a_p], ...]}   (sorted by p)

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gapcover {

// One residue class a_p mod p per prime p.
class ResidueSystem {
public:
    using Map = std::map<std::uint64_t, std::uint64_t>;

    ResidueSystem() = default;

    // Throws std::invalid_argument on a non-prime or duplicate modulus, or a
    // residue outside [0, p).
    void add(std::uint64_t p, std::uint64_t a);
    // Like add(), but an existing entry is replaced.
    void set(std::uint64_t p, std::uint64_t a);
    void merge(const ResidueSystem& other);

    bool contains(std::uint64_t p) const { return entries_.count(p) != 0; }
    std::optional<std::uint64_t> residue(std::uint64_t p) const;
    const Map& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::uint64_t max_modulus() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

    // True iff n hits some class of the system; n may be negative.
    bool covers(std::int64_t n) const;

    bool operator==(const ResidueSystem&) const = default;

private:
    Map entries_;
};

// Nonnegative residue of a (possibly negative) integer.
inline std::uint64_t mod_floor(std::int64_t n, std::uint64_t p) {
    const auto m = static_cast<std::int64_t>(p);
    const std::int64_t r = n % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

// Integers of [lo, hi] with one survivor bit each.
class SiftedInterval {
public:
    SiftedInterval() = default;
    SiftedInterval(std::int64_t lo, std::int64_t hi);

    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    std::size_t length() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }

    bool survives(std::int64_t n) const;
    void strike(std::int64_t n);
    // Clear every n in [lo, hi] with n = a (mod p).
    void strike_class(std::uint64_t p, std::uint64_t a);

    std::size_t count() const;
    std::vector<std::int64_t> survivors() const;
    std::optional<std::int64_t> first_survivor() const;
    // Every survivor here is also a survivor of `other` (same bounds).
    bool subset_of(const SiftedInterval& other) const;

private:
    std::int64_t lo_ = 0;
    std::int64_t hi_ = -1;
    std::vector<std::uint64_t> words_;
};

// Survivor bit for n iff n avoids every class of the system.
SiftedInterval sift(const ResidueSystem& sys, std::int64_t lo, std::int64_t hi);

// Largest y with [1, y] fully covered (0 when 1 survives).
std::uint64_t covered_prefix_length(const ResidueSystem& sys);

// First n in [lo, hi] not covered, checked entry by entry without bit vectors.
std::optional<std::int64_t> first_uncovered(const ResidueSystem& sys, std::int64_t lo, std::int64_t hi);

struct Congruence {
    mpz_class residue;
    mpz_class modulus;
};

// Unique class modulo the product of pairwise coprime moduli.
// Throws std::invalid_argument when two moduli share a factor.
Congruence crt_combine(const std::vector<Congruence>& congruences);

struct GapAssembly {
    mpz_class m;                // start: m+1..m+run_length are composite
    std::uint64_t run_length = 0;
    // witness[t-1] is a prime p with p | m+t and m+t > p.
    std::vector<std::uint64_t> witness;
};

// Solve m = -a_p (mod p) for every entry with m in (x, x + M], M the product
// of the moduli, then certify m+t composite for 1 <= t <= covered prefix.
// Throws std::invalid_argument if a modulus exceeds x, and
// std::runtime_error naming t if certification fails.
GapAssembly assemble_gap(const ResidueSystem& sys, std::uint64_t x);

// Independent re-check of a GapAssembly against the system.
bool certify_assembly(const ResidueSystem& sys, const GapAssembly& g);

// File format.
std::string to_json(const ResidueSystem& sys, std::uint64_t x);
struct ResidueFile {
    std::uint64_t x = 0;
    ResidueSystem system;
};
// Throws std::invalid_argument on malformed input, duplicate moduli or
// residues outside [0, p).
ResidueFile residue_system_from_json(const std::string& text);

}  // namespace gapcover
