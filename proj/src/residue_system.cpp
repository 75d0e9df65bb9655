#include "gapcover/residue_system.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "json.hpp"

#include "gapcover/primes.hpp"

namespace gapcover {

void ResidueSystem::add(std::uint64_t p, std::uint64_t a) {
    if (!is_prime_u64(p)) throw std::invalid_argument("residue system: modulus " + std::to_string(p) + " is not prime");
    if (a >= p) throw std::invalid_argument("residue system: residue " + std::to_string(a) + " out of range mod " + std::to_string(p));
    if (!entries_.emplace(p, a).second) throw std::invalid_argument("residue system: duplicate modulus " + std::to_string(p));
}

void ResidueSystem::set(std::uint64_t p, std::uint64_t a) {
    entries_.erase(p);
    add(p, a);
}

void ResidueSystem::merge(const ResidueSystem& other) {
    for (const auto& [p, a] : other.entries_) add(p, a);
}

std::optional<std::uint64_t> ResidueSystem::residue(std::uint64_t p) const {
    auto it = entries_.find(p);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

bool ResidueSystem::covers(std::int64_t n) const {
    for (const auto& [p, a] : entries_)
        if (mod_floor(n, p) == a) return true;
    return false;
}

SiftedInterval::SiftedInterval(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {
    if (hi < lo) throw std::invalid_argument("SiftedInterval: hi < lo");
    const std::size_t len = length();
    words_.assign((len + 63) / 64, ~std::uint64_t{0});
    if (len % 64) words_.back() = (std::uint64_t{1} << (len % 64)) - 1;
}

bool SiftedInterval::survives(std::int64_t n) const {
    if (n < lo_ || n > hi_) return false;
    const auto i = static_cast<std::size_t>(n - lo_);
    return (words_[i >> 6] >> (i & 63)) & 1;
}

void SiftedInterval::strike(std::int64_t n) {
    if (n < lo_ || n > hi_) return;
    const auto i = static_cast<std::size_t>(n - lo_);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

void SiftedInterval::strike_class(std::uint64_t p, std::uint64_t a) {
    if (hi_ < lo_) return;
    // First index i >= 0 with lo + i = a (mod p).
    const std::uint64_t start = (a + p - mod_floor(lo_, p)) % p;
    const std::size_t len = length();
    for (std::size_t i = start; i < len; i += p) words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

std::size_t SiftedInterval::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::vector<std::int64_t> SiftedInterval::survivors() const {
    std::vector<std::int64_t> out;
    out.reserve(count());
    for (std::size_t k = 0; k < words_.size(); ++k) {
        std::uint64_t w = words_[k];
        while (w) {
            const int b = std::countr_zero(w);
            out.push_back(lo_ + static_cast<std::int64_t>(k * 64 + static_cast<std::size_t>(b)));
            w &= w - 1;
        }
    }
    return out;
}

std::optional<std::int64_t> SiftedInterval::first_survivor() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k]) return lo_ + static_cast<std::int64_t>(k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k])));
    return std::nullopt;
}

bool SiftedInterval::subset_of(const SiftedInterval& other) const {
    if (lo_ != other.lo_ || hi_ != other.hi_) throw std::invalid_argument("SiftedInterval::subset_of: bounds differ");
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k] & ~other.words_[k]) return false;
    return true;
}

SiftedInterval sift(const ResidueSystem& sys, std::int64_t lo, std::int64_t hi) {
    SiftedInterval out(lo, hi);
    for (const auto& [p, a] : sys.entries()) out.strike_class(p, a);
    return out;
}

std::uint64_t covered_prefix_length(const ResidueSystem& sys) {
    // The system leaves a positive density of survivors, so this terminates.
    std::int64_t lo = 1;
    std::int64_t block = 1024;
    for (;;) {
        const SiftedInterval part = sift(sys, lo, lo + block - 1);
        if (auto s = part.first_survivor()) return static_cast<std::uint64_t>(*s - 1);
        lo += block;
        block = std::min<std::int64_t>(block * 2, std::int64_t{1} << 24);
    }
}

std::optional<std::int64_t> first_uncovered(const ResidueSystem& sys, std::int64_t lo, std::int64_t hi) {
    for (std::int64_t n = lo; n <= hi; ++n)
        if (!sys.covers(n)) return n;
    return std::nullopt;
}

Congruence crt_combine(const std::vector<Congruence>& congruences) {
    Congruence acc{0, 1};
    for (const auto& c : congruences) {
        if (c.modulus <= 0) throw std::invalid_argument("crt_combine: modulus must be positive");
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.modulus.get_mpz_t(), c.modulus.get_mpz_t());
        if (g != 1)
            throw std::invalid_argument("crt_combine: moduli " + acc.modulus.get_str() + " and " + c.modulus.get_str() +
                                        " are not coprime");
        // x = acc.residue + acc.modulus * k with acc.modulus * k = c.residue - acc.residue (mod c.modulus)
        mpz_class diff = c.residue - acc.residue;
        mpz_class k = diff * s;
        mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), c.modulus.get_mpz_t());
        acc.residue += acc.modulus * k;
        acc.modulus *= c.modulus;
        mpz_fdiv_r(acc.residue.get_mpz_t(), acc.residue.get_mpz_t(), acc.modulus.get_mpz_t());
    }
    return acc;
}

GapAssembly assemble_gap(const ResidueSystem& sys, std::uint64_t x) {
    std::vector<Congruence> cs;
    for (const auto& [p, a] : sys.entries()) {
        if (p > x) throw std::invalid_argument("assemble_gap: modulus " + std::to_string(p) + " exceeds x = " + std::to_string(x));
        mpz_class r = -mpz_class(static_cast<unsigned long>(a));
        mpz_class mod(static_cast<unsigned long>(p));
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
        cs.push_back({r, mod});
    }
    const Congruence c = crt_combine(cs);

    GapAssembly g;
    // Smallest m > x in the class.
    mpz_class xz(static_cast<unsigned long>(x));
    mpz_class k = xz - c.residue;
    mpz_fdiv_q(k.get_mpz_t(), k.get_mpz_t(), c.modulus.get_mpz_t());
    g.m = c.residue + (k + 1) * c.modulus;

    g.run_length = covered_prefix_length(sys);
    g.witness.reserve(g.run_length);
    for (std::uint64_t t = 1; t <= g.run_length; ++t) {
        std::uint64_t w = 0;
        for (const auto& [p, a] : sys.entries()) {
            if (t % p == a) {
                w = p;
                break;
            }
        }
        mpz_class value = g.m + static_cast<unsigned long>(t);
        if (w == 0 || !mpz_divisible_ui_p(value.get_mpz_t(), w) || value <= static_cast<unsigned long>(w))
            throw std::runtime_error("assemble_gap: no witness divisor for t = " + std::to_string(t));
        g.witness.push_back(w);
    }
    return g;
}

bool certify_assembly(const ResidueSystem& sys, const GapAssembly& g) {
    for (const auto& [p, a] : sys.entries()) {
        mpz_class r = g.m + static_cast<unsigned long>(a);
        if (!mpz_divisible_ui_p(r.get_mpz_t(), p)) return false;
    }
    if (g.witness.size() != g.run_length) return false;
    for (std::uint64_t t = 1; t <= g.run_length; ++t) {
        const std::uint64_t p = g.witness[t - 1];
        mpz_class value = g.m + static_cast<unsigned long>(t);
        if (p < 2 || !mpz_divisible_ui_p(value.get_mpz_t(), p) || value <= static_cast<unsigned long>(p)) return false;
    }
    return true;
}

std::string to_json(const ResidueSystem& sys, std::uint64_t x) {
    nlohmann::ordered_json j;
    j["x"] = x;
    auto classes = nlohmann::ordered_json::array();
    for (const auto& [p, a] : sys.entries()) classes.push_back({p, a});
    j["classes"] = std::move(classes);
    return j.dump();
}

ResidueFile residue_system_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("residue system file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("classes") || !j["classes"].is_array())
        throw std::invalid_argument("residue system file: missing \"classes\" array");
    ResidueFile out;
    if (j.contains("x")) {
        if (!j["x"].is_number_unsigned()) throw std::invalid_argument("residue system file: \"x\" must be a nonnegative integer");
        out.x = j["x"].get<std::uint64_t>();
    }
    for (const auto& entry : j["classes"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned() || !entry[1].is_number_unsigned())
            throw std::invalid_argument("residue system file: each class must be [p, a_p] with nonnegative integers");
        out.system.add(entry[0].get<std::uint64_t>(), entry[1].get<std::uint64_t>());
    }
    return out;
}

}  // namespace gapcover
