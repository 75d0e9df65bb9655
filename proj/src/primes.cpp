#include "gapcover/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace gapcover {

bool PrimeTable::contains(std::uint64_t n) const {
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_upto(std::uint64_t n) const {
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

std::span<const std::uint64_t> PrimeTable::range(std::uint64_t lo, std::uint64_t hi) const {
    auto first = std::upper_bound(primes_.begin(), primes_.end(), lo);
    auto last = std::upper_bound(first, primes_.end(), hi);
    if (first >= last) return {};
    return {&*first, static_cast<std::size_t>(last - first)};
}

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Simple sieve for the base primes up to sqrt(x).
std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace

PrimeTable primes_up_to(std::uint64_t x, std::size_t segment_size) {
    std::vector<std::uint64_t> out;
    if (x < 2) return PrimeTable(x, std::move(out));
    if (segment_size == 0) segment_size = kDefaultSegmentSize;
    if (x >= 10) out.reserve(static_cast<std::size_t>(1.15 * static_cast<double>(x) / std::log(static_cast<double>(x))));
    out.push_back(2);

    const std::uint64_t root = isqrt(x);
    const auto base = small_primes(root);

    // Segment entries represent odd numbers lo + 2*i.
    std::vector<char> seg(segment_size);
    std::vector<std::uint64_t> next(base.size(), 0);
    for (std::size_t k = 0; k < base.size(); ++k) {
        const std::uint64_t p = base[k];
        next[k] = p * p;
    }
    for (std::uint64_t lo = 3; lo <= x; lo += 2 * segment_size) {
        const std::uint64_t hi = std::min<std::uint64_t>(x, lo + 2 * (segment_size - 1));
        const std::size_t len = static_cast<std::size_t>((hi - lo) / 2 + 1);
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(len), 1);
        for (std::size_t k = 1; k < base.size(); ++k) {  // skip 2
            const std::uint64_t p = base[k];
            std::uint64_t m = next[k];
            if (m > hi) continue;
            for (; m <= hi; m += 2 * p) seg[(m - lo) / 2] = 0;
            next[k] = m;
        }
        for (std::size_t i = 0; i < len; ++i)
            if (seg[i]) out.push_back(lo + 2 * i);
    }
    return PrimeTable(x, std::move(out));
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic below 3.3e24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t y = powmod(a, d, n);
        if (y == 1 || y == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            y = mulmod(y, y, n);
            if (y == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

// Brent's variant of Pollard rho; n odd composite.
std::uint64_t rho_factor(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void collect_factors(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    const std::uint64_t d = rho_factor(n);
    collect_factors(d, out);
    collect_factors(n / d, out);
}

}  // namespace

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    collect_factors(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

mpz_class primorial(std::uint64_t x) {
    mpz_class out = 1;
    for (std::uint64_t p : primes_up_to(x)) out *= static_cast<unsigned long>(p);
    return out;
}

PrimeGap max_gap_below(std::uint64_t X) {
    const PrimeTable table = primes_up_to(X);
    if (table.size() < 2)
        throw std::invalid_argument("max_gap_below: need at least two primes <= " + std::to_string(X));
    PrimeGap best{table[0], table[1]};
    for (std::size_t i = 1; i + 1 < table.size(); ++i) {
        if (table[i + 1] - table[i] > best.length()) best = {table[i], table[i + 1]};
    }
    return best;
}

bool is_admissible(const AdmissibleTuple& t) {
    const auto r = t.offsets.size();
    if (r == 0) return true;
    for (std::uint64_t p : primes_up_to(r)) {
        std::set<std::int64_t> classes;
        const auto m = static_cast<std::int64_t>(p);
        for (std::int64_t h : t.offsets) classes.insert(((h % m) + m) % m);
        if (classes.size() >= p) return false;
    }
    return true;
}

AdmissibleTuple first_r_primes_tuple(int r) {
    if (r < 1) throw std::invalid_argument("first_r_primes_tuple: r must be >= 1");
    // p_{pi(r)+r} is well below 2r^2 + 100 for every r >= 1.
    const auto limit = static_cast<std::uint64_t>(2 * static_cast<std::uint64_t>(r) * (r + 1) + 100);
    const PrimeTable table = primes_up_to(limit);
    AdmissibleTuple t;
    const std::size_t start = table.count_upto(static_cast<std::uint64_t>(r));
    for (std::size_t i = start; i < start + static_cast<std::size_t>(r); ++i)
        t.offsets.push_back(static_cast<std::int64_t>(table[i]));
    return t;
}

AdmissibleTuple odd_squares_tuple(int r) {
    if (r < 1) throw std::invalid_argument("odd_squares_tuple: r must be >= 1");
    AdmissibleTuple t;
    for (std::int64_t i = 1; i <= r; ++i) t.offsets.push_back((2 * i - 1) * (2 * i - 1));
    return t;
}

AdmissibleTuple admissible_tuple(int r, TupleKind kind) {
    switch (kind) {
        case TupleKind::FirstPrimes: return first_r_primes_tuple(r);
        case TupleKind::OddSquares: return odd_squares_tuple(r);
        case TupleKind::Auto: break;
    }
    auto t = first_r_primes_tuple(r);
    if (t.offsets.back() <= 2 * static_cast<std::int64_t>(r) * r) return t;
    return odd_squares_tuple(r);
}

}  // namespace gapcover
