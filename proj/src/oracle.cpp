#include "gapcover/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gapcover/primes.hpp"

namespace gapcover {

namespace {

struct CoverSearch {
    std::vector<std::uint64_t> primes;   // descending
    std::uint64_t y = 0;
    std::uint64_t full = 0;
    // masks[k][a]: bits t-1 for t in [1, y] with t = a (mod primes[k])
    std::vector<std::vector<std::uint64_t>> masks;
    std::vector<std::uint64_t> chosen;   // residue per prime, or p when unused
    std::uint64_t nodes = 0;

    bool run(std::uint64_t covered, std::uint32_t used, int unused_count) {
        ++nodes;
        if (covered == full) return true;
        if (unused_count == 0) return false;
        const std::uint64_t open = full & ~covered;
        // Each unused prime covers at most ceil(y/p) new positions.
        std::uint64_t capacity = 0;
        for (std::size_t k = 0; k < primes.size(); ++k)
            if (!(used >> k & 1)) capacity += (y + primes[k] - 1) / primes[k];
        if (capacity < static_cast<std::uint64_t>(std::popcount(open))) return false;

        const std::uint64_t t = static_cast<std::uint64_t>(std::countr_zero(open)) + 1;
        for (std::size_t k = 0; k < primes.size(); ++k) {
            if (used >> k & 1) continue;
            const std::uint64_t a = t % primes[k];
            chosen[k] = a;
            if (run(covered | masks[k][a], used | (1u << k), unused_count - 1)) return true;
            chosen[k] = primes[k];
        }
        return false;
    }
};

}  // namespace

bool cover_feasible(const std::vector<std::uint64_t>& primes_in, std::uint64_t y, ResidueSystem* witness,
                    std::uint64_t* nodes) {
    if (y > 63) throw std::invalid_argument("cover_feasible: y must be <= 63");
    if (primes_in.size() > 31) throw std::invalid_argument("cover_feasible: too many primes");
    CoverSearch s;
    s.primes = primes_in;
    // Larger moduli are the scarcer resource, so branch on them first.
    std::sort(s.primes.rbegin(), s.primes.rend());
    s.y = y;
    s.full = y == 0 ? 0 : (y == 64 ? ~0ULL : ((std::uint64_t{1} << y) - 1));
    s.masks.resize(s.primes.size());
    for (std::size_t k = 0; k < s.primes.size(); ++k) {
        const std::uint64_t p = s.primes[k];
        s.masks[k].assign(p, 0);
        for (std::uint64_t t = 1; t <= y; ++t) s.masks[k][t % p] |= std::uint64_t{1} << (t - 1);
    }
    s.chosen.assign(s.primes.size(), 0);
    for (std::size_t k = 0; k < s.primes.size(); ++k) s.chosen[k] = s.primes[k];
    const bool ok = s.run(0, 0, static_cast<int>(s.primes.size()));
    if (nodes) *nodes += s.nodes;
    if (ok && witness) {
        ResidueSystem w;
        for (std::size_t k = 0; k < s.primes.size(); ++k) {
            const std::uint64_t p = s.primes[k];
            // Unused primes get the class of 0; it never hurts coverage.
            w.add(p, s.chosen[k] == p ? 0 : s.chosen[k]);
        }
        *witness = std::move(w);
    }
    return ok;
}

OracleResult exact_Y(std::uint64_t x, const ExactYOptions& opts) {
    if (x > opts.cutoff)
        throw std::invalid_argument("exact_Y: x = " + std::to_string(x) + " is above the search cutoff " +
                                    std::to_string(opts.cutoff) + "; use jacobsthal(primorial(x)) - 1 instead");
    const PrimeTable table = primes_up_to(x);
    const std::vector<std::uint64_t> primes(table.begin(), table.end());

    OracleResult out;
    out.x = x;
    ResidueSystem best;
    for (std::uint64_t p : primes) best.add(p, 0);

    // Grow an infeasible upper bound, then bisect.
    std::uint64_t lo = 0, hi = 1;
    for (;;) {
        ResidueSystem w;
        if (hi > 63) throw std::invalid_argument("exact_Y: search range exceeds 63 positions");
        if (!cover_feasible(primes, hi, &w, &out.nodes_explored)) break;
        lo = hi;
        best = std::move(w);
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        ResidueSystem w;
        if (cover_feasible(primes, mid, &w, &out.nodes_explored)) {
            lo = mid;
            best = std::move(w);
        } else {
            hi = mid;
        }
    }
    out.Y = lo;
    out.witness = std::move(best);
    return out;
}

namespace {

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

std::uint64_t jacobsthal(std::uint64_t n, std::uint64_t max_period) {
    if (n == 0) throw std::invalid_argument("jacobsthal: n must be >= 1");
    const auto factors = distinct_prime_factors(n);
    std::uint64_t rad = 1;
    for (auto p : factors) rad *= p;
    if (rad > max_period)
        throw std::invalid_argument("jacobsthal: period " + std::to_string(rad) + " exceeds scan limit " +
                                    std::to_string(max_period));
    if (rad == 1) return 1;

    // Scan [1, rad + 1]; both ends are coprime to rad.
    constexpr std::uint64_t kSegment = std::uint64_t{1} << 20;
    std::vector<char> coprime(kSegment);
    std::uint64_t last = 0, best = 0;
    for (std::uint64_t lo = 1; lo <= rad + 1; lo += kSegment) {
        const std::uint64_t hi = std::min(rad + 1, lo + kSegment - 1);
        const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
        std::fill(coprime.begin(), coprime.begin() + static_cast<std::ptrdiff_t>(len), 1);
        for (auto p : factors) {
            std::uint64_t first = (lo + p - 1) / p * p;
            for (std::uint64_t m = first; m <= hi; m += p) coprime[m - lo] = 0;
        }
        for (std::size_t i = 0; i < len; ++i) {
            if (!coprime[i]) continue;
            const std::uint64_t v = lo + i;
            if (last) best = std::max(best, v - last);
            last = v;
        }
    }
    return best;
}

std::vector<bool> smooth_flags(std::uint64_t lo, std::uint64_t hi, std::uint64_t z) {
    if (lo == 0) throw std::invalid_argument("smooth_flags: lo must be >= 1");
    std::vector<bool> out;
    if (hi < lo) return out;
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    // Remove every prime factor <= min(z, sqrt(hi)); the cofactor is then 1 or
    // has all prime factors above that bound. When z >= sqrt(hi) the cofactor
    // is 1 or a single prime; otherwise it is 1 or exceeds z.
    std::vector<std::uint64_t> cofactor(len);
    for (std::size_t i = 0; i < len; ++i) cofactor[i] = lo + i;
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    for (std::uint64_t p : primes_up_to(std::min(z, root))) {
        for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
            auto& c = cofactor[m - lo];
            do c /= p; while (c % p == 0);
        }
    }
    out.resize(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = cofactor[i] == 1 || cofactor[i] <= z;
    return out;
}

std::uint64_t smooth_count(std::uint64_t y, std::uint64_t z) {
    if (y > kSmoothCountMax) throw std::invalid_argument("smooth_count: y exceeds 1e8");
    if (y == 0) return 0;
    if (z >= y) return y;
    std::uint64_t count = 0;
    constexpr std::uint64_t kSegment = std::uint64_t{1} << 20;
    for (std::uint64_t lo = 1; lo <= y; lo += kSegment) {
        const std::uint64_t hi = std::min(y, lo + kSegment - 1);
        const auto flags = smooth_flags(lo, hi, z);
        count += static_cast<std::uint64_t>(std::count(flags.begin(), flags.end(), true));
    }
    return count;
}

ChebyshevVerdict chebyshev_check(const std::vector<std::vector<double>>& groups, double alpha, double epsilon,
                                 double theta, double constant) {
    ChebyshevVerdict v;
    v.groups = groups.size();
    if (groups.empty()) return v;
    double s1 = 0, s2 = 0;
    std::size_t n1 = 0, deviations = 0;
    v.conditional_means.reserve(groups.size());
    for (const auto& g : groups) {
        if (g.size() < 2) throw std::invalid_argument("chebyshev_check: each group needs at least two inner draws");
        double sum = 0, sumsq = 0;
        for (double f : g) {
            sum += f;
            sumsq += f * f;
        }
        s1 += sum;
        n1 += g.size();
        const double m = static_cast<double>(g.size());
        // Mean of F(X,Y_j) F(X,Y_k) over ordered pairs j != k.
        s2 += (sum * sum - sumsq) / (m * (m - 1));
        const double z = sum / m;
        v.conditional_means.push_back(z);
        if (std::abs(z - alpha) > theta) ++deviations;
    }
    v.first_moment = s1 / static_cast<double>(n1);
    v.second_moment = s2 / static_cast<double>(groups.size());
    v.first_moment_eps = alpha != 0 ? std::abs(v.first_moment - alpha) / std::abs(alpha) : std::abs(v.first_moment);
    v.second_moment_eps =
        alpha != 0 ? std::abs(v.second_moment - alpha * alpha) / (alpha * alpha) : std::abs(v.second_moment);
    v.deviation_frequency = static_cast<double>(deviations) / static_cast<double>(groups.size());
    v.predicted_bound = constant * epsilon * alpha * alpha / (theta * theta);
    v.moments_ok = v.first_moment_eps <= epsilon && v.second_moment_eps <= epsilon;
    v.pass = v.deviation_frequency <= v.predicted_bound;
    return v;
}

}  // namespace gapcover
