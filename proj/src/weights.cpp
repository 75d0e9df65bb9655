#include "gapcover/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

#include "gapcover/nibble.hpp"
#include "gapcover/parallel.hpp"
#include "gapcover/rng.hpp"

namespace gapcover {

namespace {

std::uint64_t mod_i128(__int128 v, std::uint64_t p) {
    __int128 r = v % static_cast<__int128>(p);
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid on signed 128-bit values.
    __int128 r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1) {
        const __int128 q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    return mod_i128(s0, p);
}

std::uint64_t abs_u64(__int128 v, const char* what) {
    if (v < 0) v = -v;
    if (v > static_cast<__int128>(~std::uint64_t{0})) throw std::invalid_argument(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

bool is_admissible(const std::vector<LinearForm>& forms) {
    // Only primes p <= k, or primes dividing gcd(l1, l2) of a single form, can
    // have every class killed.
    std::set<std::uint64_t> candidates;
    for (std::uint64_t p : primes_up_to(forms.size())) candidates.insert(p);
    for (const auto& f : forms) {
        const std::uint64_t g = std::gcd(abs_u64(f.l1, "l1"), abs_u64(f.l2, "l2"));
        for (std::uint64_t p : prime_factors(g)) candidates.insert(p);
    }
    for (std::uint64_t p : candidates) {
        std::vector<std::uint8_t> hit(p, 0);
        std::size_t count = 0;
        for (const auto& f : forms) {
            const std::uint64_t a = mod_i128(f.l1, p), b = mod_i128(f.l2, p);
            if (a == 0) {
                if (b == 0) return false;
                continue;
            }
            const std::uint64_t r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(p - b) % p * inverse_mod(a, p) % p);
            if (!hit[r]) {
                hit[r] = 1;
                ++count;
            }
        }
        if (count == p) return false;
    }
    return true;
}

FormSystem::FormSystem(std::vector<LinearForm> forms, std::uint64_t B) : forms_(std::move(forms)), B_(B) {
    if (forms_.empty()) throw std::invalid_argument("form system: no forms");
    for (const auto& f : forms_)
        if (f.l1 == 0) throw std::invalid_argument("form system: l1 must be nonzero");
    if (B_ != 1 && !is_prime_u64(B_)) throw std::invalid_argument("form system: B must be 1 or a prime");
    for (std::size_t i = 0; i < forms_.size(); ++i)
        for (std::size_t j = i + 1; j < forms_.size(); ++j)
            if (static_cast<__int128>(forms_[i].l1) * forms_[j].l2 == static_cast<__int128>(forms_[j].l1) * forms_[i].l2)
                throw std::invalid_argument("form system: forms " + std::to_string(i) + " and " + std::to_string(j) + " are proportional");
    if (!is_admissible(forms_)) throw std::invalid_argument("form system: forms are not admissible");
    const std::uint64_t k = forms_.size();
    for (std::uint64_t p : primes_up_to(2 * k * k))
        if (p != B_) w_primes_.push_back(p);
}

mpz_class FormSystem::W() const {
    mpz_class w = 1;
    for (std::uint64_t p : w_primes_) w *= static_cast<unsigned long>(p);
    return w;
}

bool FormSystem::divides_WB(std::uint64_t p) const {
    return p == B_ || std::binary_search(w_primes_.begin(), w_primes_.end(), p);
}

FormSystem FormSystem::from_tuple(const AdmissibleTuple& h, std::uint64_t B) {
    std::vector<LinearForm> f;
    for (auto v : h.offsets) f.push_back({1, v});
    return FormSystem(std::move(f), B);
}

FormSystem FormSystem::shifted(const AdmissibleTuple& h, std::uint64_t p, std::uint64_t B) {
    std::vector<LinearForm> f;
    for (auto v : h.offsets) {
        const __int128 b = static_cast<__int128>(v) * static_cast<__int128>(p);
        if (b > INT64_MAX || b < INT64_MIN) throw std::invalid_argument("shifted system: h_i p overflows");
        f.push_back({1, static_cast<std::int64_t>(b)});
    }
    return FormSystem(std::move(f), B);
}

OmegaInfo omega_info(const FormSystem& sys, std::uint64_t p) {
    // root (as n in [1, p]) -> least form index
    std::map<std::uint64_t, std::size_t> roots;
    for (std::size_t i = 0; i < sys.k(); ++i) {
        const auto& f = sys.forms()[i];
        const std::uint64_t a = mod_i128(f.l1, p), b = mod_i128(f.l2, p);
        if (a == 0) {
            if (b != 0) continue;
            for (std::uint64_t n = 1; n <= p; ++n) roots.emplace(n, i);
            continue;
        }
        std::uint64_t r = static_cast<std::uint64_t>(static_cast<unsigned __int128>((p - b) % p) * inverse_mod(a, p) % p);
        if (r == 0) r = p;
        roots.emplace(r, i);  // keeps the earlier (smaller) index
    }
    OmegaInfo out;
    out.p = p;
    for (const auto& [r, i] : roots) {
        out.roots.push_back(r);
        out.j.push_back(i);
    }
    return out;
}

std::size_t omega(const FormSystem& sys, std::uint64_t p) { return omega_info(sys, p).omega(); }

OmegaInfo omega_scan(const FormSystem& sys, std::uint64_t p) {
    OmegaInfo out;
    out.p = p;
    for (std::uint64_t n = 1; n <= p; ++n) {
        for (std::size_t i = 0; i < sys.k(); ++i) {
            if (mod_i128(sys.forms()[i](static_cast<std::int64_t>(n)), p) == 0) {
                out.roots.push_back(n);
                out.j.push_back(i);
                break;
            }
        }
    }
    return out;
}

SingularSeries singular_series(const FormSystem& sys, std::uint64_t cutoff) {
    const double k = static_cast<double>(sys.k());
    if (cutoff < 2 * sys.k() * sys.k()) throw std::invalid_argument("singular_series: cutoff must be at least 2k^2");
    // Above the cutoff a prime has omega = k unless it divides some l1 or some
    // l1_i l2_j - l1_j l2_i; those finitely many primes are multiplied in
    // exactly, and the rest contribute factors within k^2/p^2 of 1 in log.
    std::set<std::uint64_t> primes;
    for (std::uint64_t p : primes_up_to(cutoff)) primes.insert(p);
    const auto& f = sys.forms();
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::uint64_t p : prime_factors(abs_u64(f[i].l1, "l1"))) primes.insert(p);
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const __int128 disc = static_cast<__int128>(f[i].l1) * f[j].l2 - static_cast<__int128>(f[j].l1) * f[i].l2;
            for (std::uint64_t p : prime_factors(abs_u64(disc, "form discriminant"))) primes.insert(p);
        }
    }
    Accumulator<double> log_all, log_wb;
    for (std::uint64_t p : primes) {
        if (p == sys.B()) continue;
        const std::size_t w = omega(sys, p);
        if (w >= p) throw std::invalid_argument("singular_series: omega(" + std::to_string(p) + ") = p, system is inadmissible");
        const double pd = static_cast<double>(p);
        const double term = std::log1p(-static_cast<double>(w) / pd) - k * std::log1p(-1.0 / pd);
        log_all.add(term);
        if (!sys.divides_WB(p)) log_wb.add(term);
    }
    SingularSeries s;
    s.cutoff = cutoff;
    s.value = std::exp(log_all.value());
    s.value_wb = std::exp(log_wb.value());
    // sum_{p > c} k^2/p^2 <= k^2/c
    s.log_tail_bound = k * k / static_cast<double>(cutoff);
    return s;
}

int moebius(std::uint64_t n) {
    if (n == 0) return 0;
    int sign = 1;
    for (std::uint64_t p : prime_factors(n)) {
        if ((n / p) % p == 0) return 0;
        sign = -sign;
    }
    return sign;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t out = n;
    for (std::uint64_t p : prime_factors(n)) out = out / p * (p - 1);
    return out;
}

bool in_Dk(const FormSystem& sys, const Tuple& d) {
    if (d.size() != sys.k()) return false;
    std::set<std::uint64_t> used;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) return false;
        for (std::uint64_t q : prime_factors(d[i])) {
            if ((d[i] / q) % q == 0) return false;     // square factor
            if (!used.insert(q).second) return false;  // shared across coordinates
            if (sys.divides_WB(q)) return false;
            const auto info = omega_info(sys, q);
            if (std::find(info.j.begin(), info.j.end(), i) == info.j.end()) return false;
        }
    }
    return true;
}

double default_F(std::span<const double> t) {
    double s = 0;
    for (double v : t) {
        if (v < 0) return 0;
        s += v;
    }
    if (s > 1) return 0;
    return std::pow(1.0 - s, static_cast<double>(t.size() + 1));
}

WeightSystem::WeightSystem(FormSystem sys, double R, WeightOptions opts)
    : sys_(std::move(sys)), R_(R), opts_(std::move(opts)) {
    if (!opts_.F) throw std::invalid_argument("weight system: F is empty");
    const std::size_t k = sys_.k();
    series_ = singular_series(sys_, std::max<std::uint64_t>(opts_.series_cutoff, 2 * k * k));
    // W^k B^k / phi(WB)^k = prod over q | WB of (q / (q - 1))^k
    double log_pre = std::log(series_.value_wb);
    auto add_q = [&](std::uint64_t q) { log_pre += static_cast<double>(k) * (std::log(static_cast<double>(q)) - std::log(static_cast<double>(q - 1))); };
    for (std::uint64_t q : sys_.w_primes()) add_q(q);
    if (sys_.B() != 1) add_q(sys_.B());
    y_prefactor_ = std::exp(log_pre);

    if (R_ < 1) return;
    const auto bound = static_cast<std::uint64_t>(std::floor(R_ + 1e-9));
    std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> allowed;  // prime -> coordinates
    for (std::uint64_t q : primes_up_to(bound)) {
        if (sys_.divides_WB(q)) continue;
        OmegaInfo info = omega_info(sys_, q);
        std::vector<std::size_t> coords(info.j.begin(), info.j.end());
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
        small_omega_.emplace(q, std::move(info));
        if (!coords.empty()) allowed.emplace_back(q, std::move(coords));
    }
    // Depth-first over primes in ascending order.
    Tuple cur(k, 1);
    std::function<void(std::size_t, std::uint64_t)> dfs = [&](std::size_t start, std::uint64_t prod) {
        support_.push_back(cur);
        for (std::size_t t = start; t < allowed.size(); ++t) {
            const std::uint64_t q = allowed[t].first;
            if (static_cast<double>(prod) * static_cast<double>(q) > R_ + 1e-9) break;
            for (std::size_t j : allowed[t].second) {
                cur[j] *= q;
                dfs(t + 1, prod * q);
                cur[j] /= q;
            }
        }
    };
    dfs(0, 1);
    for (std::size_t s = 0; s < support_.size(); ++s) index_.emplace(support_[s], s);

    std::vector<double> g(support_.size());  // y_r / phi_omega(prod r)
    for (std::size_t s = 0; s < support_.size(); ++s) {
        std::uint64_t prod = 1;
        for (auto v : support_[s]) prod *= v;
        g[s] = y(support_[s]) / phi_omega(prod);
    }
    lambda_.assign(support_.size(), 0.0);
    for (std::size_t a = 0; a < support_.size(); ++a) {
        const Tuple& d = support_[a];
        Accumulator<double> acc;
        for (std::size_t b = 0; b < support_.size(); ++b) {
            bool divides = true;
            for (std::size_t i = 0; i < k && divides; ++i) divides = support_[b][i] % d[i] == 0;
            if (divides) acc.add(g[b]);
        }
        std::uint64_t prod = 1;
        for (auto v : d) prod *= v;
        lambda_[a] = moebius(prod) * static_cast<double>(prod) * acc.value();
    }
}

double WeightSystem::lambda_at(const Tuple& d) const {
    auto it = index_.find(d);
    return it == index_.end() ? 0.0 : lambda_[it->second];
}

double WeightSystem::phi_omega(std::uint64_t m) const {
    double out = 1;
    for (std::uint64_t q : prime_factors(m)) {
        auto it = small_omega_.find(q);
        const std::size_t w = it != small_omega_.end() ? it->second.omega() : omega(sys_, q);
        out *= static_cast<double>(q - w);
    }
    return out;
}

double WeightSystem::y(const Tuple& r) const {
    if (!in_Dk(sys_, r)) return 0.0;
    std::vector<double> t(r.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] > 1) t[i] = std::log(static_cast<double>(r[i])) / std::log(R_);
    return y_prefactor_ * opts_.F(t);
}

double WeightSystem::lambda_sum(std::int64_t n, double scale) const {
    const std::size_t k = sys_.k();
    std::vector<__int128> L(k);
    for (std::size_t i = 0; i < k; ++i) L[i] = sys_.forms()[i](n);
    Accumulator<double> acc;
    for (std::size_t s = 0; s < support_.size(); ++s) {
        bool divides = true;
        for (std::size_t i = 0; i < k && divides; ++i) divides = L[i] % static_cast<__int128>(support_[s][i]) == 0;
        if (divides) acc.add(lambda_[s]);
    }
    return scale * acc.value();
}

std::string WeightSystem::table_json() const {
    nlohmann::ordered_json j;
    j["k"] = sys_.k();
    auto forms = nlohmann::ordered_json::array();
    for (const auto& f : sys_.forms()) forms.push_back({f.l1, f.l2});
    j["forms"] = std::move(forms);
    j["B"] = sys_.B();
    j["R"] = R_;
    auto lam = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < support_.size(); ++s) lam.push_back({support_[s], lambda_[s]});
    j["lambda"] = std::move(lam);
    return j.dump();
}

PairWeights::PairWeights(AdmissibleTuple h, double R, std::uint64_t y, std::uint64_t B, WeightOptions opts)
    : h_(std::move(h)), y_(y), base_(FormSystem::from_tuple(h_, B), R, std::move(opts)) {}

double PairWeights::ratio(std::uint64_t p) const {
    if (static_cast<double>(p) <= base_.R())
        throw std::invalid_argument("pair weight: p = " + std::to_string(p) + " must exceed R");
    const auto& sys = base_.system();
    if (sys.divides_WB(p)) return 1.0;
    // Only the factor at p differs: omega_{L_p}(p) = 1, omega_base(p) = #{h_i mod p}.
    const double pd = static_cast<double>(p);
    return (1.0 - 1.0 / pd) / (1.0 - static_cast<double>(omega(sys, p)) / pd);
}

double PairWeights::operator()(std::uint64_t p, std::int64_t n) const {
    if (n < -static_cast<std::int64_t>(y_) || n > static_cast<std::int64_t>(y_)) return 0.0;
    const auto& support = base_.support();
    const auto& lambda = base_.lambda();
    const std::size_t k = h_.size();
    Accumulator<double> acc;
    for (std::size_t s = 0; s < support.size(); ++s) {
        bool divides = true;
        for (std::size_t i = 0; i < k && divides; ++i) {
            const __int128 L = static_cast<__int128>(n) + static_cast<__int128>(h_.offsets[i]) * static_cast<__int128>(p);
            divides = L % static_cast<__int128>(support[s][i]) == 0;
        }
        if (divides) acc.add(lambda[s]);
    }
    const double v = ratio(p) * acc.value();
    return v * v;
}

double default_R(double x) { return std::pow(x / 4.0, 1.0 / 9.0); }

IntegralEstimate integrals_IJ(const SimplexFunction& F, std::size_t k, std::size_t samples, std::uint64_t seed,
                              std::size_t threads) {
    if (k == 0) throw std::invalid_argument("integrals_IJ: k must be >= 1");
    if (samples < 2) throw std::invalid_argument("integrals_IJ: need at least two samples");
    constexpr std::size_t kBlock = std::size_t{1} << 16;
    const std::size_t blocks = (samples + kBlock - 1) / kBlock;
    struct Sums {
        long double i1 = 0, i2 = 0, j1 = 0, j2 = 0;
    };
    std::vector<Sums> part(blocks);
    double fact_k = 1, fact_km1 = 1;
    for (std::size_t i = 2; i <= k; ++i) fact_k *= static_cast<double>(i);
    fact_km1 = fact_k / static_cast<double>(k);

    parallel_for(blocks, threads, [&](std::size_t b) {
        RandomStream rng(seed, StreamTag::Integrals, b);
        const std::size_t n = std::min(kBlock, samples - b * kBlock);
        std::vector<double> e(k + 1), t(k);
        Sums s;
        for (std::size_t m = 0; m < n; ++m) {
            // Uniform point of the k-simplex from normalized exponentials.
            double tot = 0;
            for (auto& v : e) tot += (v = rng.exponential());
            for (std::size_t i = 0; i < k; ++i) t[i] = e[i] / tot;
            const double f = F(t);
            const double vi = f * f / fact_k;
            s.i1 += vi;
            s.i2 += static_cast<long double>(vi) * vi;

            // Outer point of the (k-1)-simplex, two inner points on [0, 1 - sum].
            double tot2 = 0;
            for (std::size_t i = 0; i < k; ++i) tot2 += (e[i] = rng.exponential());
            double used = 0;
            for (std::size_t i = 0; i + 1 < k; ++i) used += (t[i] = e[i] / tot2);
            const double len = std::max(0.0, 1.0 - used);
            t[k - 1] = len * rng.uniform();
            const double g1 = len * F(t);
            t[k - 1] = len * rng.uniform();
            const double g2 = len * F(t);
            const double vj = g1 * g2 / fact_km1;
            s.j1 += vj;
            s.j2 += static_cast<long double>(vj) * vj;
        }
        part[b] = s;
    });
    Sums tot;
    for (const auto& s : part) {
        tot.i1 += s.i1;
        tot.i2 += s.i2;
        tot.j1 += s.j1;
        tot.j2 += s.j2;
    }
    const long double n = static_cast<long double>(samples);
    IntegralEstimate out;
    out.samples = samples;
    out.I = static_cast<double>(tot.i1 / n);
    out.J = static_cast<double>(tot.j1 / n);
    const long double var_i = std::max<long double>(0, (tot.i2 - tot.i1 * tot.i1 / n) / (n - 1));
    const long double var_j = std::max<long double>(0, (tot.j2 - tot.j1 * tot.j1 / n) / (n - 1));
    out.se_I = static_cast<double>(std::sqrt(var_i / n));
    out.se_J = static_cast<double>(std::sqrt(var_j / n));
    return out;
}

TauU tau_u(const WeightSystem& ws, double x, const IntegralEstimate& ij) {
    const auto& sys = ws.system();
    const double k = static_cast<double>(sys.k());
    const double B = static_cast<double>(sys.B());
    const double B_over_phi = sys.B() == 1 ? 1.0 : B / (B - 1);
    const double logR = std::log(ws.R()), logx = std::log(x);
    TauU out;
    out.tau = 2 * std::pow(B_over_phi, k) * ws.series().value * std::pow(logR, k) * std::pow(logx, k) * ij.I;
    out.u = ij.I > 0 ? (1.0 / B_over_phi) * (logR / logx) * k * ij.J / (2 * ij.I) : 0.0;
    return out;
}

UniformityReport uniformity_diagnostics(const PairWeights& pw, std::uint64_t x, std::vector<std::uint64_t> ps,
                                        std::vector<std::uint64_t> qs, std::uint64_t seed) {
    UniformityReport r;
    r.ps = std::move(ps);
    r.qs = std::move(qs);
    const auto& h = pw.tuple().offsets;
    const auto y = static_cast<std::int64_t>(pw.y());
    for (std::uint64_t p : r.ps) {
        Accumulator<double> acc;
        for (std::int64_t n = -y; n <= y; ++n) {
            const double w = pw(p, n);
            r.max_w = std::max(r.max_w, w);
            acc.add(w);
        }
        r.p_sums.push_back(acc.value());
    }
    auto cv = [](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0;
        for (double a : v) ss += (a - mean) * (a - mean);
        return mean != 0 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::abs(mean) : 0.0;
    };
    r.p_sum_cv = cv(r.p_sums);
    if (r.p_sums.size() >= 2) {
        constexpr std::size_t kBoot = 1000;
        std::vector<double> stats;
        for (std::size_t b = 0; b < kBoot; ++b) {
            RandomStream rng(seed, StreamTag::Bootstrap, b);
            std::vector<double> sample;
            for (std::size_t i = 0; i < r.p_sums.size(); ++i) sample.push_back(r.p_sums[rng.below(r.p_sums.size())]);
            stats.push_back(cv(sample));
        }
        std::sort(stats.begin(), stats.end());
        r.p_sum_cv_lo = stats[kBoot * 25 / 1000];
        r.p_sum_cv_hi = stats[kBoot * 975 / 1000 - 1];
    }

    std::set<std::int64_t> hs(h.begin(), h.end());
    r.off_tuple_h = 1;
    while (hs.count(r.off_tuple_h)) ++r.off_tuple_h;
    const auto P = primes_up_to(x).range(x / 2, x);
    for (std::uint64_t q : r.qs) {
        std::vector<double> row;
        for (std::int64_t hi : h) {
            Accumulator<double> acc;
            for (std::uint64_t p : P) acc.add(pw(p, static_cast<std::int64_t>(q) - hi * static_cast<std::int64_t>(p)));
            row.push_back(acc.value());
        }
        r.q_sums.push_back(std::move(row));
        Accumulator<double> off;
        for (std::uint64_t p : P) off.add(pw(p, static_cast<std::int64_t>(q) - r.off_tuple_h * static_cast<std::int64_t>(p)));
        r.off_tuple_sums.push_back(off.value());
    }
    r.crude_bound = std::pow(static_cast<double>(x), 2.0 / 9.0);
    // L(n) = n + h p against L_p: Delta = p^k prod |h_j - h|.
    std::set<std::uint64_t> small;
    for (std::int64_t hi : h)
        for (std::uint64_t s : prime_factors(static_cast<std::uint64_t>(std::llabs(hi - r.off_tuple_h)))) small.insert(s);
    double base = 1;
    for (std::uint64_t s : small) base *= static_cast<double>(s) / static_cast<double>(s - 1);
    for (std::uint64_t p : r.ps) {
        const double f = small.count(p) ? 1.0 : static_cast<double>(p) / static_cast<double>(p - 1);
        r.delta_ratio = std::max(r.delta_ratio, base * f);
    }
    return r;
}

std::string UniformityReport::csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "quantity,key,index,value\n";
    for (std::size_t i = 0; i < ps.size(); ++i) out << "p_sum," << ps[i] << ",," << p_sums[i] << '\n';
    out << "p_sum_cv,,," << p_sum_cv << '\n';
    out << "p_sum_cv_ci_lo,,," << p_sum_cv_lo << '\n';
    out << "p_sum_cv_ci_hi,,," << p_sum_cv_hi << '\n';
    for (std::size_t a = 0; a < qs.size(); ++a) {
        for (std::size_t i = 0; i < q_sums[a].size(); ++i) out << "q_sum," << qs[a] << ',' << i << ',' << q_sums[a][i] << '\n';
        out << "off_tuple_sum," << qs[a] << ',' << off_tuple_h << ',' << off_tuple_sums[a] << '\n';
    }
    out << "max_w,,," << max_w << '\n';
    out << "crude_bound,,," << crude_bound << '\n';
    out << "delta_ratio,,," << delta_ratio << '\n';
    return out.str();
}

}  // namespace gapcover
