// weights.hpp
// Multidimensional (Maynard-style) sieve weights for a system of linear forms
// L_i(n) = l1 n + l2:
//
//   W      = prod of primes p <= 2k^2 with p not dividing B
//   y_r    = 1_{D_k}(r) W^k B^k / phi(WB)^k * S_WB * F(log r_1/log R, ...)
//   lambda_d = mu(d_1...d_k) d_1...d_k * sum_{d_i | r_i} y_r / phi_omega(r_1...r_k)
//   w(n)   = (sum over d with d_i | L_i(n) of lambda_d)^2
//
// F defaults to (1 - t_1 - ... - t_k)^{k+1} on the simplex, 0 outside.
// Everything is double precision; sums are compensated.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gapcover/primes.hpp"

namespace gapcover {

struct LinearForm {
    std::int64_t l1 = 1;
    std::int64_t l2 = 0;
    __int128 operator()(std::int64_t n) const { return static_cast<__int128>(l1) * n + l2; }
    bool operator==(const LinearForm&) const = default;
};

// The n in [1, p] with p | prod L_i(n), ascending, and for each such n the
// least (0-based) form index it kills.
struct OmegaInfo {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> roots;
    std::vector<std::size_t> j;        // same order as roots
    std::size_t omega() const { return roots.size(); }
};

class FormSystem {
public:
    FormSystem() = default;
    // Throws std::invalid_argument on l1 = 0, an empty system, B not 1 or prime,
    // or an inadmissible system.
    FormSystem(std::vector<LinearForm> forms, std::uint64_t B = 1);

    std::size_t k() const { return forms_.size(); }
    const std::vector<LinearForm>& forms() const { return forms_; }
    std::uint64_t B() const { return B_; }
    // Primes dividing W (p <= 2k^2, p not dividing B).
    const std::vector<std::uint64_t>& w_primes() const { return w_primes_; }
    mpz_class W() const;
    bool divides_WB(std::uint64_t p) const;

    // Forms n + h_i.
    static FormSystem from_tuple(const AdmissibleTuple& h, std::uint64_t B = 1);
    // Forms n + h_i p.
    static FormSystem shifted(const AdmissibleTuple& h, std::uint64_t p, std::uint64_t B = 1);

private:
    std::vector<LinearForm> forms_;
    std::uint64_t B_ = 1;
    std::vector<std::uint64_t> w_primes_;
};

// No prime divides prod L_i(n) for every n.
bool is_admissible(const std::vector<LinearForm>& forms);

// Roots of each form mod p computed algebraically.
OmegaInfo omega_info(const FormSystem& sys, std::uint64_t p);
std::size_t omega(const FormSystem& sys, std::uint64_t p);
// Same data by scanning n = 1..p; used as an oracle.
OmegaInfo omega_scan(const FormSystem& sys, std::uint64_t p);

struct SingularSeries {
    double value = 0;        // product over p not dividing B, p <= cutoff
    double value_wb = 0;     // product over p not dividing WB, p <= cutoff
    double log_tail_bound = 0;  // bound on |log(full product) - log(truncated)|
    std::uint64_t cutoff = 0;
};

// Throws std::invalid_argument if omega(p) = p for some p <= cutoff.
SingularSeries singular_series(const FormSystem& sys, std::uint64_t cutoff);

using Tuple = std::vector<std::uint64_t>;

bool in_Dk(const FormSystem& sys, const Tuple& d);

using SimplexFunction = std::function<double(std::span<const double>)>;

// (1 - sum t)^{k+1} inside the simplex, 0 outside.
double default_F(std::span<const double> t);

// Small-integer helpers.
int moebius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

struct WeightOptions {
    std::uint64_t series_cutoff = 100'000;
    SimplexFunction F = default_F;
};

class WeightSystem {
public:
    WeightSystem(FormSystem sys, double R, WeightOptions opts = {});

    const FormSystem& system() const { return sys_; }
    double R() const { return R_; }
    const SingularSeries& series() const { return series_; }

    // S_k: tuples of D_k with product <= R, in a fixed enumeration order.
    const std::vector<Tuple>& support() const { return support_; }
    // lambda over support(); same order.
    const std::vector<double>& lambda() const { return lambda_; }
    double lambda_at(const Tuple& d) const;

    double y(const Tuple& r) const;
    double phi_omega(std::uint64_t m) const;

    // sum over d in S_k with d_i | L_i(n) of lambda_d, scaled by `scale`.
    double lambda_sum(std::int64_t n, double scale = 1.0) const;
    double w(std::int64_t n) const {
        const double s = lambda_sum(n);
        return s * s;
    }

    std::string table_json() const;

private:
    FormSystem sys_;
    double R_;
    WeightOptions opts_;
    SingularSeries series_;
    double y_prefactor_ = 0;
    std::map<std::uint64_t, OmegaInfo> small_omega_;  // primes allowed in S_k
    std::vector<Tuple> support_;
    std::vector<double> lambda_;
    std::map<Tuple, std::size_t> index_;
};

// w(p, n) = 1_{[-y, y]}(n) w_{k, L_p, B, R}(n) with L_p = {n + h_i p}.
// The lambda table of L_p equals S_WB(L_p)/S_WB(base) times the table of the
// base system {n + h_i} whenever p > R, so only that scalar depends on p.
class PairWeights {
public:
    PairWeights(AdmissibleTuple h, double R, std::uint64_t y, std::uint64_t B = 1, WeightOptions opts = {});

    const AdmissibleTuple& tuple() const { return h_; }
    const WeightSystem& base() const { return base_; }
    std::uint64_t y() const { return y_; }
    // Throws std::invalid_argument when p <= R.
    double ratio(std::uint64_t p) const;
    double operator()(std::uint64_t p, std::int64_t n) const;

private:
    AdmissibleTuple h_;
    std::uint64_t y_;
    WeightSystem base_;
};

// R = (x/4)^{1/9}.
double default_R(double x);

struct IntegralEstimate {
    double I = 0, J = 0;
    double se_I = 0, se_J = 0;
    std::size_t samples = 0;
};

// Monte Carlo over the simplex:
//   I_k = int_{R_k} F^2,  J_k = int_{R_{k-1}} (int_0^{1 - sum t} F dt_k)^2.
// J uses two independent inner points per outer point, which makes the
// estimator of the squared inner integral unbiased.
IntegralEstimate integrals_IJ(const SimplexFunction& F, std::size_t k, std::size_t samples, std::uint64_t seed,
                              std::size_t threads = 1);

struct TauU {
    double tau = 0;
    double u = 0;
};

// tau = 2 (B/phi(B))^k S (log R)^k (log x)^k I_k
// u   = (phi(B)/B) (log R / log x) k J_k / (2 I_k)
TauU tau_u(const WeightSystem& ws, double x, const IntegralEstimate& ij);

struct UniformityReport {
    std::vector<std::uint64_t> ps;
    std::vector<double> p_sums;          // sum_n w(p, n)
    double p_sum_cv = 0;                 // coefficient of variation
    double p_sum_cv_lo = 0, p_sum_cv_hi = 0;  // bootstrap 95% interval
    std::vector<std::uint64_t> qs;
    std::vector<std::vector<double>> q_sums;  // [q][i]: sum_p w(p, q - h_i p)
    std::vector<double> off_tuple_sums;       // [q]: sum_p w(p, q - h p)
    std::int64_t off_tuple_h = 0;
    double max_w = 0;
    double crude_bound = 0;              // x^{2/9}
    double delta_ratio = 0;              // max over sampled p of Delta_L / phi(Delta_L)

    std::string csv() const;
};

UniformityReport uniformity_diagnostics(const PairWeights& pw, std::uint64_t x, std::vector<std::uint64_t> ps,
                                        std::vector<std::uint64_t> qs, std::uint64_t seed);

}  // namespace gapcover
