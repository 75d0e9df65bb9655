// nibble.hpp
// Generalized Pippenger-Spencer covering engine.
//
// Each index i carries a finite distribution over edges (subsets of V) with
// any missing mass on the empty edge. Indices are processed in rounds
// I_1..I_m. Round j samples, independently per index, from the reweighted law
//
//   P(e'_i = e | W) = 1[e subset of W] * P(e_i = e) / P_{j-1}(e) / X_i(W),
//   X_i(W)          = sum over e subset of W of P(e_i = e) / P_{j-1}(e),
//
// where W is the set of vertices still uncovered before round j and
// P_{j-1}(e) is the product of P_{j-1}(v) over v in e (1 for the empty edge).
// When |X_i(W) - 1| exceeds the tolerance the index is skipped (e'_i empty).
// P_j follows the recursion P_0 = 1, P_j(v) = P_{j-1}(v) exp(-d_j(v)/P_{j-1}(v))
// with d_j(v) = sum over i in I_j of P(v in e_i).

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapcover {

using VertexId = std::uint32_t;
using Edge = std::vector<VertexId>;  // sorted, distinct

template <class Real>
struct BasicOutcome {
    Edge edge;
    Real prob{};
};

template <class Real>
struct BasicEdgeDistribution {
    std::vector<BasicOutcome<Real>> support;

    Real total() const {
        Real t{};
        for (const auto& o : support) t += o.prob;
        return t;
    }
    Real empty_mass() const {
        Real m = Real(1) - total();
        return m < Real(0) ? Real(0) : m;
    }
};

using Outcome = BasicOutcome<double>;
using EdgeDistribution = BasicEdgeDistribution<double>;
using DistributionPtr = std::shared_ptr<const EdgeDistribution>;

struct CoverParams {
    double delta = 0.1;
    std::size_t r_max = 0;  // 0: use the largest support edge
    double A = 1.0;
    double D = 1.0;
    double kappa = 0.5;
    double C0 = 1.0;
};

struct CoverInstance {
    std::size_t num_vertices = 0;
    std::vector<std::vector<std::size_t>> rounds;  // I_1..I_m as index lists
    std::vector<DistributionPtr> dist;             // by index
    CoverParams params;

    std::size_t num_rounds() const { return rounds.size(); }
    std::size_t num_indices() const { return dist.size(); }
    // Throws std::invalid_argument when an invariant is broken.
    void validate() const;
};

// Sum accumulator: plain for exact types, compensated (Neumaier, long double)
// for double.
template <class Real>
class Accumulator {
public:
    void add(const Real& v) { sum_ += v; }
    Real value() const { return sum_; }

private:
    Real sum_{};
};

template <>
class Accumulator<double> {
public:
    void add(double v) {
        const long double x = v;
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return static_cast<double>(sum_ + comp_); }

private:
    long double sum_ = 0;
    long double comp_ = 0;
};

struct DegreeProfile {
    // d[j][v] for j = 1..m (d[0] is all zeros); P[j][v] for j = 0..m.
    std::vector<std::vector<double>> d;
    std::vector<std::vector<double>> P;

    std::size_t num_rounds() const { return P.empty() ? 0 : P.size() - 1; }
    double edge_P(std::size_t j, const Edge& e) const {
        double v = 1.0;
        for (VertexId u : e) v *= P[j][u];
        return v;
    }
};

DegreeProfile degree_profile(const CoverInstance& inst);

// Rounds driven by prescribed degrees d[j][v] (j = 1..m) instead of an instance.
DegreeProfile profile_from_degrees(std::vector<std::vector<double>> d);

// The reweighted sampling law of one index given W.
template <class Real>
struct ReweightedLaw {
    Real x_value{};                   // X_i(W)
    bool passes = false;              // |X_i(W) - 1| <= tol
    std::vector<std::size_t> outcome; // support indices with edge subset of W
    std::vector<Real> weight;         // P(e_i = e) / P_{j-1}(e), same order
    Real empty_weight{};              // remainder mass on the empty edge

    // Probability of choosing support entry outcome[k], or the empty edge.
    Real prob(std::size_t k) const { return weight[k] / x_value; }
    Real empty_prob() const { return empty_weight / x_value; }
};

// in_W(v) -> bool; P_prev(v) -> Real.
template <class Real, class InW, class PPrev>
ReweightedLaw<Real> reweighted_law(const BasicEdgeDistribution<Real>& dist, InW&& in_W, PPrev&& P_prev,
                                   const Real& tol) {
    ReweightedLaw<Real> law;
    Accumulator<Real> x;
    for (std::size_t k = 0; k < dist.support.size(); ++k) {
        const auto& o = dist.support[k];
        if (!(o.prob > Real(0))) continue;
        bool inside = true;
        Real pe(1);
        for (VertexId v : o.edge) {
            if (!in_W(v)) {
                inside = false;
                break;
            }
            pe *= P_prev(v);
        }
        if (!inside) continue;
        Real w = o.prob / pe;
        law.outcome.push_back(k);
        law.weight.push_back(w);
        x.add(w);
    }
    law.empty_weight = dist.empty_mass();
    x.add(law.empty_weight);
    law.x_value = x.value();
    Real dev = law.x_value - Real(1);
    if (dev < Real(0)) dev = -dev;
    law.passes = !(dev > tol);
    if (law.passes && !(law.x_value > Real(0)))
        throw std::logic_error("reweighted_law: X_i(W) = 0 with the tolerance test passing");
    return law;
}

// Sum over e subset of W of P(e_i = e)/P_{j-1}(e), empty mass included, for
// index i in round j (1-based).
double normalization_factor(const CoverInstance& inst, const DegreeProfile& profile, std::size_t i, std::size_t j,
                            const std::vector<std::uint8_t>& alive);

inline constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

struct RoundLogRow {
    std::size_t round = 0;
    std::size_t index = 0;
    double x_value = 0;
    bool f_pass = false;
    std::size_t w_size = 0;  // |W| after the round
};

struct NibbleState {
    std::vector<std::uint8_t> alive;      // W as membership flags
    std::vector<std::size_t> chosen;      // support index per index, kNoEdge for empty
    std::size_t rounds_done = 0;
    std::vector<RoundLogRow> log;

    std::size_t w_size() const;
};

NibbleState initial_state(const CoverInstance& inst);

// Default tolerance for the F_i test: max(delta^(1/(3*10^m)), 0.1), kept below 1.
double default_tolerance(double delta, std::size_t m);

// Executes round j (1-based): sample all of I_j against the current W, then
// remove the union of the chosen edges. Randomness for index i comes from
// stream (seed, NibbleRound, i).
void nibble_round(const CoverInstance& inst, const DegreeProfile& profile, NibbleState& state, std::size_t j,
                  std::uint64_t seed, double tol);

struct CoverResult {
    std::vector<std::size_t> chosen;   // by index
    std::vector<VertexId> leftover;
    std::vector<std::uint8_t> alive;
    std::vector<RoundLogRow> log;
    double expected_leftover = 0;      // sum over v of P_m(v)
};

CoverResult run_cover(const CoverInstance& inst, const DegreeProfile& profile, std::uint64_t seed, double tol);
CoverResult run_cover(const CoverInstance& inst, std::uint64_t seed);

// Each index draws independently from its unmodified distribution.
CoverResult run_independent(const CoverInstance& inst, std::uint64_t seed);

// Exact law of the final W: propagates the distribution of W through the
// rounds, in arithmetic of type Real. P[j][v] for j = 0..m must be supplied
// in that arithmetic. Also checks that every outcome with positive mass is a
// subset of the W it is drawn against.
template <class Real>
struct ExactCoverLaw {
    std::map<std::vector<std::uint8_t>, Real> final_w;
    std::vector<Real> survival;  // per vertex
};

template <class Real>
ExactCoverLaw<Real> exact_cover_law(std::size_t num_vertices, const std::vector<std::vector<std::size_t>>& rounds,
                                    const std::vector<BasicEdgeDistribution<Real>>& dist,
                                    const std::vector<std::vector<Real>>& P, const Real& tol) {
    using State = std::vector<std::uint8_t>;
    std::map<State, Real> states;
    states.emplace(State(num_vertices, 1), Real(1));
    for (std::size_t j = 1; j <= rounds.size(); ++j) {
        std::map<State, Real> next;
        for (const auto& [w, pw] : states) {
            auto in_W = [&w](VertexId v) { return w[v] != 0; };
            auto P_prev = [&P, j](VertexId v) { return P[j - 1][v]; };
            // Distribution of the union of this round's chosen edges.
            std::map<State, Real> covered;
            covered.emplace(State(num_vertices, 0), Real(1));
            for (std::size_t i : rounds[j - 1]) {
                const auto law = reweighted_law<Real>(dist[i], in_W, P_prev, tol);
                std::map<State, Real> grown;
                for (const auto& [c, pc] : covered) {
                    if (!law.passes) {
                        grown[c] += pc;
                        continue;
                    }
                    if (law.empty_weight > Real(0)) grown[c] += pc * law.empty_prob();
                    for (std::size_t k = 0; k < law.outcome.size(); ++k) {
                        State u = c;
                        for (VertexId v : dist[i].support[law.outcome[k]].edge) {
                            if (!w[v]) throw std::logic_error("exact_cover_law: outcome leaves W");
                            u[v] = 1;
                        }
                        grown[u] += pc * law.prob(k);
                    }
                }
                covered = std::move(grown);
            }
            for (const auto& [c, pc] : covered) {
                State nw = w;
                for (std::size_t v = 0; v < num_vertices; ++v)
                    if (c[v]) nw[v] = 0;
                next[nw] += pw * pc;
            }
        }
        states = std::move(next);
    }
    ExactCoverLaw<Real> out;
    out.survival.assign(num_vertices, Real(0));
    for (const auto& [w, pw] : states)
        for (std::size_t v = 0; v < num_vertices; ++v)
            if (w[v]) out.survival[v] += pw;
    out.final_w = std::move(states);
    return out;
}

struct HypothesisReport {
    std::size_t max_edge_size = 0;
    std::size_t r_max = 0;
    bool edge_size_ok = false;
    double sparsity_max = 0;   // max P(v in e_i) * sqrt(#I_j)
    bool sparsity_ok = false;
    double codegree_max = 0;   // max over j, v1 != v2 of sum_{i in I_j} P(v1, v2 in e_i)
    bool codegree_ok = false;
    double degree_ratio_max = 0;  // max d_j(v) / P_{j-1}(v)
    bool degree_ok = false;
    double min_P = 1;
    bool kappa_ok = false;
    double log_delta = 0;
    double log_delta_bound = 0;   // 10^{m+2} (A log kappa - log C0 - A D)
    bool delta_small_ok = false;

    bool all_but_delta_ok() const { return edge_size_ok && sparsity_ok && codegree_ok && degree_ok && kappa_ok; }
    bool all_ok() const { return all_but_delta_ok() && delta_small_ok; }
};

HypothesisReport check_hypotheses(const CoverInstance& inst, const DegreeProfile& profile);
HypothesisReport check_hypotheses(const CoverInstance& inst);

// n_j = ceil(n_1 e^{(1-j)/k}) for j = 1..m.
std::vector<std::size_t> round_sizes(std::size_t n1, double k, std::size_t m);

// Instance with sum(counts) indices, each drawing uniformly from `edges`;
// index block j forms round j.
CoverInstance uniform_instance(std::size_t num_vertices, const std::vector<Edge>& edges,
                               const std::vector<std::size_t>& counts, const CoverParams& params = {});

struct UniformCoverResult {
    std::vector<Edge> edges_used;   // nonempty chosen edges
    std::vector<VertexId> leftover;
    double expected_leftover = 0;   // sum over v of P_m(v)
    CoverResult detail;
};

UniformCoverResult cover_uniform(std::size_t num_vertices, const std::vector<Edge>& edges,
                                 const std::vector<std::size_t>& counts, std::uint64_t seed);

// Pseudorandom near-regular r-uniform hypergraph: every vertex lies in exactly
// `degree` edges (up to collisions removed); deterministic in seed.
std::vector<Edge> near_regular_hypergraph(std::size_t num_vertices, std::size_t edge_size, std::size_t degree,
                                          std::uint64_t seed);

// Instance file format.
std::string instance_to_json(const CoverInstance& inst);
CoverInstance instance_from_json(const std::string& text);

// "round,index,X_i,F_i,W_size" rows.
std::string round_log_csv(const std::vector<RoundLogRow>& log);

}  // namespace gapcover
