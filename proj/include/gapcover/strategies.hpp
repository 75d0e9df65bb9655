// strategies.hpp
// The staged sieve pipeline. For a given x it builds one residue class per
// prime so that (x, y] is fully covered:
//
//   stage 1  a_p = 0 for p <= v and for z < p <= x/2
//   stage 2  a_s uniform at random for s in S = (v, z]
//   stage 3  for p in P = (x/2, x] pick n_p so that the edge
//            e_p(n_p) = {n_p + h_i p} meets the stage-2 survivors of Q = (x, y],
//            then set a_p = n_p mod p
//   final    each survivor left in (x, y] gets its own fresh prime p' in
//            (x, C_extra x] with a_{p'} = n mod p'
//
// Desk presets replace the asymptotic thresholds by powers of x.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapcover/nibble.hpp"
#include "gapcover/primes.hpp"
#include "gapcover/residue_system.hpp"

namespace gapcover {

enum class ThresholdMode { PaperFormula, DeskPreset };
enum class Stage3Method { Independent, Greedy, Nibble };
enum class EdgeWeighting { Uniform, SieveWeights };

std::string to_string(ThresholdMode m);
std::string to_string(Stage3Method m);
std::string to_string(EdgeWeighting w);
// Throw std::invalid_argument on unknown names.
ThresholdMode parse_threshold_mode(const std::string& s);
Stage3Method parse_stage3_method(const std::string& s);
EdgeWeighting parse_edge_weighting(const std::string& s);

struct StagedConfig {
    std::uint64_t x = 5000;
    double c = 1.0;
    ThresholdMode mode = ThresholdMode::DeskPreset;
    double v_exp = 0.10;
    double z_exp = 0.35;
    std::uint64_t seed = 0;
    Stage3Method stage3 = Stage3Method::Nibble;
    double C_extra = 10.0;
    EdgeWeighting weighting = EdgeWeighting::Uniform;
    int r = 0;                       // tuple length, 0 for max(2, floor(log^{1/5} x))
    std::size_t nibble_rounds = 3;
    bool filter_atypical = false;    // skip primes whose X_p is far from the median
    double atypical_tolerance = 0.5; // relative deviation allowed when filtering
    bool extend_beyond_y = true;     // spend the leftover prime budget past y

    // Throws std::invalid_argument when an invariant fails.
    void validate() const;
};

struct Thresholds {
    double v = 0;
    double z = 0;
    std::uint64_t y = 0;
    int r = 2;
    bool v_clamped = false;          // asymptotic mode: log^20 x replaced by x^{1/4}
    std::vector<std::string> warnings;
};

// y = ceil(c x log x max(1, log_3 x) / max(1, log_2 x)).
std::uint64_t target_y(std::uint64_t x, double c);
int default_r(std::uint64_t x);
Thresholds thresholds(const StagedConfig& cfg);

// Natural logs of the unclamped asymptotic thresholds as functions of log x:
// log v = 20 log_2 x and log z = log x log_3 x / (4 log_2 x).
struct PaperThresholdLogs {
    double log_v = 0;
    double log_z = 0;
};
PaperThresholdLogs paper_threshold_logs(double log_x);

ResidueSystem stage1_zero_classes(const StagedConfig& cfg);
ResidueSystem stage2_random_small(const StagedConfig& cfg);
// Primes s with v < s <= z.
std::vector<std::uint64_t> small_sieve_primes(const StagedConfig& cfg);
// prod over s in S of (1 - 1/s).
double sigma(const StagedConfig& cfg);

struct SurvivorSplit {
    SiftedInterval survivors;        // over (x, y]
    std::size_t primes = 0;
    std::size_t smooth = 0;          // z-smooth survivors
    std::size_t other = 0;
};
SurvivorSplit survivors_after_small(const StagedConfig& cfg, const ResidueSystem& sys12);

// Stage-3 hypergraph: vertex k is survivor vertices[k]; index i is prime
// primes[i]; outcome t of index i is n = n_values[i][t].
struct EdgeModel {
    std::vector<std::int64_t> vertices;
    std::vector<std::uint64_t> primes;
    AdmissibleTuple tuple;
    std::vector<std::vector<std::int64_t>> n_values;
    CoverInstance instance;          // rounds left empty
};

class NoEdgesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// n -> e_p(n) = {k : survivors[k] = n + h_i p for some i}, for every n with a
// nonempty edge. survivors must be ascending.
std::map<std::int64_t, Edge> edges_for_prime(const AdmissibleTuple& h, std::uint64_t p,
                                             const std::vector<std::int64_t>& survivors);

// Throws NoEdgesError when every edge is empty for every prime.
EdgeModel build_edge_distributions(const StagedConfig& cfg, const std::vector<std::int64_t>& survivors);

// Pairs of vertices that share an edge under more than one prime.
std::size_t codegree_violations(const EdgeModel& model);

struct Stage3Selection {
    std::vector<std::optional<std::uint64_t>> classes;  // by index; nullopt for skip
    std::size_t skipped = 0;
    std::size_t filtered = 0;        // removed by the atypical-X_p filter
    std::size_t unscheduled = 0;     // nibble: t_p outside every interval
    std::vector<std::size_t> round_sizes;
    double degree_median = 0;        // C: median over vertices of sum_p P(q in e_p)
    std::size_t model_leftover = 0;  // vertices not covered by any chosen class
    double expected_leftover = 0;    // nibble: sum over v of P_m(v)
};

Stage3Selection stage3_select(const StagedConfig& cfg, const EdgeModel& model);

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::size_t needed, double required_C)
        : std::runtime_error(what), needed(needed), required_C(required_C) {}
    std::size_t needed;
    double required_C;
};

struct FinalMatching {
    ResidueSystem extension;
    std::size_t residual = 0;        // primes spent inside (x, y]
    std::size_t beyond_y = 0;        // primes spent past y
    std::uint64_t achieved_y = 0;
};

// Covers (x, y] with fresh primes, then (if enabled) keeps going past y while
// the budget lasts. Throws BudgetExceeded when (x, y] cannot be finished.
FinalMatching final_matching(const StagedConfig& cfg, const ResidueSystem& sys123, std::uint64_t y);

struct PipelineReport {
    StagedConfig config;
    Thresholds thresholds;
    AdmissibleTuple tuple;
    double sigma = 0;
    std::size_t interval = 0;        // #(x, y]
    std::size_t after_stage1 = 0;
    std::size_t after_stage2 = 0;
    std::size_t after_stage3 = 0;
    std::size_t after_final = 0;
    std::size_t stage2_primes = 0;
    std::size_t stage2_smooth = 0;
    std::size_t stage2_other = 0;
    double expected_prime_survivors = 0;  // sigma * #(primes in Q)
    std::size_t smooth_in_Q = 0;          // all z-smooth n in (x, y]
    std::size_t stage3_primes = 0;        // #P
    Stage3Selection stage3;
    std::size_t extra_primes_used = 0;
    std::size_t extension_primes = 0;
    std::uint64_t achieved_y = 0;
    double target_formula = 0;            // 80 c x log_2 x / log x
    double residual_ratio = 0;            // after_stage3 / target_formula
    double achieved_ratio = 0;            // (achieved_y - x) / (y - x)
    bool verified = false;

    std::string json() const;
    static std::string csv_header();
    std::string csv_row() const;
};

struct PipelineResult {
    PipelineReport report;
    ResidueSystem system;
};

PipelineResult run_pipeline(const StagedConfig& cfg);

}  // namespace gapcover
