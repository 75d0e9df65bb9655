// strategies.cpp

#include "gapcover/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "gapcover/oracle.hpp"
#include "gapcover/rng.hpp"
#include "gapcover/weights.hpp"
#include "json.hpp"

namespace gapcover {

namespace {

double log2_of(double x) { return std::log(std::log(x)); }
double log3_of(double x) { return std::log(std::log(std::log(x))); }

template <class Enum>
Enum parse_enum(const std::string& s, std::initializer_list<std::pair<const char*, Enum>> names, const char* what) {
    for (const auto& [name, value] : names)
        if (s == name) return value;
    throw std::invalid_argument(std::string("unknown ") + what + ": " + s);
}

std::vector<std::uint64_t> primes_in(double lo, double hi) {
    std::vector<std::uint64_t> out;
    if (hi < 2) return out;
    for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::floor(hi))))
        if (static_cast<double>(p) > lo) out.push_back(p);
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double hi = v[mid];
    if (v.size() % 2) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(ThresholdMode m) { return m == ThresholdMode::PaperFormula ? "paper-formula" : "desk-preset"; }

std::string to_string(Stage3Method m) {
    switch (m) {
        case Stage3Method::Independent: return "independent";
        case Stage3Method::Greedy: return "greedy";
        case Stage3Method::Nibble: return "nibble";
    }
    return "";
}

std::string to_string(EdgeWeighting w) { return w == EdgeWeighting::Uniform ? "uniform" : "weights"; }

ThresholdMode parse_threshold_mode(const std::string& s) {
    return parse_enum<ThresholdMode>(s, {{"paper-formula", ThresholdMode::PaperFormula}, {"desk-preset", ThresholdMode::DeskPreset}},
                                     "threshold mode");
}

Stage3Method parse_stage3_method(const std::string& s) {
    return parse_enum<Stage3Method>(
        s, {{"independent", Stage3Method::Independent}, {"greedy", Stage3Method::Greedy}, {"nibble", Stage3Method::Nibble}},
        "stage-3 method");
}

EdgeWeighting parse_edge_weighting(const std::string& s) {
    return parse_enum<EdgeWeighting>(s, {{"uniform", EdgeWeighting::Uniform}, {"weights", EdgeWeighting::SieveWeights}},
                                     "edge weighting");
}

void StagedConfig::validate() const {
    if (x < 100) throw std::invalid_argument("x must be at least 100");
    if (!(c > 0)) throw std::invalid_argument("c must be positive");
    if (!(0 < v_exp && v_exp < z_exp && z_exp < 0.5)) throw std::invalid_argument("need 0 < v_exp < z_exp < 1/2");
    if (!(C_extra > 1)) throw std::invalid_argument("C_extra must exceed 1");
    if (r != 0 && r < 1) throw std::invalid_argument("r must be positive (or 0 for the default)");
    if (nibble_rounds < 1) throw std::invalid_argument("nibble_rounds must be at least 1");
    if (!(atypical_tolerance > 0)) throw std::invalid_argument("atypical_tolerance must be positive");
}

std::uint64_t target_y(std::uint64_t x, double c) {
    const double xd = static_cast<double>(x);
    const double v = c * xd * std::log(xd) * std::max(1.0, log3_of(xd)) / std::max(1.0, log2_of(xd));
    return static_cast<std::uint64_t>(std::ceil(v));
}

int default_r(std::uint64_t x) {
    const double r = std::floor(std::pow(std::log(static_cast<double>(x)), 0.2));
    return std::max(2, static_cast<int>(r));
}

PaperThresholdLogs paper_threshold_logs(double log_x) {
    const double l2 = std::log(log_x);
    const double l3 = std::log(l2);
    return {20.0 * l2, log_x * l3 / (4.0 * l2)};
}

Thresholds thresholds(const StagedConfig& cfg) {
    cfg.validate();
    Thresholds t;
    const double xd = static_cast<double>(cfg.x);
    t.y = target_y(cfg.x, cfg.c);
    t.r = cfg.r ? cfg.r : default_r(cfg.x);
    if (cfg.mode == ThresholdMode::DeskPreset) {
        t.v = std::pow(xd, cfg.v_exp);
        t.z = std::pow(xd, cfg.z_exp);
    } else {
        const auto logs = paper_threshold_logs(std::log(xd));
        const double cap = std::log(xd) / 4.0;
        if (logs.log_v > cap) {
            t.v_clamped = true;
            t.warnings.push_back("log^20 x exceeds x^(1/4); v clamped to x^(1/4)");
        }
        t.v = std::exp(std::min(logs.log_v, cap));
        t.z = std::exp(logs.log_z);
        if (t.v >= t.z) t.warnings.push_back("v >= z; the random stage has no primes");
    }
    return t;
}

ResidueSystem stage1_zero_classes(const StagedConfig& cfg) {
    const Thresholds t = thresholds(cfg);
    ResidueSystem sys;
    for (std::uint64_t p : primes_up_to(cfg.x / 2)) {
        const double pd = static_cast<double>(p);
        if (pd <= t.v || pd > t.z) sys.add(p, 0);
    }
    return sys;
}

std::vector<std::uint64_t> small_sieve_primes(const StagedConfig& cfg) {
    const Thresholds t = thresholds(cfg);
    return primes_in(t.v, std::min(t.z, static_cast<double>(cfg.x / 2)));
}

ResidueSystem stage2_random_small(const StagedConfig& cfg) {
    ResidueSystem sys;
    for (std::uint64_t s : small_sieve_primes(cfg)) sys.add(s, RandomStream(cfg.seed, StreamTag::Stage2, s).below(s));
    return sys;
}

double sigma(const StagedConfig& cfg) {
    double v = 1.0;
    for (std::uint64_t s : small_sieve_primes(cfg)) v *= 1.0 - 1.0 / static_cast<double>(s);
    return v;
}

SurvivorSplit survivors_after_small(const StagedConfig& cfg, const ResidueSystem& sys12) {
    const Thresholds t = thresholds(cfg);
    SurvivorSplit out;
    const auto lo = static_cast<std::int64_t>(cfg.x) + 1;
    const auto hi = static_cast<std::int64_t>(t.y);
    out.survivors = sift(sys12, lo, hi);
    const auto smooth = smooth_flags(cfg.x + 1, t.y, static_cast<std::uint64_t>(std::floor(t.z)));
    for (std::int64_t n : out.survivors.survivors()) {
        if (is_prime_u64(static_cast<std::uint64_t>(n)))
            ++out.primes;
        else if (smooth[static_cast<std::size_t>(n - lo)])
            ++out.smooth;
        else
            ++out.other;
    }
    return out;
}

std::map<std::int64_t, Edge> edges_for_prime(const AdmissibleTuple& h, std::uint64_t p,
                                             const std::vector<std::int64_t>& survivors) {
    const auto pp = static_cast<std::int64_t>(p);
    // Survivors are visited in ascending order, so each edge comes out sorted.
    std::map<std::int64_t, Edge> edges;
    for (std::size_t k = 0; k < survivors.size(); ++k)
        for (std::int64_t off : h.offsets) edges[survivors[k] - off * pp].push_back(static_cast<VertexId>(k));
    return edges;
}

EdgeModel build_edge_distributions(const StagedConfig& cfg, const std::vector<std::int64_t>& survivors) {
    const Thresholds t = thresholds(cfg);
    EdgeModel model;
    model.vertices = survivors;
    model.tuple = admissible_tuple(t.r);
    model.primes = primes_in(static_cast<double>(cfg.x) / 2.0, static_cast<double>(cfg.x));
    model.n_values.resize(model.primes.size());
    model.instance.num_vertices = survivors.size();
    model.instance.params.r_max = model.tuple.size();
    model.instance.dist.resize(model.primes.size());

    std::optional<PairWeights> pw;
    if (cfg.weighting == EdgeWeighting::SieveWeights) pw.emplace(model.tuple, default_R(static_cast<double>(cfg.x)), t.y);
    const auto y = static_cast<std::int64_t>(t.y);

    bool any = false;
    for (std::size_t i = 0; i < model.primes.size(); ++i) {
        auto edges = edges_for_prime(model.tuple, model.primes[i], survivors);

        auto dist = std::make_shared<EdgeDistribution>();
        if (pw) {
            // A one-entry lambda table makes w(p, .) constant on [-y, y].
            double total = 0;
            if (pw->base().support().size() == 1)
                total = static_cast<double>(2 * y + 1) * (*pw)(model.primes[i], 0);
            else
                for (std::int64_t n = -y; n <= y; ++n) total += (*pw)(model.primes[i], n);
            if (total > 0)
                for (auto& [n, e] : edges) {
                    const double w = (*pw)(model.primes[i], n);
                    if (w > 0) {
                        dist->support.push_back({std::move(e), w / total});
                        model.n_values[i].push_back(n);
                    }
                }
        } else {
            const double prob = edges.empty() ? 0.0 : 1.0 / static_cast<double>(edges.size());
            for (auto& [n, e] : edges) {
                dist->support.push_back({std::move(e), prob});
                model.n_values[i].push_back(n);
            }
        }
        any = any || !dist->support.empty();
        model.instance.dist[i] = std::move(dist);
    }
    if (!any) throw NoEdgesError("every edge is empty for every prime in (x/2, x]");
    model.instance.validate();
    return model;
}

std::size_t codegree_violations(const EdgeModel& model) {
    std::map<std::pair<VertexId, VertexId>, std::uint64_t> owner;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < model.primes.size(); ++i)
        for (const auto& o : model.instance.dist[i]->support)
            for (std::size_t a = 0; a < o.edge.size(); ++a)
                for (std::size_t b = a + 1; b < o.edge.size(); ++b) {
                    auto [it, fresh] = owner.emplace(std::make_pair(o.edge[a], o.edge[b]), model.primes[i]);
                    if (!fresh && it->second != model.primes[i]) ++bad;
                }
    return bad;
}

namespace {

// X_p: probability that the whole tuple n + h_i p lands on survivors.
std::vector<double> full_edge_probability(const EdgeModel& model) {
    std::vector<double> out(model.primes.size(), 0.0);
    for (std::size_t i = 0; i < model.primes.size(); ++i)
        for (const auto& o : model.instance.dist[i]->support)
            if (o.edge.size() == model.tuple.size()) out[i] += o.prob;
    return out;
}

std::uint64_t class_of(std::int64_t n, std::uint64_t p) { return mod_floor(n, p); }

void greedy_select(const StagedConfig& cfg, const EdgeModel& model, const std::vector<std::size_t>& active,
                   Stage3Selection& sel) {
    // Seeded Fisher-Yates so the order does not depend on the standard library.
    std::vector<std::size_t> order = active;
    RandomStream rng(cfg.seed, StreamTag::Stage3Greedy, 0);
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);

    std::vector<std::uint8_t> alive(model.vertices.size(), 1);
    for (std::size_t i : order) {
        const std::uint64_t p = model.primes[i];
        std::vector<std::uint8_t> allowed(p, 0);
        for (std::size_t t = 0; t < model.n_values[i].size(); ++t)
            if (model.instance.dist[i]->support[t].prob > 0) allowed[class_of(model.n_values[i][t], p)] = 1;
        std::vector<std::size_t> gain(p, 0);
        for (std::size_t v = 0; v < alive.size(); ++v)
            if (alive[v]) ++gain[class_of(model.vertices[v], p)];
        std::size_t best = 0;
        std::optional<std::uint64_t> best_a;
        for (std::uint64_t a = 0; a < p; ++a)
            if (allowed[a] && gain[a] > best) {
                best = gain[a];
                best_a = a;
            }
        if (!best_a) continue;
        sel.classes[i] = best_a;
        for (std::size_t v = 0; v < alive.size(); ++v)
            if (alive[v] && class_of(model.vertices[v], p) == *best_a) alive[v] = 0;
    }
}

// Disjoint consecutive subintervals of [0, 1] with lengths 5^{1-j} log 5 / C,
// scaled down to fit when their total exceeds 1. Returns the right endpoints.
std::vector<double> nibble_intervals(double C, std::size_t m) {
    std::vector<double> len(m);
    double total = 0;
    for (std::size_t j = 1; j <= m; ++j) {
        len[j - 1] = std::pow(5.0, 1.0 - static_cast<double>(j)) * std::log(5.0) / C;
        total += len[j - 1];
    }
    const double scale = total > 1.0 ? 1.0 / total : 1.0;
    std::vector<double> ends(m);
    double acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
        acc += len[j] * scale;
        ends[j] = acc;
    }
    if (scale != 1.0) ends.back() = 1.0;
    return ends;
}

}  // namespace

Stage3Selection stage3_select(const StagedConfig& cfg, const EdgeModel& model) {
    const std::size_t n = model.primes.size();
    Stage3Selection sel;
    sel.classes.assign(n, std::nullopt);

    std::vector<std::uint8_t> usable(n, 1);
    if (cfg.filter_atypical) {
        const auto X = full_edge_probability(model);
        std::vector<double> positive;
        for (double v : X)
            if (v > 0) positive.push_back(v);
        const double med = median(positive);
        for (std::size_t i = 0; i < n; ++i)
            if (!(med > 0) || std::fabs(X[i] / med - 1.0) > cfg.atypical_tolerance) {
                usable[i] = 0;
                ++sel.filtered;
            }
    }
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i)
        if (usable[i]) active.push_back(i);

    // C: median over vertices of the total degree of the usable primes.
    {
        CoverInstance all = model.instance;
        all.rounds.clear();
        if (!active.empty()) all.rounds.push_back(active);
        const DegreeProfile prof = degree_profile(all);
        if (!active.empty()) sel.degree_median = median(prof.d[1]);
    }

    auto take = [&](const CoverResult& res) {
        for (std::size_t i : active)
            if (res.chosen[i] != kNoEdge) sel.classes[i] = class_of(model.n_values[i][res.chosen[i]], model.primes[i]);
    };

    switch (cfg.stage3) {
        case Stage3Method::Independent: {
            CoverInstance inst = model.instance;
            inst.rounds.clear();
            if (!active.empty()) inst.rounds.push_back(active);
            sel.round_sizes = {active.size()};
            take(run_independent(inst, stream_seed(cfg.seed, StreamTag::Stage3Independent, 0)));
            break;
        }
        case Stage3Method::Greedy:
            sel.round_sizes = {active.size()};
            greedy_select(cfg, model, active, sel);
            break;
        case Stage3Method::Nibble: {
            if (!(sel.degree_median > 0)) {
                sel.unscheduled = active.size();
                break;
            }
            const auto ends = nibble_intervals(sel.degree_median, cfg.nibble_rounds);
            std::vector<std::vector<std::size_t>> rounds(ends.size());
            for (std::size_t i : active) {
                const double t = RandomStream(cfg.seed, StreamTag::Stage3Rounds, i).uniform();
                const auto j = static_cast<std::size_t>(std::upper_bound(ends.begin(), ends.end(), t) - ends.begin());
                if (j < rounds.size())
                    rounds[j].push_back(i);
                else
                    ++sel.unscheduled;
            }
            CoverInstance inst = model.instance;
            inst.rounds.clear();
            for (auto& r : rounds) {
                sel.round_sizes.push_back(r.size());
                if (!r.empty()) inst.rounds.push_back(std::move(r));
            }
            const DegreeProfile prof = degree_profile(inst);
            const double tol = default_tolerance(inst.params.delta, inst.num_rounds());
            const CoverResult res = run_cover(inst, prof, stream_seed(cfg.seed, StreamTag::Stage3Nibble, 0), tol);
            sel.expected_leftover = res.expected_leftover;
            take(res);
            break;
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        if (usable[i] && !sel.classes[i]) ++sel.skipped;
    std::vector<std::uint8_t> alive(model.vertices.size(), 1);
    for (std::size_t i = 0; i < n; ++i)
        if (sel.classes[i])
            for (std::size_t v = 0; v < alive.size(); ++v)
                if (class_of(model.vertices[v], model.primes[i]) == *sel.classes[i]) alive[v] = 0;
    sel.model_leftover = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
    return sel;
}

FinalMatching final_matching(const StagedConfig& cfg, const ResidueSystem& sys123, std::uint64_t y) {
    cfg.validate();
    const auto limit = static_cast<std::uint64_t>(std::floor(cfg.C_extra * static_cast<double>(cfg.x)));
    std::uint64_t cursor = cfg.x;
    auto next_prime = [&cursor] {
        do ++cursor;
        while (!is_prime_u64(cursor));
        return cursor;
    };
    constexpr std::int64_t kChunk = std::int64_t{1} << 16;

    FinalMatching out;
    ResidueSystem scratch;  // also holds primes past the budget while counting the shortfall
    std::size_t needed = 0;
    bool exceeded = false;
    const auto hi_y = static_cast<std::int64_t>(y);

    // Returns the first survivor that could not be served, if any.
    auto scan = [&](std::int64_t lo, std::int64_t hi, bool inside) -> std::optional<std::int64_t> {
        SiftedInterval s = sift(sys123, lo, hi);
        for (const auto& [p, a] : scratch.entries()) s.strike_class(p, a);
        for (std::int64_t n = lo; n <= hi; ++n) {
            if (!s.survives(n)) continue;
            if (!inside && cursor >= limit) return n;
            const std::uint64_t p = next_prime();
            if (p > limit) {
                if (!inside) return n;
                exceeded = true;
            }
            ++needed;
            const std::uint64_t a = mod_floor(n, p);
            scratch.add(p, a);
            s.strike_class(p, a);
            if (!exceeded) {
                out.extension.add(p, a);
                ++(inside ? out.residual : out.beyond_y);
            }
        }
        return std::nullopt;
    };

    for (std::int64_t lo = static_cast<std::int64_t>(cfg.x) + 1; lo <= hi_y; lo += kChunk)
        scan(lo, std::min(hi_y, lo + kChunk - 1), true);
    if (exceeded) {
        const double required = static_cast<double>(cursor) / static_cast<double>(cfg.x);
        std::ostringstream msg;
        msg << "final matching needs " << needed << " fresh primes; budget (x, " << limit << "] is too small, C_extra >= "
            << required << " required";
        throw BudgetExceeded(msg.str(), needed, required);
    }
    out.achieved_y = y;
    if (cfg.extend_beyond_y)
        for (std::int64_t lo = hi_y + 1;; lo += kChunk)
            if (auto stop = scan(lo, lo + kChunk - 1, false)) {
                out.achieved_y = static_cast<std::uint64_t>(*stop - 1);
                break;
            }
    return out;
}

PipelineResult run_pipeline(const StagedConfig& cfg) {
    const Thresholds th = thresholds(cfg);
    PipelineReport rep;
    rep.config = cfg;
    rep.thresholds = th;
    rep.tuple = admissible_tuple(th.r);
    rep.sigma = sigma(cfg);

    const auto lo = static_cast<std::int64_t>(cfg.x) + 1;
    const auto hi = static_cast<std::int64_t>(th.y);
    const ResidueSystem sys1 = stage1_zero_classes(cfg);
    ResidueSystem sys12 = sys1;
    sys12.merge(stage2_random_small(cfg));

    const SiftedInterval s0 = sift(ResidueSystem{}, lo, hi);
    const SiftedInterval s1 = sift(sys1, lo, hi);
    const SurvivorSplit split = survivors_after_small(cfg, sys12);
    rep.interval = s0.count();
    rep.after_stage1 = s1.count();
    rep.after_stage2 = split.survivors.count();
    rep.stage2_primes = split.primes;
    rep.stage2_smooth = split.smooth;
    rep.stage2_other = split.other;
    rep.expected_prime_survivors = rep.sigma * static_cast<double>(primes_in(static_cast<double>(cfg.x), static_cast<double>(th.y)).size());
    const auto zf = static_cast<std::uint64_t>(std::floor(th.z));
    rep.smooth_in_Q = smooth_count(th.y, zf) - smooth_count(cfg.x, zf);

    ResidueSystem sys123 = sys12;
    const auto survivors = split.survivors.survivors();
    rep.stage3_primes = primes_in(static_cast<double>(cfg.x) / 2.0, static_cast<double>(cfg.x)).size();
    if (!survivors.empty()) {
        const EdgeModel model = build_edge_distributions(cfg, survivors);
        rep.stage3 = stage3_select(cfg, model);
        for (std::size_t i = 0; i < model.primes.size(); ++i)
            if (rep.stage3.classes[i]) sys123.add(model.primes[i], *rep.stage3.classes[i]);
    }
    const SiftedInterval s3 = sift(sys123, lo, hi);
    rep.after_stage3 = s3.count();

    const FinalMatching fm = final_matching(cfg, sys123, th.y);
    ResidueSystem combined = sys123;
    combined.merge(fm.extension);
    const SiftedInterval s4 = sift(combined, lo, hi);
    rep.after_final = s4.count();
    rep.extra_primes_used = fm.residual;
    rep.extension_primes = fm.beyond_y;
    rep.achieved_y = fm.achieved_y;

    if (!(s1.subset_of(s0) && split.survivors.subset_of(s1) && s3.subset_of(split.survivors) && s4.subset_of(s3)))
        throw std::logic_error("run_pipeline: survivor sets grew between stages");
    if (rep.after_final != 0) throw std::logic_error("run_pipeline: final matching left survivors in (x, y]");
    const auto end = static_cast<std::int64_t>(fm.achieved_y);
    if (first_uncovered(combined, lo, end) || sift(combined, lo, end).count() != 0)
        throw std::logic_error("run_pipeline: combined system does not cover (x, achieved_y]");
    rep.verified = true;

    const double xd = static_cast<double>(cfg.x);
    rep.target_formula = 80.0 * cfg.c * xd * log2_of(xd) / std::log(xd);
    rep.residual_ratio = static_cast<double>(rep.after_stage3) / rep.target_formula;
    rep.achieved_ratio = static_cast<double>(rep.achieved_y - cfg.x) / static_cast<double>(th.y - cfg.x);
    return {std::move(rep), std::move(combined)};
}

std::string PipelineReport::json() const {
    nlohmann::ordered_json j;
    j["x"] = config.x;
    j["c"] = config.c;
    j["mode"] = to_string(config.mode);
    j["v_exp"] = config.v_exp;
    j["z_exp"] = config.z_exp;
    j["seed"] = config.seed;
    j["stage3"] = to_string(config.stage3);
    j["weighting"] = to_string(config.weighting);
    j["C_extra"] = config.C_extra;
    j["nibble_rounds"] = config.nibble_rounds;
    j["filter_atypical"] = config.filter_atypical;
    j["extend_beyond_y"] = config.extend_beyond_y;
    j["v"] = thresholds.v;
    j["z"] = thresholds.z;
    j["y"] = thresholds.y;
    j["r"] = thresholds.r;
    j["tuple"] = tuple.offsets;
    j["warnings"] = thresholds.warnings;
    j["sigma"] = sigma;
    j["survivors"] = {{"interval", interval},
                      {"after_stage1", after_stage1},
                      {"after_stage2", after_stage2},
                      {"after_stage3", after_stage3},
                      {"after_final", after_final}};
    j["stage2_split"] = {{"primes", stage2_primes}, {"smooth", stage2_smooth}, {"other", stage2_other}};
    j["expected_prime_survivors"] = expected_prime_survivors;
    j["smooth_in_Q"] = smooth_in_Q;
    j["stage3_detail"] = {{"primes", stage3_primes},
                          {"skipped", stage3.skipped},
                          {"filtered", stage3.filtered},
                          {"unscheduled", stage3.unscheduled},
                          {"round_sizes", stage3.round_sizes},
                          {"degree_median", stage3.degree_median},
                          {"model_leftover", stage3.model_leftover},
                          {"expected_leftover", stage3.expected_leftover}};
    j["extra_primes_used"] = extra_primes_used;
    j["extension_primes"] = extension_primes;
    j["achieved_y"] = achieved_y;
    j["target_formula"] = target_formula;
    j["residual_ratio"] = residual_ratio;
    j["achieved_ratio"] = achieved_ratio;
    j["verified"] = verified;
    return j.dump(2) + "\n";
}

std::string PipelineReport::csv_header() {
    return "x,seed,method,weighting,y,sigma,after_stage1,after_stage2,after_stage3,extra_primes_used,extension_primes,"
           "achieved_y\n";
}

std::string PipelineReport::csv_row() const {
    std::ostringstream out;
    out.precision(17);
    out << config.x << ',' << config.seed << ',' << to_string(config.stage3) << ',' << to_string(config.weighting) << ','
        << thresholds.y << ',' << sigma << ',' << after_stage1 << ',' << after_stage2 << ',' << after_stage3 << ','
        << extra_primes_used << ',' << extension_primes << ',' << achieved_y << '\n';
    return out.str();
}

}  // namespace gapcover
