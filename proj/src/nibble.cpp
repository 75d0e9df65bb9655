#include "gapcover/nibble.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "gapcover/rng.hpp"

namespace gapcover {

void CoverInstance::validate() const {
    std::vector<std::uint8_t> seen(dist.size(), 0);
    for (std::size_t j = 0; j < rounds.size(); ++j) {
        if (rounds[j].empty()) throw std::invalid_argument("cover instance: round " + std::to_string(j + 1) + " is empty");
        for (std::size_t i : rounds[j]) {
            if (i >= dist.size()) throw std::invalid_argument("cover instance: index " + std::to_string(i) + " has no distribution");
            if (seen[i]) throw std::invalid_argument("cover instance: index " + std::to_string(i) + " appears in two rounds");
            seen[i] = 1;
        }
    }
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (!dist[i]) throw std::invalid_argument("cover instance: index " + std::to_string(i) + " has a null distribution");
        double total = 0;
        for (const auto& o : dist[i]->support) {
            if (!(o.prob >= 0)) throw std::invalid_argument("cover instance: negative probability at index " + std::to_string(i));
            total += o.prob;
            if (params.r_max && o.edge.size() > params.r_max)
                throw std::invalid_argument("cover instance: edge larger than r_max at index " + std::to_string(i));
            for (std::size_t k = 0; k < o.edge.size(); ++k) {
                if (o.edge[k] >= num_vertices) throw std::invalid_argument("cover instance: vertex out of range at index " + std::to_string(i));
                if (k && o.edge[k] <= o.edge[k - 1])
                    throw std::invalid_argument("cover instance: edge not sorted or repeats a vertex at index " + std::to_string(i));
            }
        }
        if (total > 1 + 1e-12) throw std::invalid_argument("cover instance: total mass exceeds 1 at index " + std::to_string(i));
    }
}

namespace {

// Distinct distributions of a round with their multiplicities, in first-seen order.
std::vector<std::pair<const EdgeDistribution*, std::size_t>> round_groups(const CoverInstance& inst, std::size_t j) {
    std::vector<std::pair<const EdgeDistribution*, std::size_t>> out;
    std::unordered_map<const EdgeDistribution*, std::size_t> pos;
    for (std::size_t i : inst.rounds[j - 1]) {
        const EdgeDistribution* d = inst.dist[i].get();
        auto [it, fresh] = pos.emplace(d, out.size());
        if (fresh) out.emplace_back(d, 0);
        ++out[it->second].second;
    }
    return out;
}

// P(v in e) for every vertex touched by the distribution.
std::unordered_map<VertexId, double> membership(const EdgeDistribution& d) {
    std::unordered_map<VertexId, double> m;
    for (const auto& o : d.support)
        for (VertexId v : o.edge) m[v] += o.prob;
    return m;
}

void advance_profile(DegreeProfile& prof) {
    const std::size_t j = prof.P.size();
    const auto& prev = prof.P[j - 1];
    const auto& d = prof.d[j];
    std::vector<double> next(prev.size());
    for (std::size_t v = 0; v < prev.size(); ++v) next[v] = prev[v] * std::exp(-d[v] / prev[v]);
    prof.P.push_back(std::move(next));
}

}  // namespace

DegreeProfile degree_profile(const CoverInstance& inst) {
    const std::size_t n = inst.num_vertices;
    DegreeProfile prof;
    prof.d.assign(1, std::vector<double>(n, 0.0));
    prof.P.assign(1, std::vector<double>(n, 1.0));
    for (std::size_t j = 1; j <= inst.num_rounds(); ++j) {
        std::vector<long double> acc(n, 0.0L);
        for (const auto& [d, mult] : round_groups(inst, j))
            for (const auto& [v, p] : membership(*d)) acc[v] += static_cast<long double>(mult) * p;
        prof.d.emplace_back(acc.begin(), acc.end());
        advance_profile(prof);
    }
    return prof;
}

DegreeProfile profile_from_degrees(std::vector<std::vector<double>> d) {
    if (d.empty()) throw std::invalid_argument("profile_from_degrees: d[0] must be present");
    DegreeProfile prof;
    const std::size_t n = d[0].size();
    prof.P.assign(1, std::vector<double>(n, 1.0));
    prof.d = std::move(d);
    for (std::size_t j = 1; j < prof.d.size(); ++j) {
        if (prof.d[j].size() != n) throw std::invalid_argument("profile_from_degrees: ragged degree table");
        advance_profile(prof);
    }
    return prof;
}

double normalization_factor(const CoverInstance& inst, const DegreeProfile& profile, std::size_t i, std::size_t j,
                            const std::vector<std::uint8_t>& alive) {
    const auto law = reweighted_law<double>(
        *inst.dist[i], [&](VertexId v) { return alive[v] != 0; }, [&](VertexId v) { return profile.P[j - 1][v]; }, 0.0);
    return law.x_value;
}

std::size_t NibbleState::w_size() const {
    return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), std::uint8_t{1}));
}

NibbleState initial_state(const CoverInstance& inst) {
    NibbleState s;
    s.alive.assign(inst.num_vertices, 1);
    s.chosen.assign(inst.num_indices(), kNoEdge);
    return s;
}

double default_tolerance(double delta, std::size_t m) {
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("default_tolerance: delta must lie in (0, 1)");
    // delta^(1/(3*10^m)) tends to 1 quickly; keep tol < 1 so X_i = 0 always fails.
    const double t = std::exp(std::log(delta) / (3.0 * std::pow(10.0, static_cast<double>(m))));
    return std::min(0.99, std::max(t, 0.1));
}

namespace {

// Law plus prefix sums for sampling.
struct Sampler {
    ReweightedLaw<double> law;
    std::vector<double> cumulative;  // over outcome weights, then the empty weight

    explicit Sampler(ReweightedLaw<double> l) : law(std::move(l)) {
        cumulative.reserve(law.weight.size() + 1);
        Accumulator<double> acc;
        for (double w : law.weight) {
            acc.add(w);
            cumulative.push_back(acc.value());
        }
        acc.add(law.empty_weight);
        cumulative.push_back(acc.value());
    }

    // Position in [0, outcome.size()]; the last slot is the empty edge.
    std::size_t draw(RandomStream& rng) const {
        const double u = rng.uniform() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t k = static_cast<std::size_t>(it - cumulative.begin());
        if (k >= cumulative.size()) k = cumulative.size() - 1;
        // Skip zero-width slots that upper_bound can only land on through rounding.
        while (k + 1 < cumulative.size() && k < law.weight.size() && law.weight[k] <= 0) ++k;
        return k;
    }
};

}  // namespace

void nibble_round(const CoverInstance& inst, const DegreeProfile& profile, NibbleState& state, std::size_t j,
                  std::uint64_t seed, double tol) {
    if (j != state.rounds_done + 1) throw std::logic_error("nibble_round: rounds must run in order");
    if (j > inst.num_rounds() || j > profile.num_rounds()) throw std::out_of_range("nibble_round: no such round");
    const auto& alive = state.alive;
    auto in_W = [&](VertexId v) { return alive[v] != 0; };
    auto P_prev = [&](VertexId v) { return profile.P[j - 1][v]; };

    // Every index of the round sees the same W, so laws are shared per distribution.
    std::unordered_map<const EdgeDistribution*, Sampler> laws;
    std::vector<VertexId> covered;
    const std::size_t log_start = state.log.size();
    for (std::size_t i : inst.rounds[j - 1]) {
        const EdgeDistribution& d = *inst.dist[i];
        auto it = laws.find(&d);
        if (it == laws.end()) it = laws.emplace(&d, Sampler(reweighted_law<double>(d, in_W, P_prev, tol))).first;
        const Sampler& s = it->second;
        state.log.push_back({j, i, s.law.x_value, s.law.passes, 0});
        if (!s.law.passes) {
            state.chosen[i] = kNoEdge;
            continue;
        }
        RandomStream rng(seed, StreamTag::NibbleRound, i);
        const std::size_t k = s.draw(rng);
        if (k >= s.law.outcome.size()) {
            state.chosen[i] = kNoEdge;
            continue;
        }
        const std::size_t idx = s.law.outcome[k];
        if (idx >= d.support.size()) throw std::logic_error("nibble_round: chosen edge outside the support");
        for (VertexId v : d.support[idx].edge) {
            if (!alive[v]) throw std::logic_error("nibble_round: chosen edge is not inside W");
            covered.push_back(v);
        }
        state.chosen[i] = idx;
    }
    for (VertexId v : covered) state.alive[v] = 0;
    state.rounds_done = j;
    const std::size_t w = state.w_size();
    for (std::size_t r = log_start; r < state.log.size(); ++r) state.log[r].w_size = w;
}

namespace {

CoverResult finish(const CoverInstance& inst, NibbleState&& s, double expected) {
    CoverResult out;
    out.chosen = std::move(s.chosen);
    out.alive = std::move(s.alive);
    out.log = std::move(s.log);
    for (std::size_t v = 0; v < inst.num_vertices; ++v)
        if (out.alive[v]) out.leftover.push_back(static_cast<VertexId>(v));
    out.expected_leftover = expected;
    return out;
}

double expected_leftover(const DegreeProfile& profile) {
    Accumulator<double> acc;
    for (double p : profile.P.back()) acc.add(p);
    return acc.value();
}

}  // namespace

CoverResult run_cover(const CoverInstance& inst, const DegreeProfile& profile, std::uint64_t seed, double tol) {
    NibbleState s = initial_state(inst);
    for (std::size_t j = 1; j <= inst.num_rounds(); ++j) nibble_round(inst, profile, s, j, seed, tol);
    return finish(inst, std::move(s), profile.P.empty() ? static_cast<double>(inst.num_vertices) : expected_leftover(profile));
}

CoverResult run_cover(const CoverInstance& inst, std::uint64_t seed) {
    const DegreeProfile profile = degree_profile(inst);
    const double tol = default_tolerance(inst.params.delta, inst.num_rounds());
    return run_cover(inst, profile, seed, tol);
}

CoverResult run_independent(const CoverInstance& inst, std::uint64_t seed) {
    NibbleState s = initial_state(inst);
    std::vector<VertexId> covered;
    for (const auto& round : inst.rounds) {
        for (std::size_t i : round) {
            const EdgeDistribution& d = *inst.dist[i];
            RandomStream rng(seed, StreamTag::Independent, i);
            const double u = rng.uniform();
            double acc = 0;
            for (std::size_t k = 0; k < d.support.size(); ++k) {
                acc += d.support[k].prob;
                if (u < acc) {
                    s.chosen[i] = k;
                    covered.insert(covered.end(), d.support[k].edge.begin(), d.support[k].edge.end());
                    break;
                }
            }
        }
    }
    for (VertexId v : covered) s.alive[v] = 0;
    s.rounds_done = inst.num_rounds();
    return finish(inst, std::move(s), 0.0);
}

HypothesisReport check_hypotheses(const CoverInstance& inst, const DegreeProfile& profile) {
    HypothesisReport r;
    for (const auto& d : inst.dist)
        for (const auto& o : d->support) r.max_edge_size = std::max(r.max_edge_size, o.edge.size());
    r.r_max = inst.params.r_max ? inst.params.r_max : r.max_edge_size;
    r.edge_size_ok = r.max_edge_size <= r.r_max;

    const std::size_t m = inst.num_rounds();
    for (std::size_t j = 1; j <= m; ++j) {
        const double root = std::sqrt(static_cast<double>(inst.rounds[j - 1].size()));
        std::unordered_map<std::uint64_t, double> pairs;
        for (const auto& [d, mult] : round_groups(inst, j)) {
            for (const auto& [v, p] : membership(*d)) r.sparsity_max = std::max(r.sparsity_max, p * root);
            for (const auto& o : d->support)
                for (std::size_t a = 0; a < o.edge.size(); ++a)
                    for (std::size_t b = a + 1; b < o.edge.size(); ++b)
                        pairs[(std::uint64_t{o.edge[a]} << 32) | o.edge[b]] += static_cast<double>(mult) * o.prob;
        }
        for (const auto& [key, s] : pairs) r.codegree_max = std::max(r.codegree_max, s);
        for (std::size_t v = 0; v < inst.num_vertices; ++v)
            r.degree_ratio_max = std::max(r.degree_ratio_max, profile.d[j][v] / profile.P[j - 1][v]);
    }
    for (const auto& row : profile.P)
        for (double p : row) r.min_P = std::min(r.min_P, p);

    const CoverParams& c = inst.params;
    r.sparsity_ok = r.sparsity_max <= c.delta;
    r.codegree_ok = r.codegree_max <= c.delta;
    r.degree_ok = r.degree_ratio_max <= c.D;
    r.kappa_ok = r.min_P >= c.kappa;
    r.log_delta = std::log(c.delta);
    r.log_delta_bound = std::pow(10.0, static_cast<double>(m + 2)) * (c.A * std::log(c.kappa) - std::log(c.C0) - c.A * c.D);
    r.delta_small_ok = r.log_delta <= r.log_delta_bound;
    return r;
}

HypothesisReport check_hypotheses(const CoverInstance& inst) { return check_hypotheses(inst, degree_profile(inst)); }

std::vector<std::size_t> round_sizes(std::size_t n1, double k, std::size_t m) {
    if (!(k > 0)) throw std::invalid_argument("round_sizes: k must be positive");
    std::vector<std::size_t> out;
    for (std::size_t j = 1; j <= m; ++j)
        out.push_back(static_cast<std::size_t>(std::ceil(static_cast<double>(n1) * std::exp((1.0 - static_cast<double>(j)) / k))));
    return out;
}

CoverInstance uniform_instance(std::size_t num_vertices, const std::vector<Edge>& edges,
                               const std::vector<std::size_t>& counts, const CoverParams& params) {
    if (edges.empty()) throw std::invalid_argument("uniform_instance: edge list is empty");
    auto d = std::make_shared<EdgeDistribution>();
    const double p = 1.0 / static_cast<double>(edges.size());
    for (const auto& e : edges) {
        Edge s = e;
        std::sort(s.begin(), s.end());
        d->support.push_back({std::move(s), p});
    }
    CoverInstance inst;
    inst.num_vertices = num_vertices;
    inst.params = params;
    std::size_t next = 0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        std::vector<std::size_t> round(c);
        std::iota(round.begin(), round.end(), next);
        next += c;
        inst.rounds.push_back(std::move(round));
    }
    inst.dist.assign(next, d);
    return inst;
}

UniformCoverResult cover_uniform(std::size_t num_vertices, const std::vector<Edge>& edges,
                                 const std::vector<std::size_t>& counts, std::uint64_t seed) {
    const CoverInstance inst = uniform_instance(num_vertices, edges, counts);
    UniformCoverResult out;
    out.detail = run_cover(inst, seed);
    for (std::size_t i = 0; i < inst.num_indices(); ++i)
        if (out.detail.chosen[i] != kNoEdge) out.edges_used.push_back(inst.dist[i]->support[out.detail.chosen[i]].edge);
    out.leftover = out.detail.leftover;
    out.expected_leftover = out.detail.expected_leftover;
    return out;
}

std::vector<Edge> near_regular_hypergraph(std::size_t num_vertices, std::size_t edge_size, std::size_t degree,
                                          std::uint64_t seed) {
    if (edge_size == 0) throw std::invalid_argument("near_regular_hypergraph: edge size must be positive");
    // Configuration model: shuffle degree copies of each vertex and cut into blocks.
    std::vector<VertexId> stubs;
    stubs.reserve(num_vertices * degree);
    for (std::size_t v = 0; v < num_vertices; ++v)
        for (std::size_t c = 0; c < degree; ++c) stubs.push_back(static_cast<VertexId>(v));
    RandomStream rng(seed, StreamTag::Instance, 0);
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
    std::vector<Edge> edges;
    for (std::size_t s = 0; s + edge_size <= stubs.size(); s += edge_size) {
        Edge e(stubs.begin() + static_cast<std::ptrdiff_t>(s), stubs.begin() + static_cast<std::ptrdiff_t>(s + edge_size));
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) continue;
        edges.push_back(std::move(e));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::string instance_to_json(const CoverInstance& inst) {
    nlohmann::ordered_json j;
    j["vertices"] = inst.num_vertices;
    j["rounds"] = inst.rounds;
    nlohmann::ordered_json dist = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < inst.dist.size(); ++i) {
        auto entries = nlohmann::ordered_json::array();
        for (const auto& o : inst.dist[i]->support) entries.push_back({o.edge, o.prob});
        dist[std::to_string(i)] = std::move(entries);
    }
    j["dist"] = std::move(dist);
    const CoverParams& p = inst.params;
    j["params"] = {{"delta", p.delta}, {"r_max", p.r_max}, {"A", p.A}, {"D", p.D}, {"kappa", p.kappa}, {"C0", p.C0}};
    return j.dump();
}

CoverInstance instance_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("cover instance file: ") + e.what());
    }
    CoverInstance inst;
    try {
        inst.num_vertices = j.at("vertices").get<std::size_t>();
        inst.rounds = j.at("rounds").get<std::vector<std::vector<std::size_t>>>();
        const auto& dist = j.at("dist");
        std::size_t count = 0;
        for (const auto& [key, value] : dist.items()) count = std::max(count, static_cast<std::size_t>(std::stoull(key)) + 1);
        for (const auto& round : inst.rounds)
            for (std::size_t i : round) count = std::max(count, i + 1);
        inst.dist.assign(count, nullptr);
        auto empty = std::make_shared<EdgeDistribution>();
        for (std::size_t i = 0; i < count; ++i) inst.dist[i] = empty;
        for (const auto& [key, value] : dist.items()) {
            auto d = std::make_shared<EdgeDistribution>();
            for (const auto& entry : value) {
                Outcome o;
                o.edge = entry.at(0).get<Edge>();
                o.prob = entry.at(1).get<double>();
                d->support.push_back(std::move(o));
            }
            inst.dist[static_cast<std::size_t>(std::stoull(key))] = std::move(d);
        }
        if (j.contains("params")) {
            const auto& p = j["params"];
            inst.params.delta = p.value("delta", inst.params.delta);
            inst.params.r_max = p.value("r_max", inst.params.r_max);
            inst.params.A = p.value("A", inst.params.A);
            inst.params.D = p.value("D", inst.params.D);
            inst.params.kappa = p.value("kappa", inst.params.kappa);
            inst.params.C0 = p.value("C0", inst.params.C0);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("cover instance file: ") + e.what());
    } catch (const std::logic_error& e) {
        throw std::invalid_argument(std::string("cover instance file: bad index key: ") + e.what());
    }
    inst.validate();
    return inst;
}

std::string round_log_csv(const std::vector<RoundLogRow>& log) {
    std::ostringstream out;
    out.precision(17);
    out << "round,index,X_i,F_i,W_size\n";
    for (const auto& r : log) out << r.round << ',' << r.index << ',' << r.x_value << ',' << (r.f_pass ? 1 : 0) << ',' << r.w_size << '\n';
    return out.str();
}

}  // namespace gapcover
