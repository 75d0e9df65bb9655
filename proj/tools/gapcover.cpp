// gapcover command-line tool.
//
//   gapcover construct X [pipeline options] [--out PREFIX]
//   gapcover verify FILE [--interval LO HI]
//   gapcover gap FILE [--x X]
//   gapcover oracle X [--out FILE]
//   gapcover nibble-bench FILE [--seeds N] [--out FILE]
//   gapcover synth-instance [--vertices N] [--edge-size R] [--degree D] [--out FILE]
//   gapcover weights K R X [--dump FILE] [--diagnostics FILE]
//   gapcover bench --x X... [--seeds N] [--methods M...] [--out PREFIX]
//
// Exit codes: 0 success, 2 usage, 3 verification failure, 4 infeasible or
// over budget. Outputs never depend on --threads.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "gapcover/bench.hpp"
#include "gapcover/nibble.hpp"
#include "gapcover/oracle.hpp"
#include "gapcover/parallel.hpp"
#include "gapcover/primes.hpp"
#include "gapcover/residue_system.hpp"
#include "gapcover/strategies.hpp"
#include "gapcover/weights.hpp"

using namespace gapcover;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

// SHA-1 of "blob <size>\0<content>", as git computes object ids.
std::string git_blob_hash(const std::string& content) {
    const std::string data = "blob " + std::to_string(content.size()) + '\0' + content;
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr)) throw std::runtime_error("SHA-1 failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return hex.str();
}

// Hash covers the config echo plus the contents of every input file.
ojson manifest(const std::string& command, const ojson& config, std::uint64_t seed, const std::vector<std::string>& inputs = {}) {
    std::string blob = config.dump();
    for (const auto& path : inputs) blob += '\n' + read_file(path);
    ojson m;
    m["tool"] = "gapcover";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = config;
    m["seed"] = seed;
    m["input_hash"] = git_blob_hash(blob);
    return m;
}

std::string fixed(double v, int digits = 6) {
    std::ostringstream s;
    s << std::setprecision(digits) << std::fixed << v;
    return s.str();
}

// Options shared by construct and bench.
struct PipelineOptions {
    double c = 1.0;
    std::string mode = "desk-preset";
    std::string stage3 = "nibble";
    std::string weighting = "uniform";
    double v_exp = 0.10;
    double z_exp = 0.35;
    double C_extra = 10.0;
    int r = 0;
    std::size_t rounds = 3;
    bool filter_atypical = false;
    double atypical_tolerance = 0.5;
    bool no_extend = false;

    void add(CLI::App* app, bool with_stage3) {
        app->add_option("--c", c, "constant in y")->capture_default_str();
        app->add_option("--mode", mode, "desk-preset or paper-formula")->capture_default_str();
        if (with_stage3) app->add_option("--stage3", stage3, "independent, greedy or nibble")->capture_default_str();
        app->add_option("--weighting", weighting, "uniform or weights")->capture_default_str();
        app->add_option("--v-exp", v_exp, "desk exponent for v")->capture_default_str();
        app->add_option("--z-exp", z_exp, "desk exponent for z")->capture_default_str();
        app->add_option("--C-extra", C_extra, "fresh primes come from (x, C_extra x]")->capture_default_str();
        app->add_option("--r", r, "tuple length (0: default)")->capture_default_str();
        app->add_option("--rounds", rounds, "nibble rounds")->capture_default_str();
        app->add_flag("--filter-atypical", filter_atypical, "skip primes with atypical X_p");
        app->add_option("--atypical-tolerance", atypical_tolerance, "relative X_p deviation allowed")->capture_default_str();
        app->add_flag("--no-extend", no_extend, "stop at y instead of spending the leftover budget");
    }

    StagedConfig config(std::uint64_t x, std::uint64_t seed) const {
        StagedConfig cfg;
        cfg.x = x;
        cfg.seed = seed;
        cfg.c = c;
        cfg.mode = parse_threshold_mode(mode);
        cfg.stage3 = parse_stage3_method(stage3);
        cfg.weighting = parse_edge_weighting(weighting);
        cfg.v_exp = v_exp;
        cfg.z_exp = z_exp;
        cfg.C_extra = C_extra;
        cfg.r = r;
        cfg.nibble_rounds = rounds;
        cfg.filter_atypical = filter_atypical;
        cfg.atypical_tolerance = atypical_tolerance;
        cfg.extend_beyond_y = !no_extend;
        cfg.validate();
        return cfg;
    }

    ojson echo(bool with_stage3) const {
        ojson j;
        j["c"] = c;
        j["mode"] = mode;
        if (with_stage3) j["stage3"] = stage3;
        j["weighting"] = weighting;
        j["v_exp"] = v_exp;
        j["z_exp"] = z_exp;
        j["C_extra"] = C_extra;
        j["r"] = r;
        j["rounds"] = rounds;
        j["filter_atypical"] = filter_atypical;
        j["atypical_tolerance"] = atypical_tolerance;
        j["extend_beyond_y"] = !no_extend;
        return j;
    }
};

// construct

struct ConstructArgs {
    std::uint64_t x = 0;
    std::uint64_t seed = 0;
    std::string out;
    PipelineOptions p;
};

int cmd_construct(const ConstructArgs& a) {
    if (a.x < 100) throw UsageError("construct: x must be at least 100");
    const StagedConfig cfg = a.p.config(a.x, a.seed);
    const std::string prefix = a.out.empty() ? "gapcover_" + std::to_string(a.x) + "_" + std::to_string(a.seed) : a.out;

    ojson echo = a.p.echo(true);
    echo["x"] = a.x;
    const ojson man = manifest("construct", echo, a.seed);

    const PipelineResult res = run_pipeline(cfg);
    for (const auto& w : res.report.thresholds.warnings) std::cerr << "warning: " << w << '\n';

    ojson sys = ojson::parse(to_json(res.system, a.x));
    sys["manifest"] = man;
    ojson rep = ojson::parse(res.report.json());
    rep["manifest"] = man;
    write_file(prefix + ".system.json", sys.dump() + "\n");
    write_file(prefix + ".report.json", rep.dump(2) + "\n");
    write_file(prefix + ".manifest.json", man.dump(2) + "\n");

    const auto& r = res.report;
    std::cout << "x = " << r.config.x << ", y = " << r.thresholds.y << ", method = " << to_string(r.config.stage3) << '\n'
              << "survivors: " << r.after_stage1 << " -> " << r.after_stage2 << " -> " << r.after_stage3 << " -> "
              << r.after_final << '\n'
              << "fresh primes: " << r.extra_primes_used << " in (x, y], " << r.extension_primes << " past y\n"
              << "achieved_y = " << r.achieved_y << " (verified)\n"
              << "wrote " << prefix << ".system.json, " << prefix << ".report.json, " << prefix << ".manifest.json\n";
    return 0;
}

// verify

int cmd_verify(const std::string& path, const std::vector<std::int64_t>& interval) {
    const ResidueFile f = residue_system_from_json(read_file(path));
    if (interval.empty()) {
        std::cout << "covered prefix [1, " << covered_prefix_length(f.system) << "]\n";
        return 0;
    }
    if (interval.size() != 2 || interval[0] > interval[1]) throw UsageError("verify: --interval needs LO <= HI");
    if (auto t = first_uncovered(f.system, interval[0], interval[1])) {
        std::cout << "first uncovered t = " << *t << " in [" << interval[0] << ", " << interval[1] << "]\n";
        return 3;
    }
    std::cout << "covered [" << interval[0] << ", " << interval[1] << "]\n";
    return 0;
}

// gap

int cmd_gap(const std::string& path, std::uint64_t x_flag) {
    const ResidueFile f = residue_system_from_json(read_file(path));
    const std::uint64_t x = x_flag ? x_flag : f.x;
    if (x == 0) throw UsageError("gap: x missing from the file; pass --x");
    const GapAssembly g = assemble_gap(f.system, x);
    if (!certify_assembly(f.system, g)) throw VerificationFailure("gap: assembly failed certification");
    std::cout << "m = " << g.m.get_str() << '\n' << "run: m+1 .. m+" << g.run_length << " composite (" << g.run_length << " numbers)\n";

    const mpz_class P = primorial(x);
    if (P > 100'000'000) {
        std::cout << "P(x) > 1e8: sieve confirmation of the enclosing gap skipped\n";
        return 0;
    }
    const std::uint64_t m = g.m.get_ui();
    std::uint64_t limit = m + g.run_length + 64;
    for (;;) {
        const PrimeTable pt = primes_up_to(limit);
        for (std::uint64_t t = 1; t <= g.run_length; ++t)
            if (pt.contains(m + t)) throw VerificationFailure("gap: m+" + std::to_string(t) + " is prime");
        const auto after = pt.range(m + g.run_length, limit);
        if (after.empty()) {
            limit *= 2;
            continue;
        }
        const auto before = pt.range(0, m);
        const std::uint64_t lower = before.empty() ? 0 : before.back();
        const std::uint64_t upper = after.front();
        std::cout << "enclosing prime gap " << lower << " -> " << upper << " (length " << upper - lower << ")\n";
        return 0;
    }
}

// oracle

int cmd_oracle(std::uint64_t x, const std::string& out) {
    ExactYOptions o;
    const OracleResult r = exact_Y(x, o);
    ojson echo;
    echo["x"] = x;
    ojson sys = ojson::parse(to_json(r.witness, x));
    sys["Y"] = r.Y;
    sys["manifest"] = manifest("oracle", echo, 0);
    const std::string path = out.empty() ? "oracle_" + std::to_string(x) + ".json" : out;
    write_file(path, sys.dump() + "\n");
    std::cout << "Y(" << x << ") = " << r.Y << '\n' << "nodes explored: " << r.nodes_explored << '\n' << "witness written to " << path << '\n';
    return 0;
}

// nibble-bench

int cmd_nibble_bench(const std::string& path, std::size_t seeds, std::uint64_t seed0, const std::string& out, std::size_t threads) {
    const CoverInstance inst = instance_from_json(read_file(path));
    const DegreeProfile prof = degree_profile(inst);
    const double tol = default_tolerance(inst.params.delta, inst.num_rounds());
    struct Row {
        std::size_t nibble = 0, independent = 0;
        double expected = 0;
    };
    std::vector<Row> rows(seeds);
    parallel_for(seeds, threads, [&](std::size_t s) {
        const CoverResult a = run_cover(inst, prof, seed0 + s, tol);
        const CoverResult b = run_independent(inst, seed0 + s);
        rows[s] = {a.leftover.size(), b.leftover.size(), a.expected_leftover};
    });

    std::ostringstream csv;
    csv.precision(17);
    csv << "seed,method,leftover,expected_leftover\n";
    double mn = 0, mi = 0;
    for (std::size_t s = 0; s < seeds; ++s) {
        csv << seed0 + s << ",nibble," << rows[s].nibble << ',' << rows[s].expected << '\n';
        csv << seed0 + s << ",independent," << rows[s].independent << ",\n";
        mn += static_cast<double>(rows[s].nibble);
        mi += static_cast<double>(rows[s].independent);
    }
    const std::string target = out.empty() ? "nibble_bench.csv" : out;
    write_file(target, csv.str());
    ojson echo;
    echo["instance"] = path;
    echo["seeds"] = seeds;
    echo["seed"] = seed0;
    write_file(target + ".manifest.json", manifest("nibble-bench", echo, seed0, {path}).dump(2) + "\n");

    const auto report = check_hypotheses(inst, prof);
    const double n = seeds ? static_cast<double>(seeds) : 1.0;
    std::cout << "vertices " << inst.num_vertices << ", indices " << inst.num_indices() << ", rounds " << inst.num_rounds() << '\n'
              << "mean leftover: nibble " << fixed(mn / n, 3) << ", independent " << fixed(mi / n, 3) << '\n'
              << "sum of P_m(v): " << fixed(seeds ? rows[0].expected : 0.0, 6) << '\n'
              << "hypotheses except delta-smallness: " << (report.all_but_delta_ok() ? "pass" : "fail")
              << "; delta-smallness: " << (report.delta_small_ok ? "pass" : "fail") << '\n'
              << "wrote " << target << '\n';
    return 0;
}

// synth-instance

struct SynthArgs {
    std::size_t vertices = 300;
    std::size_t edge_size = 5;
    std::size_t degree = 10;
    double k = 2;
    std::size_t rounds = 0;     // 0: k^2
    std::size_t n1 = 0;         // 0: #E / (degree k)
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_synth(const SynthArgs& a) {
    if (a.vertices == 0 || a.edge_size == 0 || a.degree == 0 || !(a.k > 0)) throw UsageError("synth-instance: sizes must be positive");
    const auto edges = near_regular_hypergraph(a.vertices, a.edge_size, a.degree, a.seed);
    const std::size_t m = a.rounds ? a.rounds : static_cast<std::size_t>(std::llround(a.k * a.k));
    const std::size_t n1 = a.n1 ? a.n1
                                : static_cast<std::size_t>(std::ceil(static_cast<double>(edges.size()) /
                                                                     (static_cast<double>(a.degree) * a.k)));
    const auto counts = round_sizes(n1, a.k, m);
    const CoverInstance inst = uniform_instance(a.vertices, edges, counts);
    const std::string path = a.out.empty() ? "synth.json" : a.out;
    write_file(path, instance_to_json(inst));
    std::cout << "vertices " << a.vertices << ", edges " << edges.size() << ", rounds " << m << ", indices "
              << inst.num_indices() << '\n'
              << "instance written to " << path << '\n';
    return 0;
}

// weights

struct WeightsArgs {
    std::size_t k = 2;
    double R = 35;
    std::uint64_t x = 100000;
    std::uint64_t B = 1;
    std::size_t samples = 200000;
    std::uint64_t seed = 0;
    std::uint64_t cutoff = 100000;
    std::string dump;
    std::string diagnostics;
};

int cmd_weights(const WeightsArgs& a, std::size_t threads) {
    if (a.k < 1) throw UsageError("weights: k must be positive");
    const AdmissibleTuple h = admissible_tuple(static_cast<int>(a.k));
    WeightOptions opts;
    opts.series_cutoff = a.cutoff;
    const WeightSystem ws(FormSystem::from_tuple(h, a.B), a.R, opts);
    const IntegralEstimate ij = integrals_IJ(opts.F, a.k, a.samples, a.seed, threads);
    const TauU tu = tau_u(ws, static_cast<double>(a.x), ij);

    std::cout << std::setprecision(10) << "forms: n + h_i, h = (";
    for (std::size_t i = 0; i < h.size(); ++i) std::cout << (i ? ", " : "") << h.offsets[i];
    std::cout << ")\n"
              << "k = " << a.k << ", R = " << a.R << ", B = " << a.B << ", W = " << ws.system().W().get_str() << '\n'
              << "support size " << ws.support().size() << '\n'
              << "singular series " << ws.series().value << " (WB-part " << ws.series().value_wb << ", cutoff " << a.cutoff << ")\n"
              << "I_k = " << ij.I << " +- " << ij.se_I << ", J_k = " << ij.J << " +- " << ij.se_J << " (" << ij.samples
              << " samples, F = (1 - sum t)^(k+1))\n"
              << "tau = " << tu.tau << ", u = " << tu.u << " (relative to this F)\n";

    ojson echo;
    echo["k"] = a.k;
    echo["R"] = a.R;
    echo["x"] = a.x;
    echo["B"] = a.B;
    echo["samples"] = a.samples;
    echo["cutoff"] = a.cutoff;
    const ojson man = manifest("weights", echo, a.seed);
    if (!a.dump.empty()) {
        ojson table = ojson::parse(ws.table_json());
        table["manifest"] = man;
        write_file(a.dump, table.dump(2) + "\n");
        std::cout << "lambda table written to " << a.dump << '\n';
    }
    if (!a.diagnostics.empty()) {
        const std::uint64_t y = target_y(a.x, 1.0);
        const PairWeights pw(h, a.R, y, a.B, opts);
        const PrimeTable pt = primes_up_to(y);
        const auto P = pt.range(a.x / 2, a.x);
        const auto Q = pt.range(a.x, y);
        std::vector<std::uint64_t> ps, qs;
        for (std::size_t i = 0; i < 10 && !P.empty(); ++i) ps.push_back(P[i * (P.size() - 1) / 9]);
        for (std::size_t i = 0; i < 10 && !Q.empty(); ++i) qs.push_back(Q[i * (Q.size() - 1) / 9]);
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        std::vector<std::uint64_t> usable;
        for (std::uint64_t p : ps)
            if (static_cast<double>(p) > a.R) usable.push_back(p);
        const UniformityReport u = uniformity_diagnostics(pw, a.x, usable, qs, a.seed);
        write_file(a.diagnostics, u.csv());
        write_file(a.diagnostics + ".manifest.json", man.dump(2) + "\n");
        std::cout << "diagnostics written to " << a.diagnostics << '\n';
    }
    return 0;
}

// bench

struct BenchArgs {
    std::vector<std::uint64_t> xs;
    std::size_t seeds = 20;
    std::uint64_t seed0 = 0;
    std::vector<std::string> methods{"independent", "nibble"};
    bool timing = false;
    std::string out;
    PipelineOptions p;
};

int cmd_bench(const BenchArgs& a, std::size_t threads) {
    BenchOptions o;
    o.xs = a.xs;
    for (std::size_t s = 0; s < a.seeds; ++s) o.seeds.push_back(a.seed0 + s);
    for (const auto& m : a.methods) o.methods.push_back(parse_stage3_method(m));
    if (o.methods.empty()) throw UsageError("bench: no methods");
    for (std::uint64_t x : a.xs)
        if (x < 100) throw UsageError("bench: x must be at least 100");
    o.base = a.p.config(a.xs.empty() ? 100 : a.xs.front(), a.seed0);
    o.timing = a.timing;
    o.threads = threads;
    const BenchTable t = compare_strategies(o);

    const std::string prefix = a.out.empty() ? "bench" : a.out;
    write_file(prefix + ".csv", t.csv());
    write_file(prefix + ".summary.csv", t.summary_csv());
    write_file(prefix + ".paired.csv", t.paired_csv());
    ojson echo = a.p.echo(false);
    echo["xs"] = a.xs;
    echo["seeds"] = a.seeds;
    echo["methods"] = a.methods;
    echo["timing"] = a.timing;
    write_file(prefix + ".manifest.json", manifest("bench", echo, a.seed0).dump(2) + "\n");

    for (const auto& s : t.summary)
        std::cout << "x = " << s.x << ", " << to_string(s.method) << ": mean achieved_y " << fixed(s.mean_achieved_y, 2)
                  << ", mean residual " << fixed(s.mean_residual, 2) << " over " << s.runs << " seeds\n";
    for (const auto& d : t.paired)
        std::cout << "x = " << d.x << ", " << to_string(d.method) << " - " << to_string(d.baseline) << ": " << fixed(d.mean, 2)
                  << ", 95% CI [" << fixed(d.ci_lo, 2) << ", " << fixed(d.ci_hi, 2) << "]\n";
    std::cout << "wrote " << prefix << ".csv, " << prefix << ".summary.csv, " << prefix << ".paired.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covering systems of congruences and long prime gaps"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "read options from a TOML/INI file; flags given on the command line win");
    std::size_t threads = default_threads();
    app.add_option("--threads", threads, "worker threads (default: GAPCOVER_THREADS or the hardware count)")
        ->check(CLI::PositiveNumber);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "run the staged pipeline and write the covering system");
    construct->add_option("x", ca.x, "x (at least 100)")->required();
    construct->add_option("--seed", ca.seed, "master seed")->capture_default_str();
    construct->add_option("--out", ca.out, "output prefix");
    ca.p.add(construct, true);

    std::string verify_file;
    std::vector<std::int64_t> interval;
    auto* verify = app.add_subcommand("verify", "check that a system covers an interval");
    verify->add_option("file", verify_file, "residue system file")->required();
    verify->add_option("--interval", interval, "LO HI")->expected(2);

    std::string gap_file;
    std::uint64_t gap_x = 0;
    auto* gap = app.add_subcommand("gap", "assemble the run of composites and the enclosing prime gap");
    gap->add_option("file", gap_file, "residue system file covering [1, Y]")->required();
    gap->add_option("--x", gap_x, "override x from the file");

    std::uint64_t oracle_x = 0;
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle", "exact Y(x) by exhaustive search");
    oracle->add_option("x", oracle_x, "x")->required();
    oracle->add_option("--out", oracle_out, "witness file");

    std::string nb_file, nb_out;
    std::size_t nb_seeds = 50;
    std::uint64_t nb_seed = 0;
    auto* nb = app.add_subcommand("nibble-bench", "run the nibble and independent selection on an instance file");
    nb->add_option("file", nb_file, "hypergraph instance")->required();
    nb->add_option("--seeds", nb_seeds, "number of seeds")->capture_default_str();
    nb->add_option("--seed", nb_seed, "first seed")->capture_default_str();
    nb->add_option("--out", nb_out, "CSV output");

    SynthArgs sa;
    auto* synth = app.add_subcommand("synth-instance", "write a near-regular uniform hypergraph instance");
    synth->add_option("--vertices", sa.vertices, "number of vertices")->capture_default_str();
    synth->add_option("--edge-size", sa.edge_size, "vertices per edge")->capture_default_str();
    synth->add_option("--degree", sa.degree, "edges per vertex")->capture_default_str();
    synth->add_option("--k", sa.k, "round decay n_j = ceil(n_1 e^((1-j)/k))")->capture_default_str();
    synth->add_option("--rounds", sa.rounds, "number of rounds (0: k^2)")->capture_default_str();
    synth->add_option("--n1", sa.n1, "first round size (0: #E / (degree k))")->capture_default_str();
    synth->add_option("--seed", sa.seed, "instance seed")->capture_default_str();
    synth->add_option("--out", sa.out, "instance file");

    WeightsArgs wa;
    auto* weights = app.add_subcommand("weights", "sieve weights for the forms n + h_i");
    weights->add_option("k", wa.k, "number of forms")->required();
    weights->add_option("R", wa.R, "support bound")->required();
    weights->add_option("x", wa.x, "scale for tau and u")->required();
    weights->add_option("--B", wa.B, "exceptional modulus (1 or a prime)")->capture_default_str();
    weights->add_option("--samples", wa.samples, "Monte Carlo samples for I_k, J_k")->capture_default_str();
    weights->add_option("--seed", wa.seed, "master seed")->capture_default_str();
    weights->add_option("--series-cutoff", wa.cutoff, "singular series cutoff")->capture_default_str();
    weights->add_option("--dump", wa.dump, "write the lambda table")->expected(0, 1);
    weights->add_option("--diagnostics", wa.diagnostics, "write uniformity diagnostics CSV");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "compare stage-3 methods over seeds");
    bench->add_option("--x", ba.xs, "values of x")->required();
    bench->add_option("--seeds", ba.seeds, "number of seeds")->capture_default_str();
    bench->add_option("--seed", ba.seed0, "first seed")->capture_default_str();
    bench->add_option("--methods", ba.methods, "methods; the first is the baseline")->capture_default_str();
    bench->add_flag("--timing", ba.timing, "fill the runtime column");
    bench->add_option("--out", ba.out, "output prefix");
    ba.p.add(bench, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*construct) return cmd_construct(ca);
        if (*verify) return cmd_verify(verify_file, interval);
        if (*gap) return cmd_gap(gap_file, gap_x);
        if (*oracle) return cmd_oracle(oracle_x, oracle_out);
        if (*nb) return cmd_nibble_bench(nb_file, nb_seeds, nb_seed, nb_out, threads);
        if (*synth) return cmd_synth(sa);
        if (*weights) {
            if (weights->count("--dump") && wa.dump.empty()) wa.dump = "weights.json";
            return cmd_weights(wa, threads);
        }
        if (*bench) return cmd_bench(ba, threads);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const NoEdgesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
