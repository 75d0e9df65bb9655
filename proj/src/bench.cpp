// bench.cpp

#include "gapcover/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "gapcover/parallel.hpp"

namespace gapcover {

PairedDifference paired_difference(const std::vector<double>& diffs) {
    PairedDifference d;
    d.pairs = diffs.size();
    if (diffs.empty()) return d;
    double sum = 0;
    for (double v : diffs) sum += v;
    d.mean = sum / static_cast<double>(diffs.size());
    d.ci_lo = d.ci_hi = d.mean;
    if (diffs.size() < 2) return d;
    double ss = 0;
    for (double v : diffs) ss += (v - d.mean) * (v - d.mean);
    const double n = static_cast<double>(diffs.size());
    d.se = std::sqrt(ss / (n - 1) / n);
    const boost::math::students_t t(n - 1);
    const double q = boost::math::quantile(boost::math::complement(t, 0.025));
    d.ci_lo = d.mean - q * d.se;
    d.ci_hi = d.mean + q * d.se;
    return d;
}

BenchTable compare_strategies(const BenchOptions& opts) {
    BenchTable table;
    for (std::uint64_t x : opts.xs)
        for (std::uint64_t seed : opts.seeds)
            for (Stage3Method m : opts.methods) table.rows.push_back({x, seed, m, 0, 0, -1});

    parallel_for(table.rows.size(), opts.threads, [&](std::size_t i) {
        BenchRow& row = table.rows[i];
        StagedConfig cfg = opts.base;
        cfg.x = row.x;
        cfg.seed = row.seed;
        cfg.stage3 = row.method;
        const auto t0 = std::chrono::steady_clock::now();
        const PipelineResult res = run_pipeline(cfg);
        const auto t1 = std::chrono::steady_clock::now();
        row.achieved_y = res.report.achieved_y;
        row.residual_count = res.report.after_stage3;
        if (opts.timing) row.runtime = std::chrono::duration<double>(t1 - t0).count();
    });

    // Rows are laid out x-major, then seed, then method.
    const std::size_t nm = opts.methods.size(), ns = opts.seeds.size();
    for (std::size_t xi = 0; xi < opts.xs.size(); ++xi) {
        auto at = [&](std::size_t si, std::size_t mi) -> const BenchRow& { return table.rows[(xi * ns + si) * nm + mi]; };
        for (std::size_t mi = 0; mi < nm; ++mi) {
            MethodSummary s{opts.xs[xi], opts.methods[mi], ns, 0, 0};
            for (std::size_t si = 0; si < ns; ++si) {
                s.mean_achieved_y += static_cast<double>(at(si, mi).achieved_y);
                s.mean_residual += static_cast<double>(at(si, mi).residual_count);
            }
            if (ns) {
                s.mean_achieved_y /= static_cast<double>(ns);
                s.mean_residual /= static_cast<double>(ns);
            }
            table.summary.push_back(s);
            if (mi == 0) continue;
            std::vector<double> diffs;
            for (std::size_t si = 0; si < ns; ++si)
                diffs.push_back(static_cast<double>(at(si, mi).achieved_y) - static_cast<double>(at(si, 0).achieved_y));
            PairedDifference d = paired_difference(diffs);
            d.x = opts.xs[xi];
            d.method = opts.methods[mi];
            d.baseline = opts.methods[0];
            table.paired.push_back(d);
        }
    }
    return table;
}

std::string BenchTable::csv() const {
    std::ostringstream out;
    out.precision(6);
    out << "x,seed,method,achieved_y,residual_count,runtime\n";
    for (const auto& r : rows) {
        out << r.x << ',' << r.seed << ',' << to_string(r.method) << ',' << r.achieved_y << ',' << r.residual_count << ',';
        if (r.runtime >= 0) out << r.runtime;
        out << '\n';
    }
    return out.str();
}

std::string BenchTable::summary_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "x,method,runs,mean_achieved_y,mean_residual_count\n";
    for (const auto& s : summary)
        out << s.x << ',' << to_string(s.method) << ',' << s.runs << ',' << s.mean_achieved_y << ',' << s.mean_residual << '\n';
    return out.str();
}

std::string BenchTable::paired_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "x,method,baseline,pairs,mean_diff,se,ci95_lo,ci95_hi\n";
    for (const auto& d : paired)
        out << d.x << ',' << to_string(d.method) << ',' << to_string(d.baseline) << ',' << d.pairs << ',' << d.mean << ','
            << d.se << ',' << d.ci_lo << ',' << d.ci_hi << '\n';
    return out.str();
}

}  // namespace gapcover
