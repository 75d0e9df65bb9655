// bench.hpp
// Strategy benchmark: run the pipeline over a grid of (x, seed, method) and
// summarize achieved_y per method, with paired differences against the first
// method listed.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gapcover/strategies.hpp"

namespace gapcover {

struct BenchOptions {
    std::vector<std::uint64_t> xs;
    std::vector<std::uint64_t> seeds;
    std::vector<Stage3Method> methods;
    StagedConfig base;          // everything except x, seed and method
    bool timing = false;        // fill the runtime column (not reproducible)
    std::size_t threads = 1;
};

struct BenchRow {
    std::uint64_t x = 0;
    std::uint64_t seed = 0;
    Stage3Method method = Stage3Method::Nibble;
    std::uint64_t achieved_y = 0;
    std::size_t residual_count = 0;   // survivors left for the final matching
    double runtime = -1;              // seconds, -1 when not timed
};

struct MethodSummary {
    std::uint64_t x = 0;
    Stage3Method method = Stage3Method::Nibble;
    std::size_t runs = 0;
    double mean_achieved_y = 0;
    double mean_residual = 0;
};

// achieved_y(method) - achieved_y(baseline) over shared seeds.
struct PairedDifference {
    std::uint64_t x = 0;
    Stage3Method method = Stage3Method::Nibble;
    Stage3Method baseline = Stage3Method::Independent;
    std::size_t pairs = 0;
    double mean = 0;
    double se = 0;
    double ci_lo = 0, ci_hi = 0;      // 95% Student t interval (equal to mean when pairs < 2)
};

struct BenchTable {
    std::vector<BenchRow> rows;
    std::vector<MethodSummary> summary;
    std::vector<PairedDifference> paired;

    std::string csv() const;          // x,seed,method,achieved_y,residual_count,runtime
    std::string summary_csv() const;
    std::string paired_csv() const;
};

PairedDifference paired_difference(const std::vector<double>& diffs);

BenchTable compare_strategies(const BenchOptions& opts);

}  // namespace gapcover
