#pragma once

#include <string>
#include <vector>

#include "gmx/manifest.hpp"

namespace gmx {

/// Timing result for one augmentation strategy at one batch size.
/// t_vanilla_ms is a caller-supplied per-batch baseline budget; this tool
/// times the augmentation step only.
struct OverheadReport {
    std::string method;
    int batch_size = 0;
    double t_aug_ms = 0.0;
    double t_vanilla_ms = 0.0;
    double overhead_pct = 0.0;
    int repeats = 0;

    std::string to_json_line() const;
};

/// ((t_aug - t_vanilla) / t_vanilla) * 100. Negative when augmentation is
/// cheaper than the baseline budget.
double overhead(double t_aug_ms, double t_vanilla_ms);

/// Known method names: mixup, cutmix, guided-sr-greedy, guided-sr-random.
std::vector<std::string> bench_methods();

/// Times the full augmentation path for the first batch_size manifest items,
/// single-threaded, wall clock, median over `repeats` runs after one
/// warm-up. Image decoding happens before the timed section.
OverheadReport run_bench(const BatchManifest& manifest,
                         const std::string& method, int batch_size,
                         int repeats, double t_vanilla_ms,
                         std::uint64_t seed = 0);

}  // namespace gmx
