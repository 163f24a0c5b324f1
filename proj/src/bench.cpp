#include "gmx/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include "json.hpp"

#include "gmx/mixing.hpp"
#include "gmx/pairing.hpp"
#include "gmx/png_io.hpp"
#include "gmx/saliency.hpp"

namespace gmx {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point start, clock_type::time_point end) {
    return std::chrono::duration<double, std::milli>(end - start).count();
}

// One full augmentation pass over the batch. Everything inside runs
// single-threaded; the comparison protocol forbids parallelism here.
void run_once(const std::string& method,
              const std::vector<ImageTensor>& images,
              const std::vector<LabelVector>& labels, std::uint64_t seed) {
    const int m = static_cast<int>(images.size());
    if (method == "mixup" || method == "cutmix") {
        std::mt19937_64 rng(seed);
        const double lambda =
            static_cast<double>(rng() >> 11) * 0x1.0p-53;  // uniform [0,1)
        for (int i = 0; i < m; ++i) {
            const int j = (i + 1) % m;
            if (method == "mixup")
                input_mixup(images[i], images[j], labels[i], labels[j], lambda);
            else
                cutmix(images[i], images[j], labels[i], labels[j], lambda,
                       seed + static_cast<std::uint64_t>(i));
        }
        return;
    }

    SaliencyParams sal;
    sal.threads = 1;
    const std::vector<NormalizedSaliency> maps = prepare_saliency(images, sal);
    const DistanceMatrix w = distance_matrix(maps);
    const PairingMatrix p = method == "guided-sr-greedy"
                                ? greedy_pairing(w)
                                : random_pairing(m, seed);
    MixParams mix;
    mix.threads = 1;
    mix_batch(images, labels, maps, p, mix);
}

}  // namespace

double overhead(double t_aug_ms, double t_vanilla_ms) {
    if (!(t_vanilla_ms > 0.0))
        throw std::invalid_argument("overhead: t_vanilla must be positive");
    return (t_aug_ms - t_vanilla_ms) / t_vanilla_ms * 100.0;
}

std::vector<std::string> bench_methods() {
    return {"mixup", "cutmix", "guided-sr-greedy", "guided-sr-random"};
}

std::string OverheadReport::to_json_line() const {
    nlohmann::json doc{{"method", method},
                       {"batch_size", batch_size},
                       {"t_aug_ms", t_aug_ms},
                       {"t_vanilla_ms", t_vanilla_ms},
                       {"overhead_pct", overhead_pct},
                       {"repeats", repeats},
                       {"measures", "augmentation_only"}};
    return doc.dump();
}

OverheadReport run_bench(const BatchManifest& manifest,
                         const std::string& method, int batch_size,
                         int repeats, double t_vanilla_ms,
                         std::uint64_t seed) {
    const std::vector<std::string> methods = bench_methods();
    if (std::find(methods.begin(), methods.end(), method) == methods.end())
        throw std::invalid_argument("unknown bench method: " + method);
    if (batch_size < 3)
        throw std::invalid_argument("bench batch size must be at least 3");
    if (static_cast<int>(manifest.items.size()) < batch_size)
        throw std::invalid_argument(
            "manifest has " + std::to_string(manifest.items.size()) +
            " items, need " + std::to_string(batch_size));
    if (repeats < 3)
        throw std::invalid_argument("bench needs at least 3 repeats");

    std::vector<ImageTensor> images;
    std::vector<LabelVector> labels;
    images.reserve(batch_size);
    labels.reserve(batch_size);
    for (int i = 0; i < batch_size; ++i) {
        images.push_back(read_png(manifest.items[i].image));
        labels.push_back(one_hot(manifest.num_classes, manifest.items[i].label));
    }

    run_once(method, images, labels, seed);  // warm-up

    std::vector<double> times_ms(repeats);
    for (int r = 0; r < repeats; ++r) {
        const auto start = clock_type::now();
        run_once(method, images, labels, seed);
        times_ms[r] = elapsed_ms(start, clock_type::now());
    }
    std::nth_element(times_ms.begin(), times_ms.begin() + repeats / 2,
                     times_ms.end());
    double median = times_ms[repeats / 2];
    if (repeats % 2 == 0) {
        const double below =
            *std::max_element(times_ms.begin(), times_ms.begin() + repeats / 2);
        median = (median + below) / 2.0;
    }

    OverheadReport report;
    report.method = method;
    report.batch_size = batch_size;
    report.t_aug_ms = median;
    report.t_vanilla_ms = t_vanilla_ms;
    report.overhead_pct = overhead(median, t_vanilla_ms);
    report.repeats = repeats;
    return report;
}

}  // namespace gmx
