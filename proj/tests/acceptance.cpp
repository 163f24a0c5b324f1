// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: gmx-acceptance <path-to-gmx> <path-to-gmx-make-corpus>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gmx/bench.hpp"
#include "gmx/mixing.hpp"
#include "gmx/pairing.hpp"
#include "gmx/saliency.hpp"
#include "gmx/tensor.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Criterion {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.str().empty()) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& text) {
        if (!detail.str().empty()) detail << "; ";
        detail << text;
    }
};

// --------------------------------------------------------------------------
// 1. Solver outputs satisfy every pairing constraint.

Criterion criterion_pairing_validity() {
    Criterion c;
    const auto start = clock_type::now();
    for (int m : {3, 4, 6, 8, 16, 64}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const gmx::DistanceMatrix w =
                testsupport::random_symmetric_matrix(m, seed * 977 + m);
            if (!gmx::validate_pairing(gmx::greedy_pairing(w)).ok())
                c.require(false, "greedy violation at m=" + std::to_string(m) +
                                     " seed=" + std::to_string(seed));
            if (!gmx::validate_pairing(gmx::random_pairing(m, seed)).ok())
                c.require(false, "random violation at m=" + std::to_string(m) +
                                     " seed=" + std::to_string(seed));
        }
    }
    const double elapsed = seconds_since(start);
    c.require(elapsed < 10.0, "runtime exceeded 10 s");
    c.note("6 batch sizes x 100 seeds, " + std::to_string(elapsed).substr(0, 5) +
           " s");
    return c;
}

// --------------------------------------------------------------------------
// 2. Exact dominates greedy; greedy beats the random mean almost always.

Criterion criterion_greedy_vs_exact() {
    Criterion c;
    const auto start = clock_type::now();

    int instances = 0;
    int greedy_beats_random_mean = 0;
    for (int m = 4; m <= 8; ++m) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const gmx::DistanceMatrix w =
                testsupport::random_symmetric_matrix(m, seed * 131 + m);
            const double greedy = gmx::objective(w, gmx::greedy_pairing(w));
            const double exact = gmx::objective(w, gmx::exact_pairing(w));
            if (exact < greedy - 1e-9)
                c.require(false, "exact < greedy at m=" + std::to_string(m) +
                                     " seed=" + std::to_string(seed));

            double random_sum = 0.0;
            const int draws = 16;
            for (int d = 0; d < draws; ++d)
                random_sum += gmx::objective(
                    w, gmx::random_pairing(m, seed * 7919 + d));
            if (greedy >= random_sum / draws) ++greedy_beats_random_mean;
            ++instances;
        }
    }
    const double share =
        static_cast<double>(greedy_beats_random_mean) / instances;
    c.require(share >= 0.9, "greedy beat the random mean in only " +
                                std::to_string(share * 100).substr(0, 5) + "%");

    // Worked 4x4 instance: both solvers land on 17.
    gmx::DistanceMatrix worked(4);
    const double rows[4][4] = {{0, 5, 2, 1}, {5, 0, 3, 4}, {2, 3, 0, 6},
                               {1, 4, 6, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) worked.at(i, j) = rows[i][j];
    const double greedy17 = gmx::objective(worked, gmx::greedy_pairing(worked));
    const double exact17 = gmx::objective(worked, gmx::exact_pairing(worked));
    c.require(greedy17 == 17.0, "worked greedy objective != 17");
    c.require(exact17 == 17.0, "worked exact objective != 17");

    const double elapsed = seconds_since(start);
    c.require(elapsed < 60.0, "runtime exceeded 60 s");
    c.note("greedy >= random mean in " +
           std::to_string(share * 100).substr(0, 5) + "% of " +
           std::to_string(instances) + " instances");
    return c;
}

// --------------------------------------------------------------------------
// 3. Two-triangle instance: the cover optimum is out of greedy's reach.

Criterion criterion_multi_cycle_gap() {
    Criterion c;
    gmx::DistanceMatrix w(6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (i != j) w.at(i, j) = ((i < 3) == (j < 3)) ? 10.0 : 1.0;

    const gmx::PairingMatrix exact = gmx::exact_pairing(w);
    const double exact_obj = gmx::objective(w, exact);
    c.require(exact_obj == 60.0,
              "exact objective " + std::to_string(exact_obj) + " != 60");
    c.require(testsupport::cycle_lengths(exact) == std::vector<int>{3, 3},
              "exact is not two 3-cycles");

    const gmx::PairingMatrix greedy = gmx::greedy_pairing(w);
    const double greedy_obj = gmx::objective(w, greedy);
    c.require(testsupport::cycle_lengths(greedy) == std::vector<int>{6},
              "greedy is not a single 6-cycle");
    c.require(greedy_obj <= 44.0,
              "greedy objective " + std::to_string(greedy_obj) + " > 44");
    c.note("exact 60 (3+3), greedy " + std::to_string(greedy_obj).substr(0, 4) +
           " (single cycle)");
    return c;
}

// --------------------------------------------------------------------------
// 4. Mask and label invariants, degenerate saliency included.

Criterion criterion_mask_label_invariants() {
    Criterion c;
    auto rng = testsupport::make_rng(4242);
    const int h = 6, w = 7;

    for (int trial = 0; trial < 1000; ++trial) {
        gmx::SaliencyMap a(h, w, 0.0), b(h, w, 0.0);
        const int flavor = trial % 4;
        for (std::size_t k = 0; k < a.values.size(); ++k) {
            // flavor 0: both zero maps; 1: one-sided zero; 2: sparse zeros;
            // 3: dense positive.
            if (flavor == 1) {
                a.values[k] = testsupport::uniform(rng);
            } else if (flavor == 2) {
                if (testsupport::uniform(rng) > 0.5)
                    a.values[k] = testsupport::uniform(rng);
                if (testsupport::uniform(rng) > 0.5)
                    b.values[k] = testsupport::uniform(rng);
            } else if (flavor == 3) {
                a.values[k] = testsupport::uniform(rng);
                b.values[k] = testsupport::uniform(rng);
            }
        }
        const gmx::NormalizedSaliency zs{a}, zt{b};
        const auto [mask_s, mask_t] = gmx::pixel_mix_mask(zs, zt);

        double mean = 0.0;
        for (std::size_t k = 0; k < mask_s.weights.size(); ++k) {
            if (std::abs(mask_s.weights[k] + mask_t.weights[k] - 1.0) > 1e-6)
                c.require(false, "mask complement off at trial " +
                                     std::to_string(trial));
            mean += mask_s.weights[k];
        }
        mean /= static_cast<double>(mask_s.weights.size());

        const double lambda_s = gmx::source_label_weight(zs, zt);
        const double lambda_t = gmx::source_label_weight(zt, zs);
        if (std::abs(lambda_s - mean) > 1e-6)
            c.require(false, "lambda != mean(mask) at trial " +
                                 std::to_string(trial));
        if (std::abs(lambda_s + lambda_t - 1.0) > 1e-6)
            c.require(false, "lambda_s + lambda_t != 1 at trial " +
                                 std::to_string(trial));

        const gmx::ImageTensor xs =
            testsupport::random_image(h, w, 3, 10000 + trial);
        const gmx::ImageTensor xt =
            testsupport::random_image(h, w, 3, 20000 + trial);
        const gmx::ImageTensor mixed = gmx::mix_pair(xs, xt, zs, zt);
        for (std::size_t i = 0; i < mixed.data.size(); ++i) {
            if (mixed.data[i] < std::min(xs.data[i], xt.data[i]) ||
                mixed.data[i] > std::max(xs.data[i], xt.data[i]))
                c.require(false,
                          "pixel outside hull at trial " + std::to_string(trial));
        }
        if (!c.pass) break;
    }
    c.note("1000 saliency pairs incl. all-zero and one-sided-zero");
    return c;
}

// --------------------------------------------------------------------------
// 5. Batch mixing equals the per-pair composition.

Criterion criterion_batch_equivalence() {
    Criterion c;
    for (int m = 3; m <= 8; ++m) {
        std::vector<gmx::ImageTensor> images;
        std::vector<gmx::LabelVector> labels;
        std::vector<gmx::NormalizedSaliency> maps;
        for (int i = 0; i < m; ++i) {
            images.push_back(testsupport::random_image(12, 9, 3, 3000 + m * 16 + i));
            labels.push_back(gmx::one_hot(m, i));
            maps.push_back(
                testsupport::random_normalized_map(12, 9, 4000 + m * 16 + i));
        }
        const gmx::PairingMatrix p =
            gmx::random_pairing(m, static_cast<std::uint64_t>(m));
        const std::vector<int> targets = p.targets();
        const std::vector<gmx::MixedSample> batch =
            gmx::mix_batch(images, labels, maps, p);

        double worst = 0.0;
        for (int i = 0; i < m; ++i) {
            const int j = targets[i];
            // The reference path recomputes each pair independently.
            for (std::size_t k = 0; k < maps[i].values.size(); ++k) {
                const double den = maps[i].values[k] + maps[j].values[k];
                const double r = den < 1e-12 ? 0.5 : maps[i].values[k] / den;
                for (int ch = 0; ch < 3; ++ch) {
                    const std::size_t idx = k * 3 + ch;
                    const double want = r * images[i].data[idx] +
                                        (1.0 - r) * images[j].data[idx];
                    worst = std::max(
                        worst,
                        std::abs(batch[i].image.data[idx] - want));
                }
            }
            double lambda = 0.0;
            for (std::size_t k = 0; k < maps[i].values.size(); ++k) {
                const double den = maps[i].values[k] + maps[j].values[k];
                lambda += den < 1e-12 ? 0.5 : maps[i].values[k] / den;
            }
            lambda /= static_cast<double>(maps[i].values.size());
            worst = std::max(
                worst, std::abs(batch[i].label.probabilities[i] - lambda));
            worst = std::max(worst, std::abs(batch[i].label.probabilities[j] -
                                             (1.0 - lambda)));
        }
        c.require(worst <= 1e-6, "m=" + std::to_string(m) +
                                     " max deviation " + std::to_string(worst));
    }
    c.note("batch sizes 3..8 against the per-pair reference");
    return c;
}

// --------------------------------------------------------------------------
// 6. Saliency behavior: flat, localized, and gain-invariant.

Criterion criterion_saliency_properties() {
    Criterion c;

    const gmx::ImageTensor flat_img(64, 64, 3, 0.5f);
    const gmx::SaliencyMap flat = gmx::spectral_residual(flat_img);
    const auto [fmn, fmx] =
        std::minmax_element(flat.values.begin(), flat.values.end());
    c.require(*fmx > 0.0 && (*fmx - *fmn) <= 1e-6 * *fmx,
              "constant image saliency is not flat");

    const gmx::ImageTensor blob = testsupport::blob_image(64, 24, 24, 8);
    const gmx::SaliencyMap blurred =
        gmx::gaussian_blur(gmx::spectral_residual(blob), 7, 3.0);
    const std::size_t argmax =
        std::max_element(blurred.values.begin(), blurred.values.end()) -
        blurred.values.begin();
    const int ay = static_cast<int>(argmax) / blurred.width;
    const int ax = static_cast<int>(argmax) % blurred.width;
    c.require(ay >= 21 && ay < 35 && ax >= 21 && ax < 35,
              "blob argmax (" + std::to_string(ay) + "," + std::to_string(ax) +
                  ") outside the dilated square");

    const gmx::NormalizedSaliency z = gmx::normalize_sum_to_1(blurred);
    double inside = 0.0;
    for (int y = 24; y < 32; ++y)
        for (int x = 24; x < 32; ++x) inside += z.at(y, x);
    c.require(inside > 64.0 / 4096.0,
              "blob mass fraction " + std::to_string(inside) +
                  " does not beat the area fraction");

    const gmx::ImageTensor base =
        testsupport::blob_image(64, 20, 28, 8, 0.1f, 0.5f);
    auto prepared = [](const gmx::ImageTensor& img) {
        return gmx::normalize_sum_to_1(
            gmx::gaussian_blur(gmx::spectral_residual(img), 7, 3.0));
    };
    const gmx::NormalizedSaliency ref = prepared(base);
    for (float scale : {0.5f, 2.0f}) {
        gmx::ImageTensor scaled = base;
        for (float& v : scaled.data) v *= scale;
        const gmx::NormalizedSaliency got = prepared(scaled);
        double worst = 0.0;
        for (std::size_t i = 0; i < got.values.size(); ++i)
            worst = std::max(worst, std::abs(got.values[i] - ref.values[i]));
        c.require(worst <= 1e-4, "gain c=" + std::to_string(scale) +
                                     " shifts saliency by " +
                                     std::to_string(worst));
    }
    c.note("flat, blob localization, mass fraction, gain c in {0.5, 2}");
    return c;
}

// --------------------------------------------------------------------------
// 7. Gaussian blur: impulse response and uniform fixed point.

Criterion criterion_blur_correctness() {
    Criterion c;
    const std::vector<double> k = gmx::gaussian_kernel_1d(7, 3.0);

    gmx::SaliencyMap impulse(15, 15, 0.0);
    impulse.at(7, 7) = 1.0;
    const gmx::SaliencyMap response = gmx::gaussian_blur(impulse, 7, 3.0);
    double worst = 0.0;
    for (int dy = -3; dy <= 3; ++dy)
        for (int dx = -3; dx <= 3; ++dx)
            worst = std::max(worst, std::abs(response.at(7 + dy, 7 + dx) -
                                             k[dy + 3] * k[dx + 3]));
    c.require(worst <= 1e-9, "impulse response deviates by " +
                                 std::to_string(worst));

    const gmx::SaliencyMap uniform(10, 14, 0.25);
    const gmx::SaliencyMap blurred = gmx::gaussian_blur(uniform, 7, 3.0);
    double uworst = 0.0;
    for (double v : blurred.values) uworst = std::max(uworst, std::abs(v - 0.25));
    c.require(uworst <= 1e-6, "uniform map moved by " + std::to_string(uworst));
    c.note("kernel 7, sigma 3");
    return c;
}

// --------------------------------------------------------------------------
// 8. Overhead formula at the documented operating point.

Criterion criterion_overhead_formula() {
    Criterion c;
    const double pct = gmx::overhead(107.7, 100.0);
    c.require(std::abs(pct - 7.7) <= 1e-12,
              "overhead(107.7, 100) = " + std::to_string(pct));
    char rendered[32];
    std::snprintf(rendered, sizeof(rendered), "%.1f", pct);
    c.require(std::string(rendered) == "7.7", "does not render as 7.7");

    gmx::OverheadReport report;
    report.method = "guided-sr-greedy";
    report.batch_size = 16;
    report.t_aug_ms = 107.7;
    report.t_vanilla_ms = 100.0;
    report.overhead_pct = pct;
    report.repeats = 5;
    const std::string line = report.to_json_line();
    c.require(line.find("\"t_aug_ms\":107.7") != std::string::npos &&
                  line.find("\"t_vanilla_ms\":100.0") != std::string::npos,
              "report does not store its inputs");
    c.require(report.overhead_pct ==
                  gmx::overhead(report.t_aug_ms, report.t_vanilla_ms),
              "stored overhead is not the exact recomputation");
    c.note("overhead(107.7, 100) -> 7.7%");
    return c;
}

// --------------------------------------------------------------------------
// 9. Greedy pairing scales like its O(M^2) bound.

Criterion criterion_complexity_smoke() {
    Criterion c;
    const int solves_per_run = 16;

    auto median_run_seconds = [&](int m) {
        const gmx::DistanceMatrix w = testsupport::random_symmetric_matrix(m, 9);
        std::vector<double> runs;
        for (int run = 0; run < 5; ++run) {
            const auto start = clock_type::now();
            for (int s = 0; s < solves_per_run; ++s) {
                const gmx::PairingMatrix p = gmx::greedy_pairing(w);
                if (p.m != m) std::abort();  // keep the solve observable
            }
            runs.push_back(seconds_since(start));
        }
        std::sort(runs.begin(), runs.end());
        return runs[2];
    };

    median_run_seconds(256);  // warm-up
    const double t256 = median_run_seconds(256);
    const double t512 = median_run_seconds(512);
    const double ratio = t512 / t256;
    c.require(ratio <= 5.0, "time ratio " + std::to_string(ratio) + " > 5");
    c.note("t(512)/t(256) = " + std::to_string(ratio).substr(0, 4) +
           " over 5-run medians");
    return c;
}

// --------------------------------------------------------------------------
// 10. End-to-end CLI determinism on the bundled corpus.

struct CliEnv {
    std::string gmx_bin;
    std::string corpus_bin;
    fs::path work;
};

int shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

Criterion criterion_cli_end_to_end(const CliEnv& env) {
    Criterion c;
    fs::remove_all(env.work);
    fs::create_directories(env.work);

    const fs::path corpus = env.work / "corpus";
    if (shell(env.corpus_bin + " " + corpus.string() +
              " --count 8 --size 64 --seed 1 >/dev/null 2>&1") != 0) {
        c.require(false, "corpus generation failed");
        return c;
    }

    const std::string manifest = (corpus / "manifest.json").string();
    const auto start = clock_type::now();
    for (const std::string run : {"run1", "run2"}) {
        const fs::path base = env.work / run;
        const std::string prefix = "GMX_THREADS=1 " + env.gmx_bin + " ";
        const std::vector<std::string> commands = {
            prefix + "saliency --manifest " + manifest + " --method sr" +
                " --out-dir " + (base / "sal").string(),
            prefix + "pair --manifest " + manifest + " --saliency-dir " +
                (base / "sal").string() + " --algo greedy --seed 7 --out " +
                (base / "pairing.csv").string(),
            prefix + "mix --manifest " + manifest + " --saliency-dir " +
                (base / "sal").string() + " --pairing " +
                (base / "pairing.csv").string() + " --out-dir " +
                (base / "mix").string(),
            prefix + "validate --pairing " + (base / "pairing.csv").string() +
                " --m 8",
        };
        for (const std::string& cmd : commands) {
            if (shell(cmd + " >/dev/null 2>&1") != 0) {
                c.require(false, "command failed: " + cmd);
                return c;
            }
        }
    }
    const double elapsed = seconds_since(start);
    c.require(elapsed < 30.0, "pipeline took " + std::to_string(elapsed) + " s");

    // Every gmtn/csv/json output must be byte-identical across reruns.
    int compared = 0;
    for (const auto& entry :
         fs::recursive_directory_iterator(env.work / "run1")) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext != ".gmtn" && ext != ".csv" && ext != ".json") continue;
        const fs::path other = env.work / "run2" /
                               fs::relative(entry.path(), env.work / "run1");
        if (slurp(entry.path()) != slurp(other)) {
            c.require(false, "rerun differs at " + entry.path().string());
        }
        ++compared;
    }
    c.require(compared >= 17, "expected at least 17 comparable outputs, saw " +
                                  std::to_string(compared));
    c.note(std::to_string(compared) + " outputs bit-identical across reruns, " +
           std::to_string(elapsed).substr(0, 4) + " s single-threaded");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: gmx-acceptance <gmx-binary> <corpus-binary>\n";
        return 2;
    }
    CliEnv env;
    env.gmx_bin = argv[1];
    env.corpus_bin = argv[2];
    env.work = fs::current_path() / "acceptance_work";

    const std::vector<std::pair<std::string, std::function<Criterion()>>> table = {
        {"pairing validity suite", criterion_pairing_validity},
        {"greedy-vs-exact oracle", criterion_greedy_vs_exact},
        {"multi-cycle gap witness", criterion_multi_cycle_gap},
        {"mask/label invariants", criterion_mask_label_invariants},
        {"batch/per-pair equivalence", criterion_batch_equivalence},
        {"saliency properties", criterion_saliency_properties},
        {"blur correctness", criterion_blur_correctness},
        {"overhead formula", criterion_overhead_formula},
        {"complexity smoke test", criterion_complexity_smoke},
        {"end-to-end CLI", [&] { return criterion_cli_end_to_end(env); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const Criterion result = table[i].second();
        std::cout << (result.pass ? "[PASS]" : "[FAIL]") << " criterion "
                  << (i + 1) << ": " << table[i].first;
        if (!result.detail.str().empty())
            std::cout << " (" << result.detail.str() << ")";
        std::cout << "\n" << std::flush;
        if (!result.pass) ++failures;
    }

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 10 criteria passed\n";
    return 0;
}
