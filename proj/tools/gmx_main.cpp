// gmx: saliency-guided batch mixup pipeline.
//
// The pipeline is staged through files so each step can run (and be
// inspected) on its own:
//   gmx saliency  manifest -> <stem>.sal.gmtn per image
//   gmx pair      saliency maps -> src,dst CSV
//   gmx mix       manifest + pairing -> mixed PNG/GMTN + labels JSON
//   gmx validate  pairing CSV -> constraint report
//   gmx bench     manifest -> overhead JSON lines

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmx/bench.hpp"
#include "gmx/manifest.hpp"
#include "gmx/mixing.hpp"
#include "gmx/pairing.hpp"
#include "gmx/png_io.hpp"
#include "gmx/saliency.hpp"
#include "gmx/tensor_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::vector<gmx::ImageTensor> load_images(const gmx::BatchManifest& manifest) {
    std::vector<gmx::ImageTensor> images;
    images.reserve(manifest.items.size());
    for (std::size_t i = 0; i < manifest.items.size(); ++i) {
        try {
            images.push_back(gmx::read_png(manifest.items[i].image));
        } catch (const std::exception& e) {
            throw std::runtime_error("item " + std::to_string(i) + ": " +
                                     e.what());
        }
    }
    return images;
}

gmx::SaliencyParams saliency_params(const gmx::BatchManifest& manifest,
                                    const std::string& method, int blur_kernel,
                                    double blur_sigma, int working_size) {
    gmx::SaliencyParams params;
    params.blur_kernel = blur_kernel;
    params.blur_sigma = blur_sigma;
    params.working_size = working_size;
    if (method == "external") {
        params.method = gmx::SaliencyMethod::external;
        for (std::size_t i = 0; i < manifest.items.size(); ++i) {
            if (!manifest.items[i].saliency)
                throw std::runtime_error(
                    "item " + std::to_string(i) +
                    ": external saliency requested but the manifest entry has "
                    "no saliency path");
            params.external_paths.push_back(*manifest.items[i].saliency);
        }
    } else {
        params.method = gmx::SaliencyMethod::spectral_residual;
    }
    return params;
}

void write_map_gmtn(const gmx::SaliencyMap& map, const fs::path& path) {
    gmx::GmtnTensor t;
    t.dims = {static_cast<std::uint32_t>(map.height),
              static_cast<std::uint32_t>(map.width)};
    t.data.reserve(map.values.size());
    for (double v : map.values) t.data.push_back(static_cast<float>(v));
    gmx::write_tensor(t, path);
}

gmx::SaliencyMap read_map_gmtn(const fs::path& path) {
    const gmx::GmtnTensor t = gmx::read_tensor(path);
    if (t.dims.size() != 2)
        throw std::runtime_error("expected rank-2 map in " + path.string());
    gmx::SaliencyMap map;
    map.height = static_cast<int>(t.dims[0]);
    map.width = static_cast<int>(t.dims[1]);
    map.values.assign(t.data.begin(), t.data.end());
    return map;
}

int cmd_saliency(const fs::path& manifest_path, const std::string& method,
                 int blur_kernel, double blur_sigma, int working_size,
                 const fs::path& out_dir) {
    const gmx::BatchManifest manifest = gmx::load_manifest(manifest_path);
    const std::vector<gmx::ImageTensor> images = load_images(manifest);
    const gmx::SaliencyParams params = saliency_params(
        manifest, method, blur_kernel, blur_sigma, working_size);

    const std::vector<gmx::NormalizedSaliency> maps =
        gmx::prepare_saliency(images, params);

    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < maps.size(); ++i)
        write_map_gmtn(maps[i], out_dir / (manifest.items[i].stem() +
                                           ".sal.gmtn"));
    return kExitOk;
}

std::vector<gmx::NormalizedSaliency> load_prepared_maps(
    const gmx::BatchManifest& manifest, const fs::path& saliency_dir) {
    std::vector<gmx::NormalizedSaliency> maps;
    maps.reserve(manifest.items.size());
    for (std::size_t i = 0; i < manifest.items.size(); ++i) {
        const fs::path path =
            saliency_dir / (manifest.items[i].stem() + ".sal.gmtn");
        try {
            maps.emplace_back(read_map_gmtn(path));
        } catch (const std::exception& e) {
            throw std::runtime_error("item " + std::to_string(i) + ": " +
                                     e.what());
        }
    }
    return maps;
}

int cmd_pair(const fs::path& manifest_path, const fs::path& saliency_dir,
             const std::string& algo, std::uint64_t seed, int downsample,
             const fs::path& out, const fs::path& distance_out) {
    const gmx::BatchManifest manifest = gmx::load_manifest(manifest_path);
    const std::vector<gmx::NormalizedSaliency> maps =
        load_prepared_maps(manifest, saliency_dir);

    const gmx::DistanceMatrix w = gmx::distance_matrix(maps, downsample);
    if (!distance_out.empty()) gmx::write_distance_csv(w, distance_out);

    gmx::PairingMatrix p;
    if (algo == "greedy")
        p = gmx::greedy_pairing(w);
    else if (algo == "exact")
        p = gmx::exact_pairing(w);
    else
        p = gmx::random_pairing(w.m, seed);

    gmx::write_pairing_csv(p, out);
    std::cerr << "objective " << gmx::objective(w, p) << "\n";
    return kExitOk;
}

int cmd_mix(const fs::path& manifest_path, const fs::path& saliency_dir,
            const fs::path& pairing_csv, const fs::path& out_dir, double eps) {
    const gmx::BatchManifest manifest = gmx::load_manifest(manifest_path);
    const std::vector<gmx::ImageTensor> images = load_images(manifest);
    const std::vector<gmx::NormalizedSaliency> maps =
        load_prepared_maps(manifest, saliency_dir);
    const gmx::PairingMatrix pairing = gmx::read_pairing_csv(
        pairing_csv, static_cast<int>(manifest.items.size()));

    std::vector<gmx::LabelVector> labels;
    labels.reserve(manifest.items.size());
    for (const gmx::ManifestItem& item : manifest.items)
        labels.push_back(gmx::one_hot(manifest.num_classes, item.label));

    gmx::MixParams params;
    params.eps_den = eps;
    const std::vector<gmx::MixedSample> mixed =
        gmx::mix_batch(images, labels, maps, pairing, params);

    fs::create_directories(out_dir);
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t i = 0; i < mixed.size(); ++i) {
        const std::string stem = manifest.items[i].stem() + ".mixed";
        gmx::write_png(mixed[i].image, out_dir / (stem + ".png"));
        gmx::write_image_tensor(mixed[i].image, out_dir / (stem + ".gmtn"));
        const gmx::MixMask& mask = mixed[i].source_mask;
        double lambda_src = 0.0;
        for (double wgt : mask.weights) lambda_src += wgt;
        lambda_src /= static_cast<double>(mask.weights.size());
        pairs.push_back({{"src", mixed[i].pair.first},
                         {"dst", mixed[i].pair.second},
                         {"lambda_src", lambda_src},
                         {"lambda_dst", 1.0 - lambda_src}});
    }
    std::ofstream labels_out(out_dir / "labels.json",
                             std::ios::binary | std::ios::trunc);
    labels_out << nlohmann::json{{"pairs", pairs}}.dump(2) << "\n";
    if (!labels_out) throw std::runtime_error("cannot write labels.json");
    return kExitOk;
}

int cmd_validate(const fs::path& pairing_csv, int m) {
    const gmx::PairingMatrix p = gmx::read_pairing_csv(pairing_csv, m);
    const gmx::ValidationReport report = gmx::validate_pairing(p);
    if (report.ok()) {
        std::cout << "OK\n";
        return kExitOk;
    }
    for (const gmx::PairingViolation& v : report.violations)
        std::cout << v.describe() << "\n";
    return kExitFailure;
}

int cmd_bench(const fs::path& manifest_path, const std::string& method,
              int batch, int repeats, double vanilla_ms, std::uint64_t seed) {
    const gmx::BatchManifest manifest = gmx::load_manifest(manifest_path);
    const gmx::OverheadReport report =
        gmx::run_bench(manifest, method, batch, repeats, vanilla_ms, seed);
    std::cout << report.to_json_line() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Saliency-guided batch mixup augmentation pipeline"};
    app.require_subcommand(1);

    std::string manifest_path;
    std::string method = "sr";
    int blur_kernel = 7;
    double blur_sigma = 3.0;
    int working_size = 64;
    std::string out_dir;

    CLI::App* saliency = app.add_subcommand(
        "saliency", "Write one blurred, sum-to-1 saliency map per image");
    saliency->add_option("--manifest", manifest_path, "Batch manifest JSON")
        ->required();
    saliency->add_option("--method", method, "sr or external")
        ->check(CLI::IsMember({"sr", "external"}));
    saliency->add_option("--blur-kernel", blur_kernel, "Odd Gaussian kernel");
    saliency->add_option("--blur-sigma", blur_sigma, "Gaussian sigma");
    saliency->add_option("--working-size", working_size,
                         "Longer-side resolution for the spectral transform");
    saliency->add_option("--out-dir", out_dir, "Output directory")->required();

    std::string saliency_dir;
    std::string algo = "greedy";
    std::uint64_t seed = 0;
    int downsample = 1;
    std::string pair_out;
    std::string distance_out;

    CLI::App* pair = app.add_subcommand(
        "pair", "Solve the pairing problem over saved saliency maps");
    pair->add_option("--manifest", manifest_path, "Batch manifest JSON")
        ->required();
    pair->add_option("--saliency-dir", saliency_dir,
                     "Directory holding <stem>.sal.gmtn maps")
        ->required();
    pair->add_option("--algo", algo, "greedy, random, or exact")
        ->check(CLI::IsMember({"greedy", "random", "exact"}));
    pair->add_option("--seed", seed, "Seed for the random pairing");
    pair->add_option("--distance-downsample", downsample,
                     "Resample maps by this factor before measuring distance");
    pair->add_option("--out", pair_out, "Pairing CSV path")->required();
    pair->add_option("--distance-out", distance_out,
                     "Optional dense distance-matrix CSV");

    std::string pairing_csv;
    double eps = 1e-12;

    CLI::App* mix = app.add_subcommand(
        "mix", "Mix paired images and labels, write PNG/GMTN plus labels.json");
    mix->add_option("--manifest", manifest_path, "Batch manifest JSON")
        ->required();
    mix->add_option("--saliency-dir", saliency_dir,
                    "Directory holding <stem>.sal.gmtn maps")
        ->required();
    mix->add_option("--pairing", pairing_csv, "Pairing CSV")->required();
    mix->add_option("--out-dir", out_dir, "Output directory")->required();
    mix->add_option("--eps", eps, "Zero-saliency denominator guard");

    int m = 0;
    CLI::App* validate =
        app.add_subcommand("validate", "Check a pairing CSV against all constraints");
    validate->add_option("--pairing", pairing_csv, "Pairing CSV")->required();
    validate->add_option("--m", m, "Batch size the pairing covers")->required();

    std::string bench_method = "guided-sr-greedy";
    int batch = 16;
    int repeats = 5;
    double vanilla_ms = 0.0;

    CLI::App* bench = app.add_subcommand(
        "bench", "Time one augmentation strategy, report overhead JSON");
    bench->add_option("--manifest", manifest_path, "Batch manifest JSON")
        ->required();
    bench->add_option("--method", bench_method, "Augmentation strategy")
        ->check(CLI::IsMember(gmx::bench_methods()));
    bench->add_option("--batch", batch, "Batch size");
    bench->add_option("--repeats", repeats, "Timed repetitions (median)");
    bench->add_option("--vanilla-ms", vanilla_ms,
                      "Per-batch baseline budget in milliseconds")
        ->required();
    bench->add_option("--seed", seed, "Seed for seeded strategies");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (saliency->parsed())
            return cmd_saliency(manifest_path, method, blur_kernel, blur_sigma,
                                working_size, out_dir);
        if (pair->parsed())
            return cmd_pair(manifest_path, saliency_dir, algo, seed, downsample,
                            pair_out, distance_out);
        if (mix->parsed())
            return cmd_mix(manifest_path, saliency_dir, pairing_csv, out_dir,
                           eps);
        if (validate->parsed()) return cmd_validate(pairing_csv, m);
        if (bench->parsed())
            return cmd_bench(manifest_path, bench_method, batch, repeats,
                             vanilla_ms, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
