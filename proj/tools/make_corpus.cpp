// Generates a small deterministic PNG corpus plus manifest.json, used by the
// end-to-end tests and handy for trying the pipeline out.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmx/png_io.hpp"
#include "gmx/tensor.hpp"

namespace fs = std::filesystem;

namespace {

// Tiny splitmix-style generator so the corpus is identical everywhere.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    double next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

gmx::ImageTensor make_image(int index, int size, std::uint64_t seed) {
    gmx::ImageTensor img(size, size, 3);
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(index));

    // A soft background gradient plus 2-3 bright blobs at random positions,
    // so saliency maps differ meaningfully across the batch.
    const double gx = rng.next();
    const double gy = rng.next();
    const int blobs = 2 + static_cast<int>(rng.next() * 2.0);
    std::vector<double> bx(blobs), by(blobs), br(blobs), hue(blobs);
    for (int b = 0; b < blobs; ++b) {
        bx[b] = rng.next() * size;
        by[b] = rng.next() * size;
        br[b] = size * (0.06 + 0.10 * rng.next());
        hue[b] = rng.next();
    }

    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            double r = 0.15 + 0.25 * (gx * x + gy * y) / size;
            double g = 0.15 + 0.25 * (gx * (size - x) + gy * y) / size;
            double b = 0.15 + 0.25 * (gx * x + gy * (size - y)) / size;
            for (int k = 0; k < blobs; ++k) {
                const double dx = x - bx[k];
                const double dy = y - by[k];
                const double fall =
                    std::exp(-(dx * dx + dy * dy) / (2.0 * br[k] * br[k]));
                r += fall * (0.5 + 0.4 * hue[k]);
                g += fall * (0.5 + 0.4 * (1.0 - hue[k]));
                b += fall * 0.35;
            }
            img.at(y, x, 0) = static_cast<float>(std::clamp(r, 0.0, 1.0));
            img.at(y, x, 1) = static_cast<float>(std::clamp(g, 0.0, 1.0));
            img.at(y, x, 2) = static_cast<float>(std::clamp(b, 0.0, 1.0));
        }
    }
    return img;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate a deterministic synthetic image corpus"};
    std::string out_dir;
    int count = 8;
    int size = 64;
    std::uint64_t seed = 1;
    app.add_option("out_dir", out_dir, "Output directory")->required();
    app.add_option("--count", count, "Number of images");
    app.add_option("--size", size, "Image side length");
    app.add_option("--seed", seed, "Corpus seed");
    CLI11_PARSE(app, argc, argv);

    try {
        fs::create_directories(out_dir);
        nlohmann::json items = nlohmann::json::array();
        for (int i = 0; i < count; ++i) {
            const std::string name = "img" + std::to_string(i) + ".png";
            gmx::write_png(make_image(i, size, seed), fs::path(out_dir) / name);
            items.push_back({{"image", name}, {"label", i % count}});
        }
        nlohmann::json manifest{{"num_classes", count}, {"items", items}};
        std::ofstream out(fs::path(out_dir) / "manifest.json",
                          std::ios::binary | std::ios::trunc);
        out << manifest.dump(2) << "\n";
        if (!out) throw std::runtime_error("cannot write manifest.json");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
