#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "gmx/tensor.hpp"

namespace gmx {

/// H x W nonnegative importance map, row-major.
struct SaliencyMap {
    int height = 0;
    int width = 0;
    std::vector<double> values;

    SaliencyMap() = default;
    SaliencyMap(int h, int w, double fill = 0.0)
        : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

    std::size_t size() const { return values.size(); }
    double& at(int y, int x) {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    double at(int y, int x) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    bool same_shape(const SaliencyMap& other) const {
        return height == other.height && width == other.width;
    }
};

/// A saliency map whose values sum to 1 (within 1e-5).
struct NormalizedSaliency : SaliencyMap {
    NormalizedSaliency() = default;
    explicit NormalizedSaliency(SaliencyMap m) : SaliencyMap(std::move(m)) {}
};

enum class SaliencyMethod { spectral_residual, external };

struct SaliencyParams {
    SaliencyMethod method = SaliencyMethod::spectral_residual;
    int blur_kernel = 7;
    double blur_sigma = 3.0;
    int working_size = 64;
    /// One map file per image; required for the external method.
    std::vector<std::filesystem::path> external_paths;
    /// 0 = auto (GMX_THREADS / hardware), 1 = serial.
    int threads = 0;
};

/// Spectral-residual saliency: grayscale, resize so the longer side equals
/// working_size, take the 2-D spectrum, subtract the locally averaged
/// log-amplitude (amplitudes floored at 1e-3 of the spectral peak),
/// reconstruct with the original phase, square the magnitude, and resize
/// back to the input resolution. An all-equal image produces a flat map.
SaliencyMap spectral_residual(const ImageTensor& img, int working_size = 64);

/// Separable Gaussian convolution, kernel weights normalized to sum 1,
/// reflect border padding. Kernel must be odd, sigma positive.
SaliencyMap gaussian_blur(const SaliencyMap& map, int kernel = 7,
                          double sigma = 3.0);

/// The normalized 1-D kernel used by gaussian_blur.
std::vector<double> gaussian_kernel_1d(int kernel, double sigma);

/// Divides each value by the map total. A map with total below 1e-12
/// normalizes to the uniform map 1/N. Negative input values are rejected.
NormalizedSaliency normalize_sum_to_1(const SaliencyMap& map);

/// Loads a rank-2 gmtn map, rectifies it by absolute value (gradient maps
/// may be signed), and resizes to the target dimensions.
SaliencyMap load_external_saliency(const std::filesystem::path& path,
                                   int target_h, int target_w);

/// Per image: saliency, then blur, then sum-to-1 normalization. All images
/// must share one resolution; failures carry the offending batch index.
std::vector<NormalizedSaliency> prepare_saliency(
    const std::vector<ImageTensor>& batch, const SaliencyParams& params);

/// Corner-aligned bilinear resampling of a map.
SaliencyMap resize_map(const SaliencyMap& map, int out_h, int out_w);

}  // namespace gmx
