#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gmx/pairing.hpp"
#include "gmx/saliency.hpp"
#include "gmx/tensor.hpp"

namespace gmx {

/// Per-pixel mixing weights in [0,1]. The source and target masks of a pair
/// sum to 1 at every pixel.
struct MixMask {
    int height = 0;
    int width = 0;
    std::vector<double> weights;

    MixMask() = default;
    MixMask(int h, int w, double fill = 0.0)
        : height(h), width(w), weights(static_cast<std::size_t>(h) * w, fill) {}

    double at(int y, int x) const {
        return weights[static_cast<std::size_t>(y) * width + x];
    }
};

struct MixedSample {
    ImageTensor image;
    LabelVector label;
    MixMask source_mask;
    std::pair<int, int> pair{0, 1};  // (source index, target index)
};

struct MixParams {
    /// Pixels where both saliency values total below this mix 50/50.
    double eps_den = 1e-12;
    int threads = 0;
};

/// Per-pixel source weight z_s / (z_s + z_t) and its complement.
std::pair<MixMask, MixMask> pixel_mix_mask(const NormalizedSaliency& z_s,
                                           const NormalizedSaliency& z_t,
                                           double eps_den = 1e-12);

/// Convex per-pixel combination of two images, weighted by the saliency
/// ratio; the mask is shared across channels.
ImageTensor mix_pair(const ImageTensor& x_s, const ImageTensor& x_t,
                     const NormalizedSaliency& z_s,
                     const NormalizedSaliency& z_t, double eps_den = 1e-12);

/// Soft label with source weight equal to the spatial mean of the source
/// mask.
LabelVector mix_labels(const LabelVector& y_s, const LabelVector& y_t,
                       const NormalizedSaliency& z_s,
                       const NormalizedSaliency& z_t, double eps_den = 1e-12);

/// Source-mask spatial mean, i.e. the label weight of the source image.
double source_label_weight(const NormalizedSaliency& z_s,
                           const NormalizedSaliency& z_t,
                           double eps_den = 1e-12);

/// Applies the pairing to the whole batch: output k mixes source k with its
/// selected target. Equivalent to calling mix_pair/mix_labels per pair.
std::vector<MixedSample> mix_batch(const std::vector<ImageTensor>& images,
                                   const std::vector<LabelVector>& labels,
                                   const std::vector<NormalizedSaliency>& maps,
                                   const PairingMatrix& pairing,
                                   const MixParams& params = {});

/// Global convex combination baseline.
MixedSample input_mixup(const ImageTensor& x_s, const ImageTensor& x_t,
                        const LabelVector& y_s, const LabelVector& y_t,
                        double lambda);

/// Rectangle-replacement baseline: a patch of area fraction (1 - lambda) at
/// a seeded uniform-random center is taken from the target; the label weight
/// is the surviving source-area fraction.
MixedSample cutmix(const ImageTensor& x_s, const ImageTensor& x_t,
                   const LabelVector& y_s, const LabelVector& y_t,
                   double lambda, std::uint64_t seed);

}  // namespace gmx
