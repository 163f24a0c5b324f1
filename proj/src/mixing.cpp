#include "gmx/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "gmx/parallel.hpp"

namespace gmx {

namespace {

void require_same_shape(const ImageTensor& a, const ImageTensor& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("mixing: image shape mismatch");
}

void require_map_matches(const ImageTensor& img, const SaliencyMap& z) {
    if (img.height != z.height || img.width != z.width)
        throw std::invalid_argument(
            "mixing: saliency map does not match image resolution");
}

double ratio_or_half(double zs, double zt, double eps_den) {
    const double den = zs + zt;
    return den < eps_den ? 0.5 : zs / den;
}

}  // namespace

std::pair<MixMask, MixMask> pixel_mix_mask(const NormalizedSaliency& z_s,
                                           const NormalizedSaliency& z_t,
                                           double eps_den) {
    if (!z_s.same_shape(z_t))
        throw std::invalid_argument("pixel_mix_mask: map shape mismatch");

    MixMask mask_s(z_s.height, z_s.width);
    MixMask mask_t(z_s.height, z_s.width);
    for (std::size_t k = 0; k < z_s.size(); ++k) {
        const double r = ratio_or_half(z_s.values[k], z_t.values[k], eps_den);
        mask_s.weights[k] = r;
        mask_t.weights[k] = 1.0 - r;
    }
    return {std::move(mask_s), std::move(mask_t)};
}

ImageTensor mix_pair(const ImageTensor& x_s, const ImageTensor& x_t,
                     const NormalizedSaliency& z_s,
                     const NormalizedSaliency& z_t, double eps_den) {
    require_same_shape(x_s, x_t);
    require_map_matches(x_s, z_s);
    require_map_matches(x_t, z_t);
    if (!z_s.same_shape(z_t))
        throw std::invalid_argument("mix_pair: map shape mismatch");

    ImageTensor out(x_s.height, x_s.width, x_s.channels);
    const int channels = x_s.channels;
    for (std::size_t k = 0; k < z_s.size(); ++k) {
        const double r = ratio_or_half(z_s.values[k], z_t.values[k], eps_den);
        for (int c = 0; c < channels; ++c) {
            const std::size_t idx = k * channels + c;
            const double a = x_s.data[idx];
            const double b = x_t.data[idx];
            const double mixed = r * a + (1.0 - r) * b;
            // A convex combination; pin the result to the per-pixel hull so
            // rounding can never leave it.
            out.data[idx] = static_cast<float>(
                std::clamp(mixed, std::min(a, b), std::max(a, b)));
        }
    }
    return out;
}

double source_label_weight(const NormalizedSaliency& z_s,
                           const NormalizedSaliency& z_t, double eps_den) {
    if (!z_s.same_shape(z_t))
        throw std::invalid_argument("source_label_weight: map shape mismatch");
    double sum = 0.0;
    for (std::size_t k = 0; k < z_s.size(); ++k)
        sum += ratio_or_half(z_s.values[k], z_t.values[k], eps_den);
    return sum / static_cast<double>(z_s.size());
}

LabelVector mix_labels(const LabelVector& y_s, const LabelVector& y_t,
                       const NormalizedSaliency& z_s,
                       const NormalizedSaliency& z_t, double eps_den) {
    if (y_s.num_classes() != y_t.num_classes())
        throw std::invalid_argument("mix_labels: class count mismatch");

    const double lambda_s = source_label_weight(z_s, z_t, eps_den);
    LabelVector out;
    out.probabilities.resize(y_s.probabilities.size());
    for (std::size_t c = 0; c < out.probabilities.size(); ++c)
        out.probabilities[c] = lambda_s * y_s.probabilities[c] +
                               (1.0 - lambda_s) * y_t.probabilities[c];
    return out;
}

std::vector<MixedSample> mix_batch(const std::vector<ImageTensor>& images,
                                   const std::vector<LabelVector>& labels,
                                   const std::vector<NormalizedSaliency>& maps,
                                   const PairingMatrix& pairing,
                                   const MixParams& params) {
    const std::size_t m = images.size();
    if (labels.size() != m || maps.size() != m ||
        pairing.m != static_cast<int>(m))
        throw std::invalid_argument("mix_batch: batch length mismatch");
    const ValidationReport report = validate_pairing(pairing);
    if (!report.ok())
        throw std::invalid_argument("mix_batch: invalid pairing matrix: " +
                                    report.violations.front().describe());

    const std::vector<int> target_of = pairing.targets();
    std::vector<MixedSample> out(m);
    parallel_for(m, params.threads, [&](std::size_t i) {
        const int j = target_of[i];
        MixedSample sample;
        sample.image =
            mix_pair(images[i], images[j], maps[i], maps[j], params.eps_den);
        sample.label =
            mix_labels(labels[i], labels[j], maps[i], maps[j], params.eps_den);
        sample.source_mask =
            pixel_mix_mask(maps[i], maps[j], params.eps_den).first;
        sample.pair = {static_cast<int>(i), j};
        out[i] = std::move(sample);
    });
    return out;
}

MixedSample input_mixup(const ImageTensor& x_s, const ImageTensor& x_t,
                        const LabelVector& y_s, const LabelVector& y_t,
                        double lambda) {
    require_same_shape(x_s, x_t);
    if (y_s.num_classes() != y_t.num_classes())
        throw std::invalid_argument("input_mixup: class count mismatch");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("input_mixup: lambda outside [0,1]");

    MixedSample sample;
    sample.image = ImageTensor(x_s.height, x_s.width, x_s.channels);
    for (std::size_t k = 0; k < x_s.data.size(); ++k) {
        const double a = x_s.data[k];
        const double b = x_t.data[k];
        sample.image.data[k] = static_cast<float>(
            std::clamp(lambda * a + (1.0 - lambda) * b, std::min(a, b),
                       std::max(a, b)));
    }
    sample.label.probabilities.resize(y_s.probabilities.size());
    for (std::size_t c = 0; c < y_s.probabilities.size(); ++c)
        sample.label.probabilities[c] = lambda * y_s.probabilities[c] +
                                        (1.0 - lambda) * y_t.probabilities[c];
    sample.source_mask = MixMask(x_s.height, x_s.width, lambda);
    return sample;
}

MixedSample cutmix(const ImageTensor& x_s, const ImageTensor& x_t,
                   const LabelVector& y_s, const LabelVector& y_t,
                   double lambda, std::uint64_t seed) {
    require_same_shape(x_s, x_t);
    if (y_s.num_classes() != y_t.num_classes())
        throw std::invalid_argument("cutmix: class count mismatch");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("cutmix: lambda outside [0,1]");

    const int h = x_s.height;
    const int w = x_s.width;
    const double cut_ratio = std::sqrt(1.0 - lambda);
    const int cut_h = static_cast<int>(std::lround(h * cut_ratio));
    const int cut_w = static_cast<int>(std::lround(w * cut_ratio));

    std::mt19937_64 rng(seed);
    const int cy = static_cast<int>(rng() % static_cast<std::uint64_t>(h));
    const int cx = static_cast<int>(rng() % static_cast<std::uint64_t>(w));
    const int y0 = std::clamp(cy - cut_h / 2, 0, h);
    const int y1 = std::clamp(cy - cut_h / 2 + cut_h, 0, h);
    const int x0 = std::clamp(cx - cut_w / 2, 0, w);
    const int x1 = std::clamp(cx - cut_w / 2 + cut_w, 0, w);

    MixedSample sample;
    sample.image = x_s;
    sample.source_mask = MixMask(h, w, 1.0);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            for (int c = 0; c < x_s.channels; ++c)
                sample.image.at(y, x, c) = x_t.at(y, x, c);
            sample.source_mask.weights[static_cast<std::size_t>(y) * w + x] =
                0.0;
        }
    }

    const double cut_area = static_cast<double>(y1 - y0) * (x1 - x0);
    const double source_weight = 1.0 - cut_area / (static_cast<double>(h) * w);
    sample.label.probabilities.resize(y_s.probabilities.size());
    for (std::size_t c = 0; c < y_s.probabilities.size(); ++c)
        sample.label.probabilities[c] =
            source_weight * y_s.probabilities[c] +
            (1.0 - source_weight) * y_t.probabilities[c];
    return sample;
}

}  // namespace gmx
