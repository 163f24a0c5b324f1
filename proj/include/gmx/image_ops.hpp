#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gmx/tensor.hpp"

namespace gmx {

/// Rec.601 luma conversion. 1-channel input is returned unchanged.
ImageTensor to_grayscale(const ImageTensor& img);

/// Corner-aligned bilinear resampling. Output values stay within the input
/// value range.
ImageTensor resize_bilinear(const ImageTensor& img, int out_h, int out_w);

namespace detail {

/// Corner-aligned bilinear core shared by image (float) and saliency-map
/// (double) resampling. data is row-major, channel-interleaved.
template <typename T>
std::vector<T> resample_bilinear(const std::vector<T>& data, int in_h,
                                 int in_w, int channels, int out_h,
                                 int out_w) {
    if (out_h < 1 || out_w < 1)
        throw std::invalid_argument("resize target must be at least 1x1");
    if (in_h == out_h && in_w == out_w) return data;

    std::vector<T> out(static_cast<std::size_t>(out_h) * out_w * channels);
    const double sy =
        out_h > 1 ? static_cast<double>(in_h - 1) / (out_h - 1) : 0.0;
    const double sx =
        out_w > 1 ? static_cast<double>(in_w - 1) / (out_w - 1) : 0.0;

    for (int y = 0; y < out_h; ++y) {
        const double fy = y * sy;
        const int y0 = std::min(static_cast<int>(fy), in_h - 1);
        const int y1 = std::min(y0 + 1, in_h - 1);
        const double wy = fy - y0;
        for (int x = 0; x < out_w; ++x) {
            const double fx = x * sx;
            const int x0 = std::min(static_cast<int>(fx), in_w - 1);
            const int x1 = std::min(x0 + 1, in_w - 1);
            const double wx = fx - x0;
            for (int c = 0; c < channels; ++c) {
                const auto src = [&](int yy, int xx) {
                    return static_cast<double>(
                        data[(static_cast<std::size_t>(yy) * in_w + xx) *
                                 channels +
                             c]);
                };
                const double top = (1.0 - wx) * src(y0, x0) + wx * src(y0, x1);
                const double bot = (1.0 - wx) * src(y1, x0) + wx * src(y1, x1);
                out[(static_cast<std::size_t>(y) * out_w + x) * channels + c] =
                    static_cast<T>((1.0 - wy) * top + wy * bot);
            }
        }
    }
    return out;
}

}  // namespace detail
}  // namespace gmx
