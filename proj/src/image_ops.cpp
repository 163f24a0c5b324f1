#include "gmx/image_ops.hpp"

#include <string>

namespace gmx {

ImageTensor to_grayscale(const ImageTensor& img) {
    if (img.channels == 1) return img;
    if (img.channels != 3)
        throw std::invalid_argument("to_grayscale: unsupported channel count " +
                                    std::to_string(img.channels));

    ImageTensor out(img.height, img.width, 1);
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        const float r = img.data[i * 3 + 0];
        const float g = img.data[i * 3 + 1];
        const float b = img.data[i * 3 + 2];
        out.data[i] = 0.299f * r + 0.587f * g + 0.114f * b;
    }
    return out;
}

ImageTensor resize_bilinear(const ImageTensor& img, int out_h, int out_w) {
    if (img.height < 1 || img.width < 1)
        throw std::invalid_argument("resize_bilinear: empty input image");

    ImageTensor out;
    out.height = out_h;
    out.width = out_w;
    out.channels = img.channels;
    out.data = detail::resample_bilinear(img.data, img.height, img.width,
                                         img.channels, out_h, out_w);
    // Interpolation weights can produce values an ulp outside the input
    // range; keep the [0,1] invariant exact.
    for (float& v : out.data) v = std::clamp(v, 0.0f, 1.0f);
    return out;
}

}  // namespace gmx
