#pragma once

#include <cstddef>
#include <vector>

namespace gmx {

/// H x W x C image with float values in [0,1], row-major, channel-interleaved.
/// Channels is 1 (grayscale) or 3 (RGB).
struct ImageTensor {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<float> data;

    ImageTensor() = default;
    ImageTensor(int h, int w, int c, float fill = 0.0f)
        : height(h), width(w), channels(c),
          data(static_cast<std::size_t>(h) * w * c, fill) {}

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(height) * width;
    }
    std::size_t value_count() const { return pixel_count() * channels; }

    float& at(int y, int x, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    float at(int y, int x, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    bool same_shape(const ImageTensor& other) const {
        return height == other.height && width == other.width &&
               channels == other.channels;
    }
};

/// Per-class probability vector. Nonnegative, sums to 1 within 1e-6.
struct LabelVector {
    std::vector<double> probabilities;

    int num_classes() const { return static_cast<int>(probabilities.size()); }
};

/// Throws std::invalid_argument if shape/data are inconsistent or values
/// fall outside [0,1].
void validate(const ImageTensor& img);

/// Throws std::invalid_argument on negative entries or sum off 1 by > 1e-6.
void validate(const LabelVector& label);

LabelVector one_hot(int num_classes, int class_index);

}  // namespace gmx
