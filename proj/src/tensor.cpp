#include "gmx/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gmx {

void validate(const ImageTensor& img) {
    if (img.height < 1 || img.width < 1)
        throw std::invalid_argument("image dimensions must be positive");
    if (img.channels != 1 && img.channels != 3)
        throw std::invalid_argument("unsupported channel count " +
                                    std::to_string(img.channels));
    if (img.data.size() != img.value_count())
        throw std::invalid_argument("image data length does not match shape");
    for (float v : img.data) {
        if (!(v >= 0.0f && v <= 1.0f))
            throw std::invalid_argument("image value outside [0,1]");
    }
}

void validate(const LabelVector& label) {
    double sum = 0.0;
    for (double p : label.probabilities) {
        if (!(p >= 0.0))
            throw std::invalid_argument("label probability is negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw std::invalid_argument("label probabilities do not sum to 1");
}

LabelVector one_hot(int num_classes, int class_index) {
    if (num_classes < 1)
        throw std::invalid_argument("num_classes must be positive");
    if (class_index < 0 || class_index >= num_classes)
        throw std::invalid_argument("class index " +
                                    std::to_string(class_index) +
                                    " out of range");
    LabelVector y;
    y.probabilities.assign(num_classes, 0.0);
    y.probabilities[class_index] = 1.0;
    return y;
}

}  // namespace gmx
