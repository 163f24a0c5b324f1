#pragma once

#include <filesystem>
#include <stdexcept>

#include "gmx/tensor.hpp"

namespace gmx {

class PngError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decodes an 8- or 16-bit gray/RGB PNG into [0,1] floats. Palette images
/// are expanded to RGB; an alpha channel, if present, is stripped.
ImageTensor read_png(const std::filesystem::path& path);

/// Writes an 8-bit gray or RGB PNG; values are clamped to [0,1] and scaled
/// to 0..255.
void write_png(const ImageTensor& img, const std::filesystem::path& path);

}  // namespace gmx
