#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmx/tensor.hpp"

namespace gmx {

/// Dense float32 tensor as stored in a .gmtn file.
///
/// Byte layout, little-endian throughout:
///   magic "GMTN" (0x47 0x4D 0x54 0x4E), version byte (1), dtype byte
///   (1 = float32), ndim byte, one reserved zero byte, ndim x uint32
///   dimensions, then product(dims) float32 values, row-major.
struct GmtnTensor {
    std::vector<std::uint32_t> dims;
    std::vector<float> data;

    std::size_t element_count() const {
        std::size_t n = 1;
        for (std::uint32_t d : dims) n *= d;
        return n;
    }
};

class TensorIoError : public std::runtime_error {
public:
    enum class Kind {
        open_failed,
        bad_magic,
        unsupported_version,
        unsupported_dtype,
        bad_rank,
        truncated,
        write_failed,
    };

    TensorIoError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

void write_tensor(const GmtnTensor& t, const std::filesystem::path& path);
GmtnTensor read_tensor(const std::filesystem::path& path);

/// Image adapters: an ImageTensor serializes as rank-3 (H, W, C).
void write_image_tensor(const ImageTensor& img,
                        const std::filesystem::path& path);
ImageTensor read_image_tensor(const std::filesystem::path& path);

}  // namespace gmx
