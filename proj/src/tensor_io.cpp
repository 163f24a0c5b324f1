#include "gmx/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

namespace gmx {

namespace {

constexpr unsigned char kMagic[4] = {0x47, 0x4D, 0x54, 0x4E};  // "GMTN"
constexpr unsigned char kVersion = 1;
constexpr unsigned char kDtypeFloat32 = 1;

static_assert(std::endian::native == std::endian::little,
              "gmtn I/O assumes a little-endian host");
static_assert(sizeof(float) == 4);

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                          static_cast<unsigned char>((v >> 8) & 0xFF),
                          static_cast<unsigned char>((v >> 16) & 0xFF),
                          static_cast<unsigned char>((v >> 24) & 0xFF)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in, const std::string& what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw TensorIoError(TensorIoError::Kind::truncated,
                            "truncated gmtn file while reading " + what);
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_tensor(const GmtnTensor& t, const std::filesystem::path& path) {
    if (t.dims.empty() || t.dims.size() > 255)
        throw std::invalid_argument("gmtn rank must be in [1,255]");
    if (t.data.size() != t.element_count())
        throw std::invalid_argument("gmtn data length does not match dims");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw TensorIoError(TensorIoError::Kind::write_failed,
                            "cannot open " + path.string() + " for writing");

    out.write(reinterpret_cast<const char*>(kMagic), 4);
    unsigned char head[4] = {kVersion, kDtypeFloat32,
                             static_cast<unsigned char>(t.dims.size()), 0};
    out.write(reinterpret_cast<const char*>(head), 4);
    for (std::uint32_t d : t.dims) put_u32(out, d);
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size() * sizeof(float)));
    if (!out)
        throw TensorIoError(TensorIoError::Kind::write_failed,
                            "short write to " + path.string());
}

GmtnTensor read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw TensorIoError(TensorIoError::Kind::open_failed,
                            "cannot open " + path.string());

    unsigned char magic[4];
    if (!in.read(reinterpret_cast<char*>(magic), 4))
        throw TensorIoError(TensorIoError::Kind::truncated,
                            "truncated gmtn file while reading magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw TensorIoError(TensorIoError::Kind::bad_magic,
                            "bad magic in " + path.string());

    unsigned char head[4];
    if (!in.read(reinterpret_cast<char*>(head), 4))
        throw TensorIoError(TensorIoError::Kind::truncated,
                            "truncated gmtn file while reading header");
    if (head[0] != kVersion)
        throw TensorIoError(TensorIoError::Kind::unsupported_version,
                            "unsupported gmtn version " +
                                std::to_string(head[0]));
    if (head[1] != kDtypeFloat32)
        throw TensorIoError(TensorIoError::Kind::unsupported_dtype,
                            "unsupported gmtn dtype " + std::to_string(head[1]));
    const int ndim = head[2];
    if (ndim == 0)
        throw TensorIoError(TensorIoError::Kind::bad_rank,
                            "gmtn file has rank 0");

    GmtnTensor t;
    t.dims.resize(ndim);
    std::size_t count = 1;
    for (int i = 0; i < ndim; ++i) {
        t.dims[i] = get_u32(in, "dimensions");
        if (t.dims[i] == 0)
            throw TensorIoError(TensorIoError::Kind::truncated,
                                "gmtn dimension is zero");
        if (count > std::numeric_limits<std::size_t>::max() / t.dims[i])
            throw TensorIoError(TensorIoError::Kind::truncated,
                                "gmtn dimensions overflow");
        count *= t.dims[i];
    }

    t.data.resize(count);
    if (!in.read(reinterpret_cast<char*>(t.data.data()),
                 static_cast<std::streamsize>(count * sizeof(float))))
        throw TensorIoError(TensorIoError::Kind::truncated,
                            "truncated gmtn payload in " + path.string());
    return t;
}

void write_image_tensor(const ImageTensor& img,
                        const std::filesystem::path& path) {
    GmtnTensor t;
    t.dims = {static_cast<std::uint32_t>(img.height),
              static_cast<std::uint32_t>(img.width),
              static_cast<std::uint32_t>(img.channels)};
    t.data = img.data;
    write_tensor(t, path);
}

ImageTensor read_image_tensor(const std::filesystem::path& path) {
    GmtnTensor t = read_tensor(path);
    if (t.dims.size() != 3)
        throw TensorIoError(TensorIoError::Kind::bad_rank,
                            "expected rank-3 image tensor in " + path.string() +
                                ", got rank " + std::to_string(t.dims.size()));
    ImageTensor img;
    img.height = static_cast<int>(t.dims[0]);
    img.width = static_cast<int>(t.dims[1]);
    img.channels = static_cast<int>(t.dims[2]);
    img.data = std::move(t.data);
    return img;
}

}  // namespace gmx
