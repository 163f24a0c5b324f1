#include "gmx/fft.hpp"

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace gmx::fft {

namespace {

using cd = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey without the inverse scaling factor.
void radix2(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double base =
            (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd w = std::polar(1.0, base * static_cast<double>(k));
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Bluestein's chirp transform: expresses a length-n DFT as a convolution,
// evaluated with a padded power-of-two transform.
void bluestein(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    const double sign = inverse ? 1.0 : -1.0;

    std::vector<cd> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the phase argument small.
        const std::size_t k2 = (k * k) % (2 * n);
        chirp[k] = std::polar(
            1.0, sign * std::numbers::pi * static_cast<double>(k2) /
                     static_cast<double>(n));
    }

    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    std::vector<cd> x(m, cd{0.0, 0.0});
    std::vector<cd> y(m, cd{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = std::conj(chirp[k]);
        if (k != 0) y[m - k] = std::conj(chirp[k]);
    }

    radix2(x, false);
    radix2(y, false);
    for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
    radix2(x, true);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * inv_m * chirp[k];
}

void transform_unscaled(std::vector<cd>& a, bool inverse) {
    if (a.size() <= 1) return;
    if (is_pow2(a.size()))
        radix2(a, inverse);
    else
        bluestein(a, inverse);
}

}  // namespace

void transform(std::vector<cd>& values, bool inverse) {
    if (values.empty()) throw std::invalid_argument("fft of empty sequence");
    transform_unscaled(values, inverse);
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(values.size());
        for (cd& v : values) v *= inv_n;
    }
}

void transform_2d(std::vector<cd>& values, int height, int width,
                  bool inverse) {
    if (height < 1 || width < 1 ||
        values.size() != static_cast<std::size_t>(height) * width)
        throw std::invalid_argument("fft_2d: shape does not match buffer");

    std::vector<cd> line;
    line.resize(width);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x)
            line[x] = values[static_cast<std::size_t>(y) * width + x];
        transform(line, inverse);
        for (int x = 0; x < width; ++x)
            values[static_cast<std::size_t>(y) * width + x] = line[x];
    }

    line.resize(height);
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y)
            line[y] = values[static_cast<std::size_t>(y) * width + x];
        transform(line, inverse);
        for (int y = 0; y < height; ++y)
            values[static_cast<std::size_t>(y) * width + x] = line[y];
    }
}

}  // namespace gmx::fft
