// Shared test fixtures and independent reference implementations. The
// reference code here deliberately avoids the library's FFT and filtering
// paths so it can serve as an oracle for them.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "gmx/pairing.hpp"
#include "gmx/saliency.hpp"
#include "gmx/tensor.hpp"

namespace testsupport {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline gmx::ImageTensor random_image(int h, int w, int c, std::uint64_t seed,
                                     double lo = 0.0, double hi = 1.0) {
    gmx::ImageTensor img(h, w, c);
    auto rng = make_rng(seed);
    for (float& v : img.data)
        v = static_cast<float>(uniform(rng, lo, hi));
    return img;
}

inline gmx::NormalizedSaliency random_normalized_map(int h, int w,
                                                     std::uint64_t seed) {
    gmx::SaliencyMap map(h, w);
    auto rng = make_rng(seed);
    for (double& v : map.values) v = uniform(rng);
    return gmx::normalize_sum_to_1(map);
}

inline gmx::DistanceMatrix random_symmetric_matrix(int m, std::uint64_t seed,
                                                   double lo = 0.0,
                                                   double hi = 1.0) {
    gmx::DistanceMatrix w(m);
    auto rng = make_rng(seed);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double v = uniform(rng, lo, hi);
            w.at(i, j) = v;
            w.at(j, i) = v;
        }
    }
    return w;
}

/// Cycle lengths of a permutation-shaped pairing, sorted ascending.
inline std::vector<int> cycle_lengths(const gmx::PairingMatrix& p) {
    const std::vector<int> target_of = p.targets();
    std::vector<bool> seen(p.m, false);
    std::vector<int> lengths;
    for (int start = 0; start < p.m; ++start) {
        if (seen[start]) continue;
        int len = 0;
        int v = start;
        do {
            seen[v] = true;
            v = target_of[v];
            ++len;
        } while (v != start);
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

/// Exhaustive maximum over permutations with no fixed points and no
/// 2-cycles; the brute-force oracle for the pairing solvers.
inline double brute_force_best_cover(const gmx::DistanceMatrix& w) {
    std::vector<int> perm(w.m);
    for (int i = 0; i < w.m; ++i) perm[i] = i;
    double best = -1.0;
    do {
        bool ok = true;
        for (int i = 0; i < w.m && ok; ++i)
            ok = perm[i] != i && perm[perm[i]] != i;
        if (!ok) continue;
        double obj = 0.0;
        for (int i = 0; i < w.m; ++i) obj += w.at(i, perm[i]);
        best = std::max(best, obj);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Exhaustive maximum over single Hamiltonian cycles only.
inline double brute_force_best_hamiltonian(const gmx::DistanceMatrix& w) {
    std::vector<int> perm(w.m);
    for (int i = 0; i < w.m; ++i) perm[i] = i;
    double best = -1.0;
    do {
        // Count the cycle containing vertex 0; a Hamiltonian cycle covers m.
        int len = 0;
        int v = 0;
        do {
            v = perm[v];
            ++len;
        } while (v != 0 && len <= w.m);
        if (len != w.m) continue;
        double obj = 0.0;
        for (int i = 0; i < w.m; ++i) obj += w.at(i, perm[i]);
        best = std::max(best, obj);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// ---------------------------------------------------------------------------
// Naive O(N^2) discrete Fourier transform, the oracle for the fast paths.

inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x, bool inverse) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    const double sign = inverse ? 2.0 : -2.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t t = 0; t < n; ++t) {
            const double ang = sign * std::numbers::pi *
                               static_cast<double>(k * t % n) /
                               static_cast<double>(n);
            acc += x[t] * std::polar(1.0, ang);
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

inline std::vector<std::complex<double>> naive_dft_2d(
    const std::vector<std::complex<double>>& x, int h, int w, bool inverse) {
    std::vector<std::complex<double>> tmp(x.size());
    for (int y = 0; y < h; ++y) {
        std::vector<std::complex<double>> row(x.begin() + y * w,
                                              x.begin() + (y + 1) * w);
        row = naive_dft(row, inverse);
        std::copy(row.begin(), row.end(), tmp.begin() + y * w);
    }
    std::vector<std::complex<double>> out(x.size());
    for (int c = 0; c < w; ++c) {
        std::vector<std::complex<double>> col(h);
        for (int y = 0; y < h; ++y) col[y] = tmp[y * w + c];
        col = naive_dft(col, inverse);
        for (int y = 0; y < h; ++y) out[y * w + c] = col[y];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reference spectral-residual pipeline, written against the documented
// conventions with its own grayscale, resampling, and filtering code.

inline std::vector<double> reference_bilinear(const std::vector<double>& src,
                                              int in_h, int in_w, int out_h,
                                              int out_w) {
    std::vector<double> out(static_cast<std::size_t>(out_h) * out_w);
    for (int y = 0; y < out_h; ++y) {
        const double fy =
            out_h > 1 ? static_cast<double>(y) * (in_h - 1) / (out_h - 1) : 0.0;
        const int y0 = std::min(static_cast<int>(std::floor(fy)), in_h - 1);
        const int y1 = std::min(y0 + 1, in_h - 1);
        const double wy = fy - y0;
        for (int x = 0; x < out_w; ++x) {
            const double fx =
                out_w > 1 ? static_cast<double>(x) * (in_w - 1) / (out_w - 1)
                          : 0.0;
            const int x0 = std::min(static_cast<int>(std::floor(fx)), in_w - 1);
            const int x1 = std::min(x0 + 1, in_w - 1);
            const double wx = fx - x0;
            const double top =
                (1.0 - wx) * src[y0 * in_w + x0] + wx * src[y0 * in_w + x1];
            const double bot =
                (1.0 - wx) * src[y1 * in_w + x0] + wx * src[y1 * in_w + x1];
            out[static_cast<std::size_t>(y) * out_w + x] =
                (1.0 - wy) * top + wy * bot;
        }
    }
    return out;
}

inline int reference_reflect(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

inline gmx::SaliencyMap reference_spectral_residual(const gmx::ImageTensor& img,
                                                    int working_size = 64) {
    // Grayscale.
    std::vector<double> gray(img.pixel_count());
    for (std::size_t i = 0; i < gray.size(); ++i) {
        if (img.channels == 1) {
            gray[i] = img.data[i];
        } else {
            gray[i] = 0.299 * img.data[i * 3] + 0.587 * img.data[i * 3 + 1] +
                      0.114 * img.data[i * 3 + 2];
        }
    }

    // Resize so the longer side equals working_size.
    const double scale = static_cast<double>(working_size) /
                         std::max(img.height, img.width);
    const int wh = std::max(
        1, static_cast<int>(std::lround(img.height * scale)));
    const int ww =
        std::max(1, static_cast<int>(std::lround(img.width * scale)));
    std::vector<double> small =
        reference_bilinear(gray, img.height, img.width, wh, ww);
    for (double& v : small) v = std::clamp(v, 0.0, 1.0);

    // Forward transform, log amplitude and phase. Amplitudes are floored at
    // 1e-3 of the spectral peak, matching the documented convention.
    std::vector<std::complex<double>> freq(small.size());
    for (std::size_t i = 0; i < small.size(); ++i) freq[i] = {small[i], 0.0};
    freq = naive_dft_2d(freq, wh, ww, false);

    double peak = 0.0;
    for (const std::complex<double>& c : freq)
        peak = std::max(peak, std::abs(c));
    const double floor_amp = 1e-3 * peak;

    std::vector<double> log_amp(freq.size());
    std::vector<double> phase(freq.size());
    for (std::size_t i = 0; i < freq.size(); ++i) {
        log_amp[i] =
            std::log(std::max(std::abs(freq[i]), floor_amp) + 1e-12);
        phase[i] = std::arg(freq[i]);
    }

    // Residual against the 3x3 local average, reconstruct, square.
    // Sub-floor bins are excluded from the reconstruction.
    std::vector<std::complex<double>> recon(freq.size());
    for (int y = 0; y < wh; ++y) {
        for (int x = 0; x < ww; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * ww + x;
            if (std::abs(freq[i]) < floor_amp) {
                recon[i] = {0.0, 0.0};
                continue;
            }
            double avg = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    avg += log_amp[reference_reflect(y + dy, wh) * ww +
                                   reference_reflect(x + dx, ww)];
            avg /= 9.0;
            recon[i] = std::polar(std::exp(log_amp[i] - avg), phase[i]);
        }
    }
    recon = naive_dft_2d(recon, wh, ww, true);

    std::vector<double> sal(recon.size());
    for (std::size_t i = 0; i < recon.size(); ++i) sal[i] = std::norm(recon[i]);

    gmx::SaliencyMap out;
    out.height = img.height;
    out.width = img.width;
    out.values = reference_bilinear(sal, wh, ww, img.height, img.width);
    for (double& v : out.values) v = std::max(v, 0.0);
    return out;
}

/// 64x64 black image with a bright square at [top, top+side) x [left,
/// left+side); the standard saliency test subject.
inline gmx::ImageTensor blob_image(int size = 64, int top = 24, int left = 24,
                                   int side = 8, float background = 0.0f,
                                   float foreground = 1.0f) {
    gmx::ImageTensor img(size, size, 1, background);
    for (int y = top; y < top + side; ++y)
        for (int x = left; x < left + side; ++x) img.at(y, x, 0) = foreground;
    return img;
}

}  // namespace testsupport
