#include "gmx/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "gmx/fft.hpp"
#include "gmx/image_ops.hpp"
#include "gmx/parallel.hpp"
#include "gmx/tensor_io.hpp"

namespace gmx {

namespace {

constexpr double kLogEps = 1e-12;   // log-amplitude stabilizer
constexpr double kFlatEps = 1e-12;  // below this total, normalize to uniform

// Amplitudes below this fraction of the spectral peak are treated as noise.
// Without the floor, bins where the spectrum vanishes exactly (synthetic
// images produce them structurally) swing the log-amplitude by tens of
// units and the residual reconstruction degenerates into lattice artifacts.
// The floor is relative, so the residual stays invariant under input gain.
constexpr double kSpectrumFloor = 1e-3;

// Symmetric reflection of an out-of-range index into [0, n).
int reflect(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i = ((i % period) + period) % period;
    return i < n ? i : period - 1 - i;
}

// 3x3 box average with reflect padding, used on the log-amplitude spectrum.
std::vector<double> box3x3(const std::vector<double>& src, int h, int w) {
    std::vector<double> out(src.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    acc += src[static_cast<std::size_t>(reflect(y + dy, h)) * w +
                               reflect(x + dx, w)];
            out[static_cast<std::size_t>(y) * w + x] = acc / 9.0;
        }
    }
    return out;
}

}  // namespace

SaliencyMap resize_map(const SaliencyMap& map, int out_h, int out_w) {
    SaliencyMap out;
    out.height = out_h;
    out.width = out_w;
    out.values = detail::resample_bilinear(map.values, map.height, map.width,
                                           1, out_h, out_w);
    for (double& v : out.values) v = std::max(v, 0.0);
    return out;
}

SaliencyMap spectral_residual(const ImageTensor& img, int working_size) {
    if (img.height < 1 || img.width < 1 || img.data.empty())
        throw std::invalid_argument("spectral_residual: empty image");
    if (working_size < 1)
        throw std::invalid_argument("spectral_residual: working_size must be positive");

    const ImageTensor gray = to_grayscale(img);

    // An all-equal image carries no spectral structure; the residual
    // reconstruction of such a spectrum is dominated by the DC artifact, so
    // return the flat map directly.
    const auto [mn, mx] = std::minmax_element(gray.data.begin(), gray.data.end());
    if (static_cast<double>(*mx) - static_cast<double>(*mn) <= 1e-12)
        return SaliencyMap(img.height, img.width, 1.0);

    const double scale =
        static_cast<double>(working_size) / std::max(gray.height, gray.width);
    const int wh = std::max(1, static_cast<int>(std::lround(gray.height * scale)));
    const int ww = std::max(1, static_cast<int>(std::lround(gray.width * scale)));
    const ImageTensor small = resize_bilinear(gray, wh, ww);

    std::vector<std::complex<double>> spectrum(small.pixel_count());
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        spectrum[i] = std::complex<double>(small.data[i], 0.0);
    fft::transform_2d(spectrum, wh, ww, false);

    double peak_amp = 0.0;
    for (const std::complex<double>& c : spectrum)
        peak_amp = std::max(peak_amp, std::abs(c));
    const double floor_amp = kSpectrumFloor * peak_amp;

    std::vector<double> log_amp(spectrum.size());
    std::vector<double> phase(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        log_amp[i] = std::log(std::max(std::abs(spectrum[i]), floor_amp) +
                              kLogEps);
        phase[i] = std::arg(spectrum[i]);
    }

    const std::vector<double> local_avg = box3x3(log_amp, wh, ww);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        // Sub-floor bins hold no signal and their phase is numerical noise;
        // they are dropped from the reconstruction.
        if (std::abs(spectrum[i]) < floor_amp) {
            spectrum[i] = {0.0, 0.0};
            continue;
        }
        const double residual = log_amp[i] - local_avg[i];
        spectrum[i] = std::polar(std::exp(residual), phase[i]);
    }
    fft::transform_2d(spectrum, wh, ww, true);

    SaliencyMap working(wh, ww);
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        working.values[i] = std::norm(spectrum[i]);

    return resize_map(working, img.height, img.width);
}

std::vector<double> gaussian_kernel_1d(int kernel, double sigma) {
    if (kernel < 1 || kernel % 2 == 0)
        throw std::invalid_argument("gaussian kernel size must be odd and positive");
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian sigma must be positive");

    std::vector<double> weights(kernel);
    const int radius = kernel / 2;
    double sum = 0.0;
    for (int k = 0; k < kernel; ++k) {
        const double d = k - radius;
        weights[k] = std::exp(-(d * d) / (2.0 * sigma * sigma));
        sum += weights[k];
    }
    for (double& w : weights) w /= sum;
    return weights;
}

SaliencyMap gaussian_blur(const SaliencyMap& map, int kernel, double sigma) {
    const std::vector<double> weights = gaussian_kernel_1d(kernel, sigma);
    const int radius = kernel / 2;
    const int h = map.height;
    const int w = map.width;

    SaliencyMap tmp(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += weights[k + radius] * map.at(y, reflect(x + k, w));
            tmp.at(y, x) = acc;
        }
    }
    SaliencyMap out(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += weights[k + radius] * tmp.at(reflect(y + k, h), x);
            out.at(y, x) = acc;
        }
    }
    return out;
}

NormalizedSaliency normalize_sum_to_1(const SaliencyMap& map) {
    if (map.values.empty())
        throw std::invalid_argument("normalize_sum_to_1: empty map");

    double total = 0.0;
    for (double v : map.values) {
        if (v < 0.0)
            throw std::invalid_argument("normalize_sum_to_1: negative value");
        total += v;
    }

    SaliencyMap out(map.height, map.width);
    if (total < kFlatEps) {
        const double uniform = 1.0 / static_cast<double>(map.size());
        std::fill(out.values.begin(), out.values.end(), uniform);
    } else {
        for (std::size_t i = 0; i < map.size(); ++i)
            out.values[i] = map.values[i] / total;
    }
    return NormalizedSaliency(std::move(out));
}

SaliencyMap load_external_saliency(const std::filesystem::path& path,
                                   int target_h, int target_w) {
    GmtnTensor t = read_tensor(path);
    if (t.dims.size() != 2)
        throw TensorIoError(TensorIoError::Kind::bad_rank,
                            "expected rank-2 saliency map in " + path.string() +
                                ", got rank " + std::to_string(t.dims.size()));

    SaliencyMap map;
    map.height = static_cast<int>(t.dims[0]);
    map.width = static_cast<int>(t.dims[1]);
    map.values.resize(t.data.size());
    for (std::size_t i = 0; i < t.data.size(); ++i)
        map.values[i] = std::abs(static_cast<double>(t.data[i]));

    if (map.height == target_h && map.width == target_w) return map;
    return resize_map(map, target_h, target_w);
}

std::vector<NormalizedSaliency> prepare_saliency(
    const std::vector<ImageTensor>& batch, const SaliencyParams& params) {
    if (batch.empty())
        throw std::invalid_argument("prepare_saliency: empty batch");
    if (params.method == SaliencyMethod::external &&
        params.external_paths.size() != batch.size())
        throw std::invalid_argument(
            "prepare_saliency: external method needs one saliency path per image");

    const int h = batch[0].height;
    const int w = batch[0].width;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (batch[i].height != h || batch[i].width != w)
            throw std::invalid_argument(
                "prepare_saliency: image " + std::to_string(i) +
                " has resolution " + std::to_string(batch[i].height) + "x" +
                std::to_string(batch[i].width) + ", batch uses " +
                std::to_string(h) + "x" + std::to_string(w));
    }

    std::vector<NormalizedSaliency> out(batch.size());
    parallel_for(batch.size(), params.threads, [&](std::size_t i) {
        SaliencyMap raw =
            params.method == SaliencyMethod::spectral_residual
                ? spectral_residual(batch[i], params.working_size)
                : load_external_saliency(params.external_paths[i], h, w);
        out[i] = normalize_sum_to_1(
            gaussian_blur(raw, params.blur_kernel, params.blur_sigma));
    });
    return out;
}

}  // namespace gmx
