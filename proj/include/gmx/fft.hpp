#pragma once

#include <complex>
#include <vector>

namespace gmx::fft {

/// In-place complex DFT of arbitrary length. Power-of-two lengths use an
/// iterative radix-2 pass; other lengths go through Bluestein's chirp
/// transform. The inverse applies the 1/n factor.
void transform(std::vector<std::complex<double>>& values, bool inverse);

/// Row-column 2-D transform of a row-major h x w grid. The inverse applies
/// the 1/(h*w) factor.
void transform_2d(std::vector<std::complex<double>>& values, int height,
                  int width, bool inverse);

}  // namespace gmx::fft
