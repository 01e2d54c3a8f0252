#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace aplab {

/// In-place forward DFT (e(-xi n / M) convention) of a power-of-two-sized
/// buffer.  Plans are cached per size; execution is safe from multiple
/// threads at once.
void fft_forward(std::vector<std::complex<double>>& buf);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace aplab
