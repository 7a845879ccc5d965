#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace latdpp {

// In-place iterative radix-2 transform.  sign = +1 evaluates
// X[j] = sum_m x[m] exp(+2*pi*i*j*m/n); sign = -1 the conjugate.
// n must be a power of two.  Unnormalized.
void fft_pow2(std::vector<std::complex<double>>& x, int sign);

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace latdpp
