#pragma once

#include <complex>
#include <vector>

namespace gwl {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Unitary DFT pair, 1/sqrt(n) in both directions.
/// forward:  out[k] = n^{-1/2} sum_j in[j] e^{-2 pi i jk/n}
/// inverse:  out[j] = n^{-1/2} sum_k in[k] e^{+2 pi i jk/n}
/// Thread-safe; plans are cached per size behind a mutex and executed
/// on caller buffers.
cvec fft_forward(const cvec& in);
cvec fft_inverse(const cvec& in);

}  // namespace gwl
