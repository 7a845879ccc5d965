#include "latdpp/linalg.hpp"

#include <complex>
#include <mutex>

#include <lapacke.h>

#include "latdpp/errors.hpp"

// Deterministic output across machines with different core counts requires a
// fixed LAPACK thread count.  The symbol is absent with reference BLAS.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace latdpp {

namespace {

void pin_blas_threads() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    if (openblas_set_num_threads) openblas_set_num_threads(1);
  });
}

}  // namespace

void eigh_inplace(Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues) {
  pin_blas_threads();
  const lapack_int n = static_cast<lapack_int>(a.rows());
  eigenvalues.resize(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n,
                                   eigenvalues.data());
  if (info != 0) throw Error("dsyevd failed with info=" + std::to_string(info));
}

void eigh_inplace(Eigen::MatrixXcd& a, Eigen::VectorXd& eigenvalues) {
  pin_blas_threads();
  const lapack_int n = static_cast<lapack_int>(a.rows());
  eigenvalues.resize(n);
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                   reinterpret_cast<lapack_complex_double*>(a.data()), n,
                                   eigenvalues.data());
  if (info != 0) throw Error("zheevd failed with info=" + std::to_string(info));
}

}  // namespace latdpp
