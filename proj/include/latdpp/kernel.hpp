#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "latdpp/symbol.hpp"
#include "latdpp/window.hpp"

namespace latdpp {

// Restriction of the translation-invariant kernel K(n,m) = \hat f(n-m) to a
// finite window, with its eigendecomposition.  Construction clamps
// eigenvalues into [0,1]; raw values outside [-1e-9, 1+1e-9] signal a broken
// symbol or eigensolver and raise SpectrumOutOfRange.
class KernelWindow {
 public:
  KernelWindow(const SpectralSymbol& symbol, Window window);

  const Window& window() const { return window_; }
  double sigma() const { return sigma_; }
  bool real() const { return real_; }

  // descending, clamped to [0,1]
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double max_raw_eigenvalue() const { return max_raw_; }

  // kernel matrix and orthonormal eigenvectors; the real accessors are valid
  // only when real() is true, the complex ones only otherwise
  const Eigen::MatrixXd& matrix_real() const { return rmat_; }
  const Eigen::MatrixXd& eigenvectors_real() const { return rvecs_; }
  const Eigen::MatrixXcd& matrix_complex() const { return cmat_; }
  const Eigen::MatrixXcd& eigenvectors_complex() const { return cvecs_; }

  std::complex<double> entry(std::size_t i, std::size_t j) const {
    return real_ ? std::complex<double>(rmat_(static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(j)),
                                        0.0)
                 : cmat_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  // det(I - K_W) as the product of (1 - lambda_i)
  double gap_probability() const;

 private:
  Window window_;
  double sigma_ = 0.0;
  bool real_ = true;
  double max_raw_ = 0.0;
  Eigen::MatrixXd rmat_, rvecs_;
  Eigen::MatrixXcd cmat_, cvecs_;
  Eigen::VectorXd eigenvalues_;
};

// Hermitian kernel matrix on a window without the eigendecomposition (the
// sequential sampler and the cylinder oracles only need entries).
Eigen::MatrixXcd kernel_matrix(const SpectralSymbol& symbol, const Window& window);
bool kernel_matrix_is_real(const SpectralSymbol& symbol, const Window& window);

// P(all points occupied) = det[\hat f(n_i - n_j)].  Up to 20 distinct points.
double correlation(const SpectralSymbol& symbol,
                   const std::vector<std::vector<std::int64_t>>& points);

double gap_probability(const SpectralSymbol& symbol, const Window& window);

// P(X cap W = S) by inclusion-exclusion over correlation determinants.
// subset_mask bit i refers to window point i in enumeration order. |W| <= 14.
double cylinder_probability(const SpectralSymbol& symbol, const Window& window,
                            std::uint32_t subset_mask);
double cylinder_probability(const SpectralSymbol& symbol, const Window& window,
                            const std::vector<std::vector<std::int64_t>>& subset);

// all 2^|W| cylinder probabilities, indexed by subset mask
std::vector<double> exact_distribution(const SpectralSymbol& symbol, const Window& window);

inline constexpr std::size_t kMaxExactDistributionWindow = 14;
inline constexpr std::size_t kMaxCorrelationPoints = 20;

}  // namespace latdpp
