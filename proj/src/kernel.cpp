#include "latdpp/kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "latdpp/errors.hpp"
#include "latdpp/linalg.hpp"

namespace latdpp {

namespace {

constexpr double kSpectrumTol = 1e-9;
constexpr double kCylinderClamp = 1e-10;

FourierTable table_for_window(const SpectralSymbol& symbol, const Window& window) {
  std::vector<std::int64_t> lags(static_cast<std::size_t>(window.dimension()));
  for (int j = 0; j < window.dimension(); ++j) {
    lags[static_cast<std::size_t>(j)] = window.max_lag(j);
  }
  return FourierTable(symbol, std::move(lags));
}

std::complex<double> table_entry(const FourierTable& table, const Window& w,
                                 std::size_t i, std::size_t j) {
  auto pi = w.point(i);
  auto pj = w.point(j);
  std::vector<std::int64_t> lag(pi.size());
  for (std::size_t a = 0; a < pi.size(); ++a) lag[a] = pi[a] - pj[a];
  return table.value(lag);
}

}  // namespace

Eigen::MatrixXcd kernel_matrix(const SpectralSymbol& symbol, const Window& window) {
  FourierTable table = table_for_window(symbol, window);
  const auto n = static_cast<Eigen::Index>(window.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      auto v = table_entry(table, window, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      m(i, j) = v;
      m(j, i) = std::conj(v);  // Hermitian by construction, exactly
    }
  }
  return m;
}

bool kernel_matrix_is_real(const SpectralSymbol& symbol, const Window& window) {
  return table_for_window(symbol, window).all_real();
}

KernelWindow::KernelWindow(const SpectralSymbol& symbol, Window window)
    : window_(std::move(window)), sigma_(symbol.mean_density()) {
  FourierTable table = table_for_window(symbol, window_);
  real_ = table.all_real();
  const auto n = static_cast<Eigen::Index>(window_.size());
  Eigen::VectorXd raw;
  if (real_) {
    rmat_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        double v = table_entry(table, window_, static_cast<std::size_t>(i),
                               static_cast<std::size_t>(j))
                       .real();
        rmat_(i, j) = v;
        rmat_(j, i) = v;
      }
    }
    rvecs_ = rmat_;
    eigh_inplace(rvecs_, raw);
  } else {
    cmat_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        auto v = table_entry(table, window_, static_cast<std::size_t>(i),
                             static_cast<std::size_t>(j));
        cmat_(i, j) = v;
        cmat_(j, i) = std::conj(v);
      }
    }
    cvecs_ = cmat_;
    eigh_inplace(cvecs_, raw);
  }
  max_raw_ = raw(n - 1);
  if (raw(0) < -kSpectrumTol || raw(n - 1) > 1.0 + kSpectrumTol) {
    throw SpectrumOutOfRange("kernel eigenvalue outside [-1e-9, 1+1e-9]: [" +
                             std::to_string(raw(0)) + ", " + std::to_string(raw(n - 1)) + "]");
  }
  // descending order, clamped into [0,1]
  eigenvalues_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eigenvalues_(i) = std::clamp(raw(n - 1 - i), 0.0, 1.0);
  }
  if (real_) {
    rvecs_ = rvecs_.rowwise().reverse().eval();
  } else {
    cvecs_ = cvecs_.rowwise().reverse().eval();
  }
}

double KernelWindow::gap_probability() const {
  double p = 1.0;
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) p *= 1.0 - eigenvalues_(i);
  return p;
}

double correlation(const SpectralSymbol& symbol,
                   const std::vector<std::vector<std::int64_t>>& points) {
  if (points.empty()) return 1.0;
  if (points.size() > kMaxCorrelationPoints) {
    throw WindowTooLarge("correlation supports at most 20 points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw DuplicatePoints("correlation points must be distinct");
    }
  }
  const auto k = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd m(k, k);
  std::vector<std::int64_t> lag(points[0].size());
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      for (std::size_t a = 0; a < lag.size(); ++a) {
        lag[a] = points[static_cast<std::size_t>(i)][a] - points[static_cast<std::size_t>(j)][a];
      }
      m(i, j) = symbol.fourier_coeff(lag);
    }
  }
  return m.partialPivLu().determinant().real();
}

double gap_probability(const SpectralSymbol& symbol, const Window& window) {
  return KernelWindow(symbol, window).gap_probability();
}

namespace {

// determinant of the principal minor selected by mask
double minor_det(const Eigen::MatrixXcd& m, std::uint32_t mask) {
  const int k = std::popcount(mask);
  if (k == 0) return 1.0;
  Eigen::MatrixXcd sub(k, k);
  int r = 0;
  for (int i = 0; mask >> i; ++i) {
    if (!(mask >> i & 1u)) continue;
    int c = 0;
    for (int j = 0; mask >> j; ++j) {
      if (!(mask >> j & 1u)) continue;
      sub(r, c) = m(i, j);
      ++c;
    }
    ++r;
  }
  if (k == 1) return sub(0, 0).real();
  return sub.partialPivLu().determinant().real();
}

double clamp_probability(double p) {
  if (p < 0.0 && p >= -kCylinderClamp) return 0.0;
  if (p > 1.0 && p <= 1.0 + kCylinderClamp) return 1.0;
  return p;
}

}  // namespace

double cylinder_probability(const SpectralSymbol& symbol, const Window& window,
                            std::uint32_t subset_mask) {
  const std::size_t n = window.size();
  if (n > kMaxExactDistributionWindow) {
    throw WindowTooLargeForExactDistribution("cylinder probabilities need |W| <= 14");
  }
  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  if (subset_mask & ~full) throw SNotSubsetOfW("subset mask has bits outside the window");

  Eigen::MatrixXcd m = kernel_matrix(symbol, window);
  // sum over supersets T of S: (-1)^{|T \ S|} det K_T
  const std::uint32_t rest = full & ~subset_mask;
  double p = 0.0;
  std::uint32_t u = 0;
  for (;;) {
    double d = minor_det(m, subset_mask | u);
    p += (std::popcount(u) % 2 == 0) ? d : -d;
    if (u == rest) break;
    u = (u - rest) & rest;  // next subset of rest
  }
  return clamp_probability(p);
}

double cylinder_probability(const SpectralSymbol& symbol, const Window& window,
                            const std::vector<std::vector<std::int64_t>>& subset) {
  std::uint32_t mask = 0;
  for (const auto& p : subset) {
    std::int64_t idx = window.find(p);
    if (idx < 0) throw SNotSubsetOfW("subset point not contained in the window");
    mask |= 1u << idx;
  }
  return cylinder_probability(symbol, window, mask);
}

std::vector<double> exact_distribution(const SpectralSymbol& symbol, const Window& window) {
  const std::size_t n = window.size();
  if (n > kMaxExactDistributionWindow) {
    throw WindowTooLargeForExactDistribution("exact distribution needs |W| <= 14");
  }
  Eigen::MatrixXcd m = kernel_matrix(symbol, window);
  const std::size_t total = std::size_t{1} << n;
  std::vector<double> p(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    p[mask] = minor_det(m, static_cast<std::uint32_t>(mask));
  }
  // superset Moebius transform: P(S) = sum_{T >= S} (-1)^{|T\S|} det K_T
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < total; ++mask) {
      if (!(mask & bit)) p[mask] -= p[mask | bit];
    }
  }
  for (auto& v : p) v = clamp_probability(v);
  return p;
}

}  // namespace latdpp
