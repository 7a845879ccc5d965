#include "latdpp/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "latdpp/errors.hpp"

namespace latdpp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kNonnegGridLog2 = 16;   // grid size for trig-poly range validation
constexpr double kRangeSlack = 1e-12;

// angle 2 pi k b reduced through the exact residue (k * num) mod den so no
// precision is lost at large k
double reduced_angle(std::int64_t k, const Rational& b) {
  __int128 prod = static_cast<__int128>(k) * b.num;
  std::int64_t r = static_cast<std::int64_t>(prod % b.den);
  if (r < 0) r += b.den;
  return kTwoPi * static_cast<double>(r) / static_cast<double>(b.den);
}

std::complex<double> unit_exp_rational(std::int64_t k, const Rational& b) {
  double ang = -reduced_angle(k, b);
  return {std::cos(ang), std::sin(ang)};
}

// f(t) = f(1-t) exactly: every interval has a mirror with the same height.
// Symmetric factors have real coefficients and get a real closed form, so
// real kernels are detected as real.
bool piecewise_mirror_symmetric(const PiecewiseConstantFactor& f) {
  const Rational one(1, 1);
  for (std::size_t i = 0; i < f.heights.size(); ++i) {
    Rational lo = one.minus(f.breakpoints[i + 1]);
    Rational hi = one.minus(f.breakpoints[i]);
    bool found = false;
    for (std::size_t j = 0; j < f.heights.size(); ++j) {
      if (f.breakpoints[j] == lo && f.breakpoints[j + 1] == hi) {
        found = f.heights[j] == f.heights[i];
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::complex<double> piecewise_coeff_nonneg(const PiecewiseConstantFactor& f, std::int64_t k) {
  if (k == 0) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.heights.size(); ++i) {
      s += f.heights[i] * f.breakpoints[i + 1].minus(f.breakpoints[i]).value();
    }
    return {s, 0.0};
  }
  const double denom = kTwoPi * static_cast<double>(k);
  if (piecewise_mirror_symmetric(f)) {
    // the sine part vanishes identically; keep the coefficient exactly real
    double s = 0.0;
    for (std::size_t i = 0; i < f.heights.size(); ++i) {
      if (f.heights[i] == 0.0) continue;
      s += f.heights[i] * (std::sin(reduced_angle(k, f.breakpoints[i + 1])) -
                           std::sin(reduced_angle(k, f.breakpoints[i])));
    }
    return {s / denom, 0.0};
  }
  std::complex<double> s{0.0, 0.0};
  for (std::size_t i = 0; i < f.heights.size(); ++i) {
    if (f.heights[i] == 0.0) continue;
    std::complex<double> term =
        unit_exp_rational(k, f.breakpoints[i]) - unit_exp_rational(k, f.breakpoints[i + 1]);
    s += f.heights[i] * term;
  }
  return s / std::complex<double>{0.0, denom};
}

void validate_factor(const SymbolFactor& f) {
  if (const auto* c = std::get_if<ConstantFactor>(&f)) {
    if (!(c->value > 0.0 && c->value < 1.0)) {
      throw InvalidSymbol("constant factor must lie strictly in (0,1)");
    }
    return;
  }
  if (const auto* p = std::get_if<PiecewiseConstantFactor>(&f)) {
    if (p->breakpoints.size() < 2 || p->heights.size() + 1 != p->breakpoints.size()) {
      throw InvalidSymbol("piecewise factor needs m+1 breakpoints for m heights");
    }
    if (!(p->breakpoints.front() == Rational(0, 1)) || !(p->breakpoints.back() == Rational(1, 1))) {
      throw InvalidSymbol("piecewise breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 0; i + 1 < p->breakpoints.size(); ++i) {
      if (!(p->breakpoints[i] < p->breakpoints[i + 1])) {
        throw InvalidSymbol("piecewise breakpoints must be strictly increasing");
      }
    }
    for (double h : p->heights) {
      if (!(h >= 0.0 && h <= 1.0)) throw InvalidSymbol("piecewise heights must lie in [0,1]");
    }
    return;
  }
  const auto& t = std::get<TrigPolynomialFactor>(f);
  if (t.coeffs.empty() || t.coeffs.size() % 2 == 0) {
    throw InvalidSymbol("trig factor stores coefficients for k = -K..K (odd count)");
  }
  int K = t.max_degree();
  for (int k = 1; k <= K; ++k) {
    std::complex<double> a = t.coeff(k), b = t.coeff(-k);
    if (b != std::conj(a)) {
      throw InvalidSymbol("trig coefficients must satisfy c_{-k} = conj(c_k) exactly");
    }
  }
  if (t.coeff(0).imag() != 0.0) throw InvalidSymbol("trig c_0 must be real");
  // range check on a dense grid; sum-of-squares certification is out of scope
  const int n = 1 << kNonnegGridLog2;
  for (int i = 0; i < n; ++i) {
    double v = factor_evaluate(f, static_cast<double>(i) / n);
    if (v < -kRangeSlack || v > 1.0 + kRangeSlack) {
      throw InvalidSymbol("trig factor leaves [0,1] on the validation grid");
    }
  }
}

}  // namespace

std::complex<double> factor_fourier_coeff(const SymbolFactor& f, std::int64_t k) {
  if (const auto* c = std::get_if<ConstantFactor>(&f)) {
    return {k == 0 ? c->value : 0.0, 0.0};
  }
  if (const auto* p = std::get_if<PiecewiseConstantFactor>(&f)) {
    if (k >= 0) return piecewise_coeff_nonneg(*p, k);
    return std::conj(piecewise_coeff_nonneg(*p, -k));
  }
  return std::get<TrigPolynomialFactor>(f).coeff(k);
}

double factor_mean(const SymbolFactor& f) { return factor_fourier_coeff(f, 0).real(); }

double factor_squared_integral(const SymbolFactor& f) {
  if (const auto* c = std::get_if<ConstantFactor>(&f)) return c->value * c->value;
  if (const auto* p = std::get_if<PiecewiseConstantFactor>(&f)) {
    double s = 0.0;
    for (std::size_t i = 0; i < p->heights.size(); ++i) {
      s += p->heights[i] * p->heights[i] * p->breakpoints[i + 1].minus(p->breakpoints[i]).value();
    }
    return s;
  }
  const auto& t = std::get<TrigPolynomialFactor>(f);
  double s = 0.0;
  for (const auto& c : t.coeffs) s += std::norm(c);
  return s;
}

double factor_evaluate(const SymbolFactor& f, double t) {
  t -= std::floor(t);
  if (const auto* c = std::get_if<ConstantFactor>(&f)) return c->value;
  if (const auto* p = std::get_if<PiecewiseConstantFactor>(&f)) {
    for (std::size_t i = 0; i < p->heights.size(); ++i) {
      if (t < p->breakpoints[i + 1].value()) return p->heights[i];
    }
    return p->heights.back();
  }
  const auto& tp = std::get<TrigPolynomialFactor>(f);
  double v = tp.coeff(0).real();
  for (int k = 1; k <= tp.max_degree(); ++k) {
    std::complex<double> e(std::cos(kTwoPi * k * t), std::sin(kTwoPi * k * t));
    v += 2.0 * (tp.coeff(k) * e).real();
  }
  return v;
}

SpectralSymbol::SpectralSymbol(std::vector<SymbolFactor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidSymbol("symbol needs at least one factor");
  for (const auto& f : factors_) validate_factor(f);
  sigma_ = 1.0;
  for (const auto& f : factors_) sigma_ *= factor_mean(f);
  if (!(sigma_ > 0.0 && sigma_ < 1.0)) {
    throw InvalidSymbol("mean density must lie strictly in (0,1)");
  }
}

SpectralSymbol SpectralSymbol::constant(double p, int dimension) {
  std::vector<SymbolFactor> fs;
  for (int i = 0; i < dimension; ++i) fs.push_back(ConstantFactor{p});
  return SpectralSymbol(std::move(fs));
}

SpectralSymbol SpectralSymbol::symmetric_band(const Rational& half_width) {
  Rational w = half_width;
  if (!(Rational(0, 1) < w) || !(w < Rational(1, 2))) {
    throw InvalidSymbol("band half-width must lie in (0, 1/2)");
  }
  PiecewiseConstantFactor f;
  f.breakpoints = {Rational(0, 1), w, Rational(1, 1).minus(w), Rational(1, 1)};
  f.heights = {1.0, 0.0, 1.0};
  return SpectralSymbol({SymbolFactor(std::move(f))});
}

SpectralSymbol SpectralSymbol::raised_cosine(double mean_level, double amplitude) {
  TrigPolynomialFactor f;
  f.coeffs = {std::complex<double>(amplitude / 2, 0.0), std::complex<double>(mean_level, 0.0),
              std::complex<double>(amplitude / 2, 0.0)};
  return SpectralSymbol({SymbolFactor(std::move(f))});
}

SpectralSymbol SpectralSymbol::tensor(std::vector<SpectralSymbol> parts) {
  std::vector<SymbolFactor> fs;
  for (auto& p : parts) {
    for (auto& f : p.factors_) fs.push_back(std::move(f));
  }
  return SpectralSymbol(std::move(fs));
}

std::complex<double> SpectralSymbol::fourier_coeff(std::span<const std::int64_t> k) const {
  if (k.size() != factors_.size()) {
    throw InvalidSymbol("lag dimension does not match symbol dimension");
  }
  std::complex<double> v{1.0, 0.0};
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    v *= factor_fourier_coeff(factors_[j], k[j]);
  }
  return v;
}

std::complex<double> SpectralSymbol::fourier_coeff(std::int64_t k) const {
  return fourier_coeff(std::span<const std::int64_t>(&k, 1));
}

double SpectralSymbol::squared_integral() const {
  double s = 1.0;
  for (const auto& f : factors_) s *= factor_squared_integral(f);
  return s;
}

double SpectralSymbol::riesz_constant_sq() const {
  double v = sigma_ - squared_integral();
  return v < 0.0 ? 0.0 : v;  // exact arithmetic keeps it >= 0; guard rounding
}

double SpectralSymbol::covariance(std::span<const std::int64_t> lag) const {
  bool zero = std::all_of(lag.begin(), lag.end(), [](std::int64_t v) { return v == 0; });
  if (zero) return sigma_ - sigma_ * sigma_;
  return -std::norm(fourier_coeff(lag));
}

double SpectralSymbol::covariance(std::int64_t lag) const {
  return covariance(std::span<const std::int64_t>(&lag, 1));
}

double SpectralSymbol::field_spectral_density(double t, int truncation) const {
  if (dimension() != 1) {
    throw InvalidSymbol("field spectral density is a one-dimensional diagnostic");
  }
  // sigma - sum_{|n|<=K} |fhat(n)|^2 e^{2 pi i n t}, real by symmetry
  double v = sigma_ - sigma_ * sigma_;
  for (std::int64_t n = 1; n <= truncation; ++n) {
    v -= 2.0 * std::norm(fourier_coeff(n)) * std::cos(kTwoPi * static_cast<double>(n) * t);
  }
  return v;
}

double SpectralSymbol::evaluate(std::span<const double> t) const {
  if (t.size() != factors_.size()) {
    throw InvalidSymbol("point dimension does not match symbol dimension");
  }
  double v = 1.0;
  for (std::size_t j = 0; j < factors_.size(); ++j) v *= factor_evaluate(factors_[j], t[j]);
  return v;
}

double SpectralSymbol::evaluate(double t) const {
  return evaluate(std::span<const double>(&t, 1));
}

bool SpectralSymbol::is_constant() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const SymbolFactor& f) {
    return std::holds_alternative<ConstantFactor>(f);
  });
}

bool SpectralSymbol::is_indicator() const { return riesz_constant_sq() <= 0.0; }

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;  // FNV-1a
  }
}

void hash_double(std::uint64_t& h, double v) { hash_bytes(h, &v, sizeof v); }
void hash_i64(std::uint64_t& h, std::int64_t v) { hash_bytes(h, &v, sizeof v); }

}  // namespace

std::uint64_t SpectralSymbol::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  hash_i64(h, dimension());
  for (const auto& f : factors_) {
    if (const auto* c = std::get_if<ConstantFactor>(&f)) {
      hash_i64(h, 1);
      hash_double(h, c->value);
    } else if (const auto* p = std::get_if<PiecewiseConstantFactor>(&f)) {
      hash_i64(h, 2);
      for (const auto& b : p->breakpoints) {
        hash_i64(h, b.num);
        hash_i64(h, b.den);
      }
      for (double x : p->heights) hash_double(h, x);
    } else {
      hash_i64(h, 3);
      for (const auto& c : std::get<TrigPolynomialFactor>(f).coeffs) {
        hash_double(h, c.real());
        hash_double(h, c.imag());
      }
    }
  }
  return h;
}

std::string SpectralSymbol::hash_hex() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

FourierTable::FourierTable(const SpectralSymbol& symbol, std::vector<std::int64_t> max_lag)
    : max_lag_(std::move(max_lag)) {
  if (static_cast<int>(max_lag_.size()) != symbol.dimension()) {
    throw InvalidSymbol("table lag dimension does not match symbol dimension");
  }
  per_factor_.resize(max_lag_.size());
  for (std::size_t j = 0; j < max_lag_.size(); ++j) {
    std::int64_t K = max_lag_[j];
    if (K < 0) throw InvalidSymbol("table lag bound must be nonnegative");
    per_factor_[j].resize(static_cast<std::size_t>(2 * K + 1));
    for (std::int64_t k = -K; k <= K; ++k) {
      auto v = factor_fourier_coeff(symbol.factors()[j], k);
      per_factor_[j][static_cast<std::size_t>(k + K)] = v;
      if (v.imag() != 0.0) all_real_ = false;
    }
  }
}

std::complex<double> FourierTable::value(std::span<const std::int64_t> k) const {
  std::complex<double> v{1.0, 0.0};
  for (std::size_t j = 0; j < per_factor_.size(); ++j) {
    v *= per_factor_[j][static_cast<std::size_t>(k[j] + max_lag_[j])];
  }
  return v;
}

std::complex<double> FourierTable::value(std::int64_t k) const {
  return value(std::span<const std::int64_t>(&k, 1));
}

}  // namespace latdpp
