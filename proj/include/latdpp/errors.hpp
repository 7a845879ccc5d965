#pragma once

#include <stdexcept>
#include <string>

namespace latdpp {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define LATDPP_DEFINE_ERROR(Name) \
  struct Name : Error {           \
    using Error::Error;           \
  }

LATDPP_DEFINE_ERROR(InvalidSymbol);
LATDPP_DEFINE_ERROR(InvalidWindow);
LATDPP_DEFINE_ERROR(InvalidPolynomial);
LATDPP_DEFINE_ERROR(InvalidWeights);
LATDPP_DEFINE_ERROR(SpectrumOutOfRange);
LATDPP_DEFINE_ERROR(WindowTooLarge);
LATDPP_DEFINE_ERROR(DuplicatePoints);
LATDPP_DEFINE_ERROR(WindowTooLargeForExactDistribution);
LATDPP_DEFINE_ERROR(SNotSubsetOfW);
LATDPP_DEFINE_ERROR(DegenerateProjection);
LATDPP_DEFINE_ERROR(LagExceedsWindow);
LATDPP_DEFINE_ERROR(NegativeQuadraticForm);
LATDPP_DEFINE_ERROR(OverflowGuard);
LATDPP_DEFINE_ERROR(IndicatorSymbol);
LATDPP_DEFINE_ERROR(DegreeTooLarge);
LATDPP_DEFINE_ERROR(MExceedsW);
LATDPP_DEFINE_ERROR(EmptyConfiguration);
LATDPP_DEFINE_ERROR(ConfigInvalid);
LATDPP_DEFINE_ERROR(NotASweep);

#undef LATDPP_DEFINE_ERROR

}  // namespace latdpp
