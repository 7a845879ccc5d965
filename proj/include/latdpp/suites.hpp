#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latdpp/config.hpp"
#include "latdpp/inequalities.hpp"
#include "latdpp/report.hpp"
#include "latdpp/structure.hpp"

namespace latdpp {

// Named experiment suites runnable from the command line.  Every suite is a
// pure function of (symbol, parameters, seed); reruns produce byte-identical
// CSV bodies.
const std::vector<std::string>& suite_names();

// Dispatches by config.suite; throws ConfigInvalid for unknown names or
// missing parameters.
ExperimentReport run_suite(const RunConfig& config);

// Frequency-maximum sweep: per window length N, the empirical violation
// frequency of {weyl_max >= 100 sqrt(deg N log N)} over samples_per_n
// samples, the median maximum, and the growth of the median against
// sqrt(N log N).  Window lengths below 8 are skipped.
ExperimentReport salem_littlewood_suite(const SpectralSymbol& symbol,
                                        const IntPolynomial& poly,
                                        std::span<const std::int64_t> lengths,
                                        std::size_t samples_per_n, std::uint64_t seed,
                                        int threads = 0);

// Per (gap length, window length): empirical probability that some run of
// ell absent sites occurs, against the exact run-length recursion for
// constant symbols and the expected-start-count scale otherwise.
ExperimentReport gap_presence_curve(const SpectralSymbol& symbol,
                                    std::span<const std::int64_t> gap_lengths,
                                    std::span<const std::int64_t> window_lengths,
                                    std::size_t samples, std::uint64_t seed,
                                    int threads = 0);

}  // namespace latdpp
