#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latdpp/symbol.hpp"

namespace latdpp {

// Parsed run configuration.  The seed is mandatory so every run is
// reproducible; there is no wall-clock fallback.
struct RunConfig {
  std::optional<SpectralSymbol> symbol;
  std::string suite;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv", "json"};
  int threads = 0;
  nlohmann::ordered_json params;  // suite-specific block, may be empty
  nlohmann::ordered_json raw;     // full resolved document

  const SpectralSymbol& require_symbol() const;
};

nlohmann::ordered_json symbol_to_json(const SpectralSymbol& symbol);
SpectralSymbol symbol_from_json(const nlohmann::json& j);

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

// helpers for suite parameter blocks; throw ConfigInvalid naming the field
std::int64_t param_int(const nlohmann::ordered_json& params, const std::string& key,
                       std::int64_t fallback);
double param_double(const nlohmann::ordered_json& params, const std::string& key,
                    double fallback);
std::vector<std::int64_t> param_int_list(const nlohmann::ordered_json& params,
                                         const std::string& key,
                                         std::vector<std::int64_t> fallback);

}  // namespace latdpp
