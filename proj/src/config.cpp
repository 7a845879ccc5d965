#include "latdpp/config.hpp"

#include <fstream>
#include <sstream>

#include "latdpp/errors.hpp"

namespace latdpp {

const SpectralSymbol& RunConfig::require_symbol() const {
  if (!symbol) throw ConfigInvalid("symbol: missing");
  return *symbol;
}

nlohmann::ordered_json symbol_to_json(const SpectralSymbol& symbol) {
  nlohmann::ordered_json j;
  j["dimension"] = symbol.dimension();
  auto factors = nlohmann::ordered_json::array();
  for (const auto& f : symbol.factors()) {
    nlohmann::ordered_json fj;
    if (const auto* c = std::get_if<ConstantFactor>(&f)) {
      fj["kind"] = "constant";
      fj["value"] = c->value;
    } else if (const auto* p = std::get_if<PiecewiseConstantFactor>(&f)) {
      fj["kind"] = "piecewise";
      auto bp = nlohmann::ordered_json::array();
      for (const auto& b : p->breakpoints) bp.push_back(b.str());
      fj["breakpoints"] = std::move(bp);
      fj["heights"] = p->heights;
    } else {
      fj["kind"] = "trig";
      auto cs = nlohmann::ordered_json::array();
      for (const auto& c2 : std::get<TrigPolynomialFactor>(f).coeffs) {
        cs.push_back(nlohmann::ordered_json::array({c2.real(), c2.imag()}));
      }
      fj["coefficients"] = std::move(cs);
    }
    factors.push_back(std::move(fj));
  }
  j["factors"] = std::move(factors);
  return j;
}

SpectralSymbol symbol_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigInvalid("symbol: must be an object");
  if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty()) {
    throw ConfigInvalid("symbol.factors: missing or empty");
  }
  std::vector<SymbolFactor> factors;
  std::size_t idx = 0;
  for (const auto& fj : j["factors"]) {
    std::string where = "symbol.factors[" + std::to_string(idx++) + "]";
    if (!fj.is_object() || !fj.contains("kind")) {
      throw ConfigInvalid(where + ".kind: missing");
    }
    std::string kind = fj["kind"].get<std::string>();
    try {
      if (kind == "constant") {
        if (!fj.contains("value")) throw ConfigInvalid(where + ".value: missing");
        factors.push_back(ConstantFactor{fj["value"].get<double>()});
      } else if (kind == "piecewise") {
        if (!fj.contains("breakpoints") || !fj.contains("heights")) {
          throw ConfigInvalid(where + ": needs breakpoints and heights");
        }
        PiecewiseConstantFactor p;
        for (const auto& b : fj["breakpoints"]) {
          p.breakpoints.push_back(Rational::parse(b.get<std::string>()));
        }
        p.heights = fj["heights"].get<std::vector<double>>();
        factors.push_back(std::move(p));
      } else if (kind == "trig") {
        if (!fj.contains("coefficients")) {
          throw ConfigInvalid(where + ".coefficients: missing");
        }
        TrigPolynomialFactor t;
        for (const auto& c : fj["coefficients"]) {
          if (!c.is_array() || c.size() != 2) {
            throw ConfigInvalid(where + ".coefficients: entries are [re, im] pairs");
          }
          t.coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        factors.push_back(std::move(t));
      } else {
        throw ConfigInvalid(where + ".kind: unknown kind '" + kind + "'");
      }
    } catch (const InvalidSymbol& e) {
      throw ConfigInvalid(where + ": " + e.what());
    }
  }
  if (j.contains("dimension") &&
      j["dimension"].get<int>() != static_cast<int>(factors.size())) {
    throw ConfigInvalid("symbol.dimension: does not match the factor count");
  }
  try {
    return SpectralSymbol(std::move(factors));
  } catch (const InvalidSymbol& e) {
    throw ConfigInvalid(std::string("symbol: ") + e.what());
  }
}

RunConfig parse_run_config(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigInvalid(std::string("document: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigInvalid("document: top level must be an object");

  RunConfig cfg;
  cfg.raw = j;
  if (!j.contains("suite") || !j["suite"].is_string()) {
    throw ConfigInvalid("suite: missing or not a string");
  }
  cfg.suite = j["suite"].get<std::string>();

  if (!j.contains("seed")) throw ConfigInvalid("seed: missing (no wall-clock default)");
  if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
    throw ConfigInvalid("seed: must be a decimal 64-bit unsigned integer");
  }
  if (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() < 0) {
    throw ConfigInvalid("seed: must be nonnegative");
  }
  cfg.seed = j["seed"].get<std::uint64_t>();

  if (j.contains("symbol")) cfg.symbol = symbol_from_json(j["symbol"]);
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("formats")) {
    cfg.formats = j["formats"].get<std::vector<std::string>>();
    for (const auto& f : cfg.formats) {
      if (f != "csv" && f != "json") {
        throw ConfigInvalid("formats: unknown format '" + f + "'");
      }
    }
  }
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigInvalid("params: must be an object");
    cfg.params = j["params"];
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::int64_t param_int(const nlohmann::ordered_json& params, const std::string& key,
                       std::int64_t fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_number_integer() && !params[key].is_number_unsigned()) {
    throw ConfigInvalid("params." + key + ": must be an integer");
  }
  return params[key].get<std::int64_t>();
}

double param_double(const nlohmann::ordered_json& params, const std::string& key,
                    double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_number()) throw ConfigInvalid("params." + key + ": must be a number");
  return params[key].get<double>();
}

std::vector<std::int64_t> param_int_list(const nlohmann::ordered_json& params,
                                         const std::string& key,
                                         std::vector<std::int64_t> fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_array()) throw ConfigInvalid("params." + key + ": must be an array");
  try {
    return params[key].get<std::vector<std::int64_t>>();
  } catch (const std::exception&) {
    throw ConfigInvalid("params." + key + ": must be an array of integers");
  }
}

}  // namespace latdpp
