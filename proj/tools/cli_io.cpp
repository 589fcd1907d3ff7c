#include "cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace qsym::cli {

Config::Config(json j, std::string where) : j_(std::move(j)), where_(std::move(where)) {
  if (!j_.is_object()) throw ConfigError(where_ + " must be a JSON object");
}

void Config::allow(std::initializer_list<const char*> keys) const {
  for (const auto& [k, v] : j_.items()) {
    bool known = false;
    for (const char* a : keys) known = known || k == a;
    if (!known) throw ConfigError("unknown key " + where_ + "." + k);
  }
}

Config Config::sub(const char* key) const {
  return Config(j_.contains(key) ? j_.at(key) : json::object(), path(key));
}

double Config::number(const char* key, double fallback) const {
  if (!j_.contains(key)) return fallback;
  const auto& v = j_.at(key);
  if (!v.is_number()) throw ConfigError(path(key) + " must be a number");
  return v.get<double>();
}

int Config::integer(const char* key, int fallback) const {
  if (!j_.contains(key)) return fallback;
  const auto& v = j_.at(key);
  if (!v.is_number_integer()) throw ConfigError(path(key) + " must be an integer");
  return v.get<int>();
}

std::string Config::text(const char* key, const std::string& fallback) const {
  if (!j_.contains(key)) return fallback;
  const auto& v = j_.at(key);
  if (!v.is_string()) throw ConfigError(path(key) + " must be a string");
  return v.get<std::string>();
}

std::vector<double> Config::numbers(const char* key, const std::vector<double>& fallback) const {
  if (!j_.contains(key)) return fallback;
  const auto& v = j_.at(key);
  if (!v.is_array()) throw ConfigError(path(key) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(path(key) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::complex<double>> Config::complexes(const char* key) const {
  std::vector<std::complex<double>> out;
  if (!j_.contains(key)) return out;
  const auto& v = j_.at(key);
  if (!v.is_array()) throw ConfigError(path(key) + " must be an array");
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_complex(v[i], path(key) + "[" + std::to_string(i) + "]"));
  return out;
}

std::complex<double> Config::complex(const char* key, std::complex<double> fallback) const {
  return j_.contains(key) ? parse_complex(j_.at(key), path(key)) : fallback;
}

Config load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file);
  try {
    return Config(json::parse(in), file);
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON in " + file + ": " + e.what());
  }
}

std::complex<double> parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(where + " must be a number or a [re, im] pair");
}

json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void CsvWriter::row(const std::vector<Cell>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>)
            os_ << quote(v);
          else if constexpr (std::is_same_v<T, double>)
            os_ << format_double(v);
          else if constexpr (std::is_same_v<T, bool>)
            os_ << (v ? "true" : "false");
          else
            os_ << v;
        },
        cells[i]);
  }
  os_ << "\r\n";
}

}  // namespace qsym::cli
