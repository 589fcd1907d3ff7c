#pragma once

#include <complex>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qsym::cli {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class LedgerRegression : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A JSON object with strict key checking.
class Config {
public:
  explicit Config(json j, std::string where = "config");

  /// Throws ConfigError naming the first key not in `keys`.
  void allow(std::initializer_list<const char*> keys) const;
  bool has(const char* key) const { return j_.contains(key); }
  Config sub(const char* key) const;

  double number(const char* key, double fallback) const;
  int integer(const char* key, int fallback) const;
  std::string text(const char* key, const std::string& fallback) const;
  std::vector<double> numbers(const char* key, const std::vector<double>& fallback) const;
  /// Each element is a number or a [re, im] pair.
  std::vector<std::complex<double>> complexes(const char* key) const;
  std::complex<double> complex(const char* key, std::complex<double> fallback) const;
  const json& raw() const { return j_; }

private:
  std::string path(const char* key) const { return where_ + "." + key; }
  json j_;
  std::string where_;
};

Config load_config(const std::string& file);

std::complex<double> parse_complex(const json& v, const std::string& where);
json to_json(std::complex<double> z);

/// RFC-4180 CSV with doubles at 17 significant digits.
class CsvWriter {
public:
  using Cell = std::variant<std::string, double, long long, bool>;
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<Cell>& cells);

private:
  std::ostream& os_;
};

std::string format_double(double v);

}  // namespace qsym::cli
