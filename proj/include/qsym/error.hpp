#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qsym {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Thrown when a q-number or spectrum value needed by a construction vanishes
// (q sits on a root of unity of small order).
class DegenerateDeformation : public Error {
public:
  DegenerateDeformation(const std::string& what, int n) : Error(what), index_(n) {}
  int index() const noexcept { return index_; }

private:
  int index_;
};

// Jackson sums and similar geometric series that need |q| < 1.
class NonConvergence : public Error {
public:
  using Error::Error;
};

// A mode k of a potential transform or recursion whose denominator vanishes.
struct SingularModeInfo {
  int k;
  std::string reason;
};

class SingularMode : public Error {
public:
  SingularMode(const std::string& what, std::vector<SingularModeInfo> modes)
      : Error(what), modes_(std::move(modes)) {}
  const std::vector<SingularModeInfo>& modes() const noexcept { return modes_; }

private:
  std::vector<SingularModeInfo> modes_;
};

}  // namespace qsym
