#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsym {

/// One checked claim. verdict is confirmed, sign-flip, mismatch or undetermined.
struct LedgerEntry {
  std::string id;
  std::string expected;
  std::string measured;
  std::optional<double> residual;
  std::string verdict;
};

struct VerifyOptions {
  double tolerance = 1e-10;
  int order = 20;
};

/// Runs every verification suite; entries come out in a fixed order.
std::vector<LedgerEntry> run_verification(const VerifyOptions& opt = {});

/// Claims known not to hold as printed, with the verdict they are expected to get.
const std::map<std::string, std::string>& documented_discrepancies();

struct LedgerAssessment {
  std::vector<std::string> regressions;  // ids whose verdict left the baseline
  std::vector<std::string> improvements;  // documented discrepancies that now confirm
  bool ok() const { return regressions.empty(); }
};

/// Compares verdicts with a baseline (id -> verdict). Ids missing from the
/// baseline are expected to confirm.
LedgerAssessment assess_ledger(const std::vector<LedgerEntry>& entries,
                               const std::map<std::string, std::string>& baseline = documented_discrepancies());

}  // namespace qsym
