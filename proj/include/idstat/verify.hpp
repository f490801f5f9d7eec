#pragma once

// Replays every identity of the symmetry / observables / statmech layers and
// records one ledger line per check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idstat/symmetry.hpp"
#include "json.hpp"

namespace idstat {

enum class CheckStatus { Pass, Fail, Noted };
std::string to_string(CheckStatus s);

struct Check {
  std::string id;
  std::string location;
  CheckStatus status = CheckStatus::Fail;
  std::string lhs;
  std::string rhs;
  std::optional<double> tolerance;
  std::string detail;
};

struct VerifyOptions {
  N3CoefficientTable table = default_n3_table();
  std::uint64_t seed = 20240601;
};

/// The table with the coefficient of psi(1,2,3) in s1 changed from 2 to 3.
N3CoefficientTable tampered_table();

std::vector<Check> run_verify_paper(const VerifyOptions& options = {});

struct LedgerSummary {
  int passed = 0;
  int failed = 0;
  int noted = 0;
};
LedgerSummary summarize(const std::vector<Check>& checks);

nlohmann::json to_json(const Check& c);
nlohmann::json ledger_to_json(const std::vector<Check>& checks);

}  // namespace idstat
