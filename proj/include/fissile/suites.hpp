#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace fissile {

// Batch verification shared by the command-line driver and the acceptance
// gate. Every suite is a list of cases; each case runs many individual
// checks and reports the first failure.

enum class Verdict { pass, fail, skipped_guard };

std::string verdict_name(Verdict v);

struct SuiteBounds {
  int max_a = 3;
  int max_i = 3;
  int max_e = 3;
  int bound = 4;          // dimension bound for the simplicial suites
  std::uint64_t seed = 1;
};

struct CaseReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  Verdict verdict = Verdict::pass;
  double seconds = 0;
  std::vector<std::string> artifacts;
  long checks = 0;
  std::string detail;
  nlohmann::json result;  // command-specific payload, null when unused
};

/// {suite, params, verdict, timing: {seconds}, artifacts, checks, detail[, result]}.
nlohmann::json report_to_json(const CaseReport& r);

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& suite_names();
/// Throws UnknownSuite.
std::vector<CaseReport> run_suite(const std::string& name, const SuiteBounds& bounds);

/// Builds every p_J^F for |I| = i, |E| = e and writes them under `out`.
CaseReport run_construct_p(int i, int e, const std::filesystem::path& out);
/// Builds the p_J^F and q, verifies almost fissility and the boundary
/// condition, and writes everything under `out` (a scratch directory when
/// empty) before re-checking from the files.
CaseReport run_construct_q(int i, int e, const std::optional<std::filesystem::path>& out);
/// Re-verifies a directory written by either construction.
CaseReport run_check(const std::filesystem::path& in);

}  // namespace fissile
