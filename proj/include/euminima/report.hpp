#pragma once

// Rendering of bound reports, grid scans and verification runs.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "euminima/bounds.hpp"
#include "euminima/enumeration.hpp"
#include "euminima/fields.hpp"

namespace euminima {

using Json = nlohmann::ordered_json;

inline constexpr int kDecimalDigits = 12;

Json report_to_json(const BoundReport& report);
std::string render_report_text(const BoundReport& report);

struct ScanRow {
  std::string family;  // "odd" or "two-power"
  std::optional<std::uint64_t> p;
  unsigned r = 0;
  std::optional<std::uint64_t> e;
  std::optional<std::string> variant;
  std::uint64_t m = 0;  // conductor
  std::uint64_t n = 0;
  std::string disc;
  std::string bound_source;
  std::string bound_log10;
  std::string bound_decimal;
  bool minkowski = false;
  bool minkowski_asserted = false;
  std::optional<bool> omega_ok;
  bool omega_asserted = false;

  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

enum class ScanCheck { Minkowski, Omega };

struct ScanOptions {
  std::uint64_t p_max = 0;
  unsigned r_max = 1;
  unsigned two_power_max = 0;  // 0: no two-power rows
  bool include_trivial = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Throws std::invalid_argument if the grid is empty.
std::vector<ScanRow> run_scan(const ScanOptions& options);

ScanRow scan_row(const BoundReport& report);

std::string csv_header();
std::string render_csv(const std::vector<ScanRow>& rows);
Json scan_to_json(const std::vector<ScanRow>& rows);
std::vector<ScanRow> scan_from_json(const Json& json);

// Rows whose checked verdict is false although the underlying claim covers them.
std::vector<std::size_t> failed_rows(const std::vector<ScanRow>& rows, const std::set<ScanCheck>& checks);

struct VerifyOutcome {
  bool pass = false;
  std::string text;
};

struct DecompositionOptions {
  Rational theta_cutoff = 0;  // 0: 4 p^r
  std::uint64_t node_budget = 0;  // 0: default_node_budget()
  std::size_t covering_samples = 200;
  std::uint64_t seed = 0;
};

// Throws BudgetExceeded when an enumeration runs over budget.
VerifyOutcome verify_decomposition(const OddPPField& field, const DecompositionOptions& options);
VerifyOutcome verify_deep_hole(unsigned r);
VerifyOutcome verify_asymptotics(std::uint64_t n);

std::string render_profile(const ThetaProfile& profile);

}  // namespace euminima
