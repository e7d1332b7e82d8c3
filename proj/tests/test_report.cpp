#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "euminima/report.hpp"
#include "test_support.hpp"

using namespace euminima;
using testing::q;

namespace {

std::vector<std::string> lines(const std::string& text, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t pos; (pos = text.find(sep, start)) != std::string::npos; start = pos + sep.size()) {
    out.push_back(text.substr(start, pos - start));
  }
  if (start < text.size()) out.push_back(text.substr(start));
  return out;
}

ScanOptions small_grid() {
  ScanOptions o;
  o.p_max = 13;
  o.r_max = 2;
  o.two_power_max = 4;
  o.threads = 3;
  return o;
}

}  // namespace

TEST_CASE("scan rows, order and CSV") {
  const auto rows = run_scan(small_grid());
  // p in {3,5,7,11,13}: divisors of p-1 are 2,3,4,4,6; r = 1 drops e = p-1.
  const std::size_t odd_rows = (2 + 3 + 4 + 4 + 6) * 2 - 5;
  REQUIRE(rows.size() == odd_rows + 2 * 3);
  CHECK(rows.front().family == "odd");
  CHECK(*rows.front().p == 3);
  CHECK(rows.back().family == "two-power");
  CHECK(*rows.back().variant == "imag");
  for (std::size_t i = 1; i < odd_rows; ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    CHECK(std::tie(*a.p, a.r, *a.e) < std::tie(*b.p, b.r, *b.e));
  }
  const std::string csv = render_csv(rows);
  const auto ls = lines(csv, "\r\n");
  REQUIRE(ls.size() == rows.size() + 1);
  CHECK(ls[0] == csv_header());
  CHECK(ls[0] == "family,p,r,e,variant,m,n,disc,bound_source,bound_log10,minkowski,omega_ok");
  CHECK(ls[1].rfind("odd,3,1,1,,3,2,3,Eq21,", 0) == 0);
  CHECK(ls.back().rfind("two-power,,4,,imag,16,4,", 0) == 0);
  CHECK(csv.find('\n') == csv.find("\r\n") + 1);

  // Same rows regardless of thread count.
  ScanOptions one = small_grid();
  one.threads = 1;
  CHECK(run_scan(one) == rows);
}

TEST_CASE("scan JSON round trip") {
  const auto rows = run_scan(small_grid());
  const Json j = scan_to_json(rows);
  const std::string text = j.dump(2);
  CHECK(Json::parse(text).dump(2) == text);
  CHECK(scan_from_json(Json::parse(text)) == rows);
  CHECK(j.at("rows").at(0).at("omega_ok").is_boolean());
  CHECK(j.at("rows").back().at("omega_ok").is_null());
  CHECK(j.at("rows").back().at("p").is_null());
}

TEST_CASE("failed_rows and empty grids") {
  auto rows = run_scan(small_grid());
  CHECK(failed_rows(rows, {ScanCheck::Minkowski, ScanCheck::Omega}).empty());
  rows[0].minkowski = false;  // r = 1: not asserted
  CHECK(failed_rows(rows, {ScanCheck::Minkowski}).empty());
  std::size_t asserted = 0;
  while (!rows[asserted].minkowski_asserted) ++asserted;
  rows[asserted].minkowski = false;
  CHECK(failed_rows(rows, {ScanCheck::Minkowski}) == std::vector<std::size_t>{asserted});
  CHECK(failed_rows(rows, {ScanCheck::Omega}).empty());
  CHECK(failed_rows(rows, {}).empty());

  ScanOptions empty;
  empty.p_max = 2;
  CHECK_THROWS_AS(run_scan(empty), std::invalid_argument);
  ScanOptions trivial;
  trivial.p_max = 3;
  CHECK(run_scan(trivial).size() == 1);
  trivial.include_trivial = true;
  const auto t = run_scan(trivial);
  REQUIRE(t.size() == 2);
  CHECK(t[1].n == 1);
}

TEST_CASE("bound report JSON and text") {
  const Json j = report_to_json(odd_bound(OddPPField::make(3, 2, 1)));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"field", "n", "disc", "disc_log10", "tau_bound", "bounds", "best", "verdicts",
                                         "verdict_in_hypothesis"});
  CHECK(j.at("field") == "odd(p=3,r=2,e=1)");
  CHECK(j.at("disc") == "3^9");
  CHECK(j.at("best") == "Eq21");
  CHECK(j.at("bounds").at(0).at("value_exact") == "1");
  CHECK(j.at("bounds").at(0).at("value_decimal") == "1");
  CHECK(j.at("tau_bound").at("exact") == "2 * 3^(-1/2)");

  const Json imag = report_to_json(two_power_bound(TwoPowerField::make(4, TwoPowerVariant::Imag)));
  CHECK(imag.at("bounds").at(1).at("value_exact").is_null());
  CHECK(imag.at("best") == "PropP4b");

  const std::string text = render_report_text(cyclotomic_bounds(60, false));
  CHECK(text.find("* Thm52i") != std::string::npos);
  CHECK(text.find("[hypothesis not met]") != std::string::npos);
}

TEST_CASE("verify routines") {
  DecompositionOptions o;
  o.covering_samples = 50;
  const VerifyOutcome a = verify_decomposition(OddPPField::make(5, 1, 2), o);
  CHECK(a.pass);
  CHECK(a.text.find("profiles identical") != std::string::npos);
  CHECK(verify_decomposition(OddPPField::make(3, 2, 1), o).pass);
  o.theta_cutoff = q(40);
  o.node_budget = 50;
  CHECK_THROWS_AS(verify_decomposition(OddPPField::make(7, 2, 1), o), BudgetExceeded);

  const VerifyOutcome h = verify_deep_hole(5);
  CHECK(h.pass);
  CHECK(h.text.find("dist2(half-sum) = 30") != std::string::npos);
  CHECK_THROWS_AS(verify_deep_hole(2), std::invalid_argument);

  const VerifyOutcome s = verify_asymptotics(1000);
  CHECK(s.text.find("eps identity") != std::string::npos);
  CHECK_THROWS_AS(verify_asymptotics(1), std::invalid_argument);

  const std::string prof = render_profile(count_by_norm(make_A_dual_scaled(2), q(2)));
  CHECK(prof.find("2  6") != std::string::npos);
}
