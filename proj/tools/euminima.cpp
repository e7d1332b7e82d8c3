// euminima: bounds on Euclidean minima of abelian fields of prime-power conductor.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "euminima/bounds.hpp"
#include "euminima/enumeration.hpp"
#include "euminima/report.hpp"

using namespace euminima;

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFailed = 1;
constexpr int kUsage = 2;

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kUsage;
  }
  f << text;
  return kOk;
}

std::string render(const BoundReport& rep, const std::string& format) {
  if (format == "json") return report_to_json(rep).dump(2) + "\n";
  return render_report_text(rep);
}

std::set<ScanCheck> parse_checks(const std::string& spec) {
  std::set<ScanCheck> checks;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "minkowski") {
      checks.insert(ScanCheck::Minkowski);
    } else if (item == "omega") {
      checks.insert(ScanCheck::Omega);
    } else {
      throw std::invalid_argument("unknown check '" + item + "' (expected minkowski, omega)");
    }
  }
  return checks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact upper bounds on Euclidean minima of abelian number fields"};
  app.require_subcommand(1);

  std::string format = "text";
  std::uint64_t p = 0, e = 1, m = 0;
  unsigned r = 0;
  std::string variant = "imag";
  bool max_real = false;

  auto* bound = app.add_subcommand("bound", "bound report for one field");
  bound->require_subcommand(1);
  auto* b_odd = bound->add_subcommand("odd", "subfield of Q(zeta_{p^r}), p odd");
  b_odd->add_option("--p", p, "odd prime")->required();
  b_odd->add_option("--r", r, "exponent, r >= 1")->required();
  b_odd->add_option("--e", e, "index [Q(zeta):K], divides p-1")->default_val(1);
  auto* b_two = bound->add_subcommand("two-power", "field of conductor 2^r");
  b_two->add_option("--r", r, "exponent, r >= 3")->required();
  b_two->add_option("--variant", variant, "cyclo, real or imag")->default_val("imag");
  auto* b_cyc = bound->add_subcommand("cyclotomic", "Q(zeta_m) or its maximal real subfield");
  b_cyc->add_option("--m", m, "conductor")->required();
  b_cyc->add_flag("--max-real", max_real, "maximal real subfield");
  for (auto* sc : {b_odd, b_two, b_cyc}) {
    sc->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  }

  std::uint64_t p_max = 0;
  unsigned r_max = 1, two_power_max = 0, threads = 0;
  std::string checks_spec, out_path, scan_format = "csv";
  bool include_trivial = false;
  auto* scan = app.add_subcommand("scan", "bound table over a grid of fields");
  scan->add_option("--p-max", p_max, "largest odd prime")->required();
  scan->add_option("--r-max", r_max, "largest exponent")->default_val(1);
  scan->add_option("--two-power-max", two_power_max, "also include conductors 2^3 .. 2^R2");
  scan->add_option("--check", checks_spec, "comma list of minkowski, omega");
  scan->add_option("--format", scan_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--out", out_path, "output file (default stdout)");
  scan->add_flag("--include-trivial", include_trivial, "keep degree-1 rows");
  scan->add_option("--threads", threads, "worker threads (default: all cores)");

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  std::string cutoff_text;
  std::uint64_t seed = 0, n = 1'000'000;
  std::size_t samples = 200;
  auto* v_dec = verify->add_subcommand("decomposition", "period basis vs orthogonal-sum model");
  v_dec->add_option("--p", p, "odd prime")->required();
  v_dec->add_option("--r", r, "exponent")->required();
  v_dec->add_option("--e", e, "index")->default_val(1);
  v_dec->add_option("--theta-cutoff", cutoff_text, "norm cutoff (default 4 p^r)");
  v_dec->add_option("--samples", samples, "covering samples for the tau soundness check")->default_val(200);
  v_dec->add_option("--seed", seed, "sampling seed")->default_val(0);
  auto* v_hole = verify->add_subcommand("deep-hole", "half-sum point of the conductor-2^r imaginary model");
  v_hole->add_option("--r", r, "exponent, r >= 3")->required();
  auto* v_asym = verify->add_subcommand("asymptotics", "epsilon(n) and envelope trend checks");
  v_asym->add_option("--n", n, "largest n")->default_val(1'000'000);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (b_odd->parsed()) {
      std::cout << render(odd_bound(OddPPField::make(p, r, e)), format);
      return kOk;
    }
    if (b_two->parsed()) {
      std::cout << render(two_power_bound(TwoPowerField::make(r, parse_two_power_variant(variant))), format);
      return kOk;
    }
    if (b_cyc->parsed()) {
      if (m % 4 == 2) {
        std::cerr << "error: m = " << m << " is 2 mod 4; Q(zeta_m) = Q(zeta_" << m / 2 << "), pass --m " << m / 2
                  << "\n";
        return kUsage;
      }
      std::cout << render(cyclotomic_bounds(m, max_real), format);
      return kOk;
    }
    if (scan->parsed()) {
      const auto checks = parse_checks(checks_spec);
      ScanOptions opts;
      opts.p_max = p_max;
      opts.r_max = r_max;
      opts.two_power_max = two_power_max;
      opts.include_trivial = include_trivial;
      opts.threads = threads;
      const auto rows = run_scan(opts);
      const std::string text = scan_format == "json" ? scan_to_json(rows).dump(2) + "\n" : render_csv(rows);
      if (const int rc = emit(text, out_path); rc != kOk) return rc;
      const auto bad = failed_rows(rows, checks);
      for (std::size_t i : bad) {
        const auto& row = rows[i];
        std::cerr << "check failed: " << row.family << " p=" << (row.p ? std::to_string(*row.p) : "-")
                  << " r=" << row.r << " e=" << (row.e ? std::to_string(*row.e) : "-") << "\n";
      }
      if (!checks.empty()) std::cerr << rows.size() << " rows, " << bad.size() << " failed checks\n";
      return bad.empty() ? kOk : kVerdictFailed;
    }
    VerifyOutcome outcome;
    if (v_dec->parsed()) {
      DecompositionOptions o;
      if (!cutoff_text.empty()) o.theta_cutoff = parse_rational(cutoff_text);
      o.covering_samples = samples;
      o.seed = seed;
      outcome = verify_decomposition(OddPPField::make(p, r, e), o);
    } else if (v_hole->parsed()) {
      outcome = verify_deep_hole(r);
    } else {
      outcome = verify_asymptotics(n);
    }
    std::cout << outcome.text;
    return outcome.pass ? kOk : kVerdictFailed;
  } catch (const BudgetExceeded& err) {
    std::cerr << "error: " << err.what() << "; lower the cutoff or raise EUMINIMA_NODE_BUDGET\n";
    return kUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
}
