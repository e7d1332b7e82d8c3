#include "euminima/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace euminima {
namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string disc_log10(const FactoredInt& d) {
  return d.is_one() ? "0" : PowerProduct(d).to_log10_string(kDecimalDigits);
}

Json bound_json(const BoundEntry& b) {
  Json j;
  j["source"] = to_string(b.source);
  j["value_exact"] = b.value ? Json(b.value->to_string()) : Json(nullptr);
  j["value_log10"] = b.log.render_log10(kDecimalDigits);
  j["value_decimal"] = b.log.render_decimal(kDecimalDigits);
  j["applicable"] = b.applicable;
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

std::vector<FieldDescriptor> grid(const ScanOptions& o) {
  std::vector<FieldDescriptor> out;
  for (std::uint64_t p = 3; p <= o.p_max; p += 2) {
    if (!is_prime(p)) continue;
    for (unsigned r = 1; r <= o.r_max; ++r) {
      for (std::uint64_t e = 1; e <= p - 1; ++e) {
        if ((p - 1) % e != 0) continue;
        const OddPPField f = OddPPField::make(p, r, e, true);
        if (f.degree() < 2 && !o.include_trivial) continue;
        out.emplace_back(f);
      }
    }
  }
  for (unsigned r = 3; r <= o.two_power_max; ++r) {
    for (auto v : {TwoPowerVariant::Cyclo, TwoPowerVariant::Real, TwoPowerVariant::Imag}) {
      out.emplace_back(TwoPowerField::make(r, v));
    }
  }
  return out;
}

Json opt(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json report_to_json(const BoundReport& rep) {
  Json j;
  j["field"] = describe(rep.field);
  j["n"] = rep.n;
  j["disc"] = rep.disc.to_string();
  j["disc_log10"] = disc_log10(rep.disc);
  if (rep.tau_bound) {
    j["tau_bound"] = {{"exact", rep.tau_bound->to_string()}, {"decimal", rep.tau_bound->to_decimal(kDecimalDigits)}};
  }
  Json bounds = Json::array();
  for (const auto& b : rep.bounds) bounds.push_back(bound_json(b));
  j["bounds"] = bounds;
  j["best"] = rep.best_entry() ? Json(to_string(rep.best_entry()->source)) : Json(nullptr);
  Json verdicts = Json::object();
  for (const auto& v : rep.verdicts) verdicts[v.name] = v.holds;
  j["verdicts"] = verdicts;
  Json asserted = Json::object();
  for (const auto& v : rep.verdicts) asserted[v.name] = v.in_hypothesis;
  j["verdict_in_hypothesis"] = asserted;
  return j;
}

std::string render_report_text(const BoundReport& rep) {
  std::ostringstream os;
  os << "field:    " << describe(rep.field) << "\n";
  os << "degree:   " << rep.n << "\n";
  os << "disc:     " << rep.disc.to_string() << "  (log10 " << disc_log10(rep.disc) << ")\n";
  if (rep.tau_bound) {
    os << "tau_bound: " << rep.tau_bound->to_string() << " ~ " << rep.tau_bound->to_decimal(kDecimalDigits) << "\n";
  }
  for (std::size_t i = 0; i < rep.bounds.size(); ++i) {
    const auto& b = rep.bounds[i];
    os << (rep.best && *rep.best == i ? "* " : "  ") << to_string(b.source) << ": ";
    if (b.value) os << b.value->to_string() << " ~ ";
    os << b.log.render_decimal(kDecimalDigits) << "  (log10 " << b.log.render_log10(kDecimalDigits) << ")";
    if (!b.applicable) os << "  [hypothesis not met]";
    if (!b.note.empty()) os << "  " << b.note;
    os << "\n";
  }
  if (!rep.best) os << "no applicable bound\n";
  for (const auto& v : rep.verdicts) {
    os << v.name << ": " << yes_no(v.holds) << (v.in_hypothesis ? "" : "  (outside the claim's hypothesis)") << "\n";
  }
  return os.str();
}

ScanRow scan_row(const BoundReport& rep) {
  ScanRow row;
  if (const auto* f = std::get_if<OddPPField>(&rep.field)) {
    row.family = "odd";
    row.p = f->p;
    row.r = f->r;
    row.e = f->e;
    row.m = f->conductor();
  } else if (const auto* t = std::get_if<TwoPowerField>(&rep.field)) {
    row.family = "two-power";
    row.r = t->r;
    row.variant = to_string(t->variant);
    row.m = std::uint64_t{1} << t->r;
  } else {
    throw std::invalid_argument("scan_row: cyclotomic fields are not part of the scan grid");
  }
  row.n = rep.n;
  row.disc = rep.disc.to_string();
  if (const auto* b = rep.best_entry()) {
    row.bound_source = to_string(b->source);
    row.bound_log10 = b->log.render_log10(kDecimalDigits);
    row.bound_decimal = b->log.render_decimal(kDecimalDigits);
  }
  if (const auto* v = rep.verdict("minkowski")) {
    row.minkowski = v->holds;
    row.minkowski_asserted = v->in_hypothesis;
  }
  if (const auto* v = rep.verdict("omega_le_3^(-2/3)")) {
    row.omega_ok = v->holds;
    row.omega_asserted = v->in_hypothesis;
  }
  return row;
}

std::vector<ScanRow> run_scan(const ScanOptions& options) {
  const auto fields = grid(options);
  if (fields.empty()) throw std::invalid_argument("scan: the requested grid is empty");
  std::vector<ScanRow> rows(fields.size());
  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, fields.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < fields.size(); i = next++) {
      try {
        const auto& f = fields[i];
        rows[i] = scan_row(std::holds_alternative<OddPPField>(f) ? odd_bound(std::get<OddPPField>(f))
                                                                 : two_power_bound(std::get<TwoPowerField>(f)));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

std::string csv_header() { return "family,p,r,e,variant,m,n,disc,bound_source,bound_log10,minkowski,omega_ok"; }

std::string render_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << csv_header() << "\r\n";
  for (const auto& r : rows) {
    os << csv_field(r.family) << ',' << (r.p ? std::to_string(*r.p) : "") << ',' << r.r << ','
       << (r.e ? std::to_string(*r.e) : "") << ',' << csv_field(r.variant.value_or("")) << ',' << r.m << ',' << r.n
       << ',' << csv_field(r.disc) << ',' << csv_field(r.bound_source) << ',' << csv_field(r.bound_log10) << ','
       << yes_no(r.minkowski) << ',' << (r.omega_ok ? yes_no(*r.omega_ok) : "") << "\r\n";
  }
  return os.str();
}

Json scan_to_json(const std::vector<ScanRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["family"] = r.family;
    j["p"] = opt(r.p);
    j["r"] = r.r;
    j["e"] = opt(r.e);
    j["variant"] = r.variant ? Json(*r.variant) : Json(nullptr);
    j["m"] = r.m;
    j["n"] = r.n;
    j["disc"] = r.disc;
    j["bound_source"] = r.bound_source;
    j["bound_log10"] = r.bound_log10;
    j["bound_decimal"] = r.bound_decimal;
    j["minkowski"] = r.minkowski;
    j["minkowski_asserted"] = r.minkowski_asserted;
    j["omega_ok"] = r.omega_ok ? Json(*r.omega_ok) : Json(nullptr);
    j["omega_asserted"] = r.omega_asserted;
    arr.push_back(std::move(j));
  }
  return Json{{"rows", arr}};
}

std::vector<ScanRow> scan_from_json(const Json& json) {
  std::vector<ScanRow> rows;
  for (const auto& j : json.at("rows")) {
    ScanRow r;
    r.family = j.at("family").get<std::string>();
    if (!j.at("p").is_null()) r.p = j.at("p").get<std::uint64_t>();
    r.r = j.at("r").get<unsigned>();
    if (!j.at("e").is_null()) r.e = j.at("e").get<std::uint64_t>();
    if (!j.at("variant").is_null()) r.variant = j.at("variant").get<std::string>();
    r.m = j.at("m").get<std::uint64_t>();
    r.n = j.at("n").get<std::uint64_t>();
    r.disc = j.at("disc").get<std::string>();
    r.bound_source = j.at("bound_source").get<std::string>();
    r.bound_log10 = j.at("bound_log10").get<std::string>();
    r.bound_decimal = j.at("bound_decimal").get<std::string>();
    r.minkowski = j.at("minkowski").get<bool>();
    r.minkowski_asserted = j.at("minkowski_asserted").get<bool>();
    if (!j.at("omega_ok").is_null()) r.omega_ok = j.at("omega_ok").get<bool>();
    r.omega_asserted = j.at("omega_asserted").get<bool>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::size_t> failed_rows(const std::vector<ScanRow>& rows, const std::set<ScanCheck>& checks) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const bool mink_bad = checks.count(ScanCheck::Minkowski) && r.minkowski_asserted && !r.minkowski;
    const bool omega_bad = checks.count(ScanCheck::Omega) && r.omega_asserted && r.omega_ok && !*r.omega_ok;
    if (mink_bad || omega_bad) out.push_back(i);
  }
  return out;
}

std::string render_profile(const ThetaProfile& profile) {
  std::ostringstream os;
  os << "  norm  count   (cutoff " << to_string(profile.cutoff) << ", total " << profile.total() << ")\n";
  for (const auto& [norm, count] : profile.counts) os << "  " << to_string(norm) << "  " << count << "\n";
  return os.str();
}

VerifyOutcome verify_decomposition(const OddPPField& f, const DecompositionOptions& o) {
  std::ostringstream os;
  const std::uint64_t budget = o.node_budget != 0 ? o.node_budget : default_node_budget();
  const Rational cutoff = o.theta_cutoff != 0 ? o.theta_cutoff : Rational(BigInt(static_cast<unsigned long>(4 * f.conductor())));
  const Rational expected(pow(BigInt(static_cast<unsigned long>(f.p)), f.upsilon().get_ui()));
  os << "field " << describe(f) << ", n = " << f.degree() << ", expected det p^" << to_string(f.upsilon()) << "\n";

  const Lattice canon = canonical_gram(f);
  std::optional<Lattice> period;
  try {
    period = period_gram(f);
  } catch (const DetMismatch& e) {
    os << "period basis rejected: " << e.what() << "\nFAIL\n";
    return {false, os.str()};
  }
  bool pass = true;
  const bool det_ok = period->det() == expected && canon.det() == expected;
  os << "det(period) = " << to_string(period->det()) << ", det(canonical) = " << to_string(canon.det()) << "  "
     << (det_ok ? "equal to p^upsilon" : "MISMATCH") << "\n";
  pass = pass && det_ok;

  const ThetaProfile a = count_by_norm(*period, cutoff, budget);
  const ThetaProfile b = count_by_norm(canon, cutoff, budget);
  os << "theta profile, period basis:\n" << render_profile(a);
  os << "theta profile, canonical model:\n" << render_profile(b);
  os << "profiles " << (a == b ? "identical" : "DIFFER") << "\n";
  pass = pass && a == b;

  if (f.degree() <= 8 && o.covering_samples > 0) {
    const Rational lb = covering_lb(*period, o.covering_samples, o.seed);
    const PowerProduct tau_lb = PowerProduct(lb) * PowerProduct(period->det()).pow(make_rational(-1, static_cast<long>(f.degree())));
    const PowerProduct tau_ub = cor35_tau_bound(f);
    const bool sound = ppow_le(tau_lb, tau_ub);
    os << "covering lower bound (" << o.covering_samples << " samples, seed " << o.seed << "): " << to_string(lb)
       << ", tau >= " << tau_lb.to_decimal(kDecimalDigits) << " vs tau bound " << tau_ub.to_decimal(kDecimalDigits)
       << "  " << (sound ? "consistent" : "VIOLATED") << "\n";
    pass = pass && sound;
    if (canon.analytic_max()) {
      const bool below = lb <= *canon.analytic_max();
      os << "analytic max " << to_string(*canon.analytic_max()) << (below ? " >= sampled lower bound" : " < sampled lower bound")
         << "\n";
      pass = pass && below;
    }
  }
  os << (pass ? "PASS" : "FAIL") << "\n";
  return {pass, os.str()};
}

VerifyOutcome verify_deep_hole(unsigned r) {
  std::ostringstream os;
  const TwoPowerField f = TwoPowerField::make(r, TwoPowerVariant::Imag);
  const Lattice l = two_power_gram(f);
  const std::uint64_t n = f.degree();
  const std::vector<Rational> half(n, make_rational(1, 2));
  const CvpResult cvp = closest_vector(l, half);
  const Rational expected = make_rational(BigInt(static_cast<unsigned long>(n * (2 * n - 1))), 4);
  const bool ok = cvp.dist2 == expected && l.analytic_max() && *l.analytic_max() == cvp.dist2;
  os << "field " << describe(f) << ", n = " << n << ", Gram diag(" << n << ", " << 2 * n << ", ...)\n";
  os << "dist2(half-sum) = " << to_string(cvp.dist2) << ", expected n(2n-1)/4 = " << to_string(expected)
     << ", analytic max = " << (l.analytic_max() ? to_string(*l.analytic_max()) : "absent") << "\n";
  os << (ok ? "PASS" : "FAIL") << "\n";
  return {ok, os.str()};
}

VerifyOutcome verify_asymptotics(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("verify asymptotics: n must be at least 2");
  std::ostringstream os;
  bool pass = true;

  bool identity_ok = true;
  double worst = 0;
  for (std::uint64_t k = 2; k <= n; k *= 2) {
    const auto c = cor42_identity_check(k);
    worst = std::max(worst, c.relative_error);
    identity_ok = identity_ok && c.ok;
  }
  const auto at_n = cor42_identity_check(n);
  worst = std::max(worst, at_n.relative_error);
  identity_ok = identity_ok && at_n.ok;
  os << "eps identity on n = 2, 4, ..., and n = " << n << ": worst relative log error " << worst << "  "
     << (identity_ok ? "ok" : "FAIL") << "\n";
  pass = pass && identity_ok;

  const double target = std::log(2.0) - 0.5;
  const double scaled = static_cast<double>(n) * std::log(static_cast<double>(n)) * epsilon_n(n).to_double();
  const double rel = std::abs(scaled - target) / target;
  const bool trend_ok = rel <= 0.02;
  os.precision(10);
  os << "n ln(n) eps(n) = " << scaled << " vs ln 2 - 1/2 = " << target << ", relative gap " << rel
     << "  " << (trend_ok ? "ok" : "FAIL (tolerance 0.02)") << "\n";
  pass = pass && trend_ok;

  const BigFloat limit = cor43_limit();
  const double lim = limit.to_double();
  bool increasing = true, bounded = true;
  std::vector<std::uint64_t> samples;
  for (std::uint64_t k = 2; k <= std::min<std::uint64_t>(n, 64); ++k) samples.push_back(k);
  for (double k = 64; k < static_cast<double>(n); k *= 1.5) samples.push_back(static_cast<std::uint64_t>(k));
  samples.push_back(n);
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  BigFloat prev(128);
  mpfr_set_ui(prev.get(), 0, MPFR_RNDN);
  BigFloat bound(128);
  mpfr_set_d(bound.get(), 1e-12, MPFR_RNDN);
  mpfr_add(bound.get(), bound.get(), limit.get(), MPFR_RNDN);
  for (std::uint64_t k : samples) {
    const BigFloat v = cor43_envelope(k);
    increasing = increasing && mpfr_greater_p(v.get(), prev.get());
    bounded = bounded && mpfr_less_p(v.get(), bound.get());
    prev = v;
  }
  const double gap = lim - cor43_envelope(n).to_double();
  const bool close = std::abs(gap) < 1e-3;
  os << "sqrt(2 a_n): strictly increasing on " << samples.size() << " samples " << (increasing ? "ok" : "FAIL")
     << ", below sqrt(2) e^(-1/4) + 1e-12 " << (bounded ? "ok" : "FAIL") << ", gap at n = " << n << " is " << gap
     << " " << (close ? "ok" : "FAIL (tolerance 1e-3)") << "\n";
  pass = pass && increasing && bounded && close;
  os << (pass ? "PASS" : "FAIL") << "\n";
  return {pass, os.str()};
}

}  // namespace euminima
