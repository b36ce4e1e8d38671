#include "cexpde_cli/report.hpp"

#include <chrono>

#include "cexpde/characteristics.hpp"
#include "cexpde/errors.hpp"
#include "cexpde/random.hpp"

namespace cexpde::cli {

namespace {

using nlohmann::json;

json point_json(const JetPoint& pt) {
  return {{"x", std::vector<double>(pt.xs().begin(), pt.xs().end())},
          {"u", pt.u()},
          {"p", std::vector<double>(pt.ps().begin(), pt.ps().end())},
          {"hessian", std::vector<double>(pt.packed_hessian().begin(), pt.packed_hessian().end())}};
}

template <int Degree>
json form_json(const Form<Degree>& f) {
  json coef = json::object();
  const auto& mons = f.monomials();
  for (int k = 0; k < mons.size(); ++k) {
    std::string key;
    for (int e : mons.exponent(k)) key += (key.empty() ? "" : ",") + std::to_string(e);
    coef[key] = f.coefficients()[static_cast<std::size_t>(k)];
  }
  return {{"n", f.dim()}, {"degree", Degree}, {"coefficients", coef}};
}

json exceptionality_json(const ExceptionalityVerdict& v) {
  json j = {{"verdict", std::string(to_string(v.aggregate))},
            {"sample_count", v.sample_count},
            {"failed", v.failed_count()},
            {"degenerate_symbol", v.degenerate_count()},
            {"max_residual", v.max_residual()},
            {"tolerance", v.tolerance}};
  for (const auto& s : v.samples) {
    if (!s.check.pass) {
      j["first_failure"] = {{"point", point_json(s.point)},
                            {"residual", s.check.residual},
                            {"symbol", form_json(s.check.symbol)},
                            {"second_symbol", form_json(s.check.second_symbol)}};
      break;
    }
  }
  return j;
}

json ma_json(const MAClassification& c, int n) {
  const MinorBasis basis(n);
  json labels = json::array();
  for (const auto& m : basis.minors()) labels.push_back(m.label());
  json bases = json::array();
  int accepted = 0;
  for (const auto& fit : c.fits) {
    const auto& co = fit.coefficients;
    accepted += fit.accepted;
    bases.push_back({{"x", co.base.x},
                     {"u", co.base.u},
                     {"p", co.base.p},
                     {"coefficients", co.coefficients},
                     {"fit_residual", co.fit_residual},
                     {"validation_residual", co.validation_residual},
                     {"accepted", fit.accepted}});
  }
  return {{"classification", std::string(to_string(c.cls))},
          {"basis", labels},
          {"base_points", bases},
          {"accepted", accepted},
          {"max_higher_minor", c.max_higher_minor},
          {"affine_in_jet", c.affine_in_jet}};
}

json scan_json(const HyperbolicityScan& scan) {
  json counts = json::object();
  json fractions = json::object();
  for (auto t : {CharType::Hyperbolic, CharType::Parabolic, CharType::Elliptic, CharType::TotallyDegenerate}) {
    counts[std::string(to_string(t))] = scan.count(t);
    fractions[std::string(to_string(t))] = scan.fraction(t);
  }
  return {{"counts", counts}, {"fractions", fractions}};
}

json equivalence_json(const EquivalenceReport& r) {
  json cells = json::array();
  for (int cell = 0; cell < 8; ++cell)
    cells.push_back({{"divisible", (cell & 4) != 0},
                     {"lax", (cell & 2) != 0},
                     {"strong", (cell & 1) != 0},
                     {"count", r.matrix[static_cast<std::size_t>(cell)]}});
  json dis = json::array();
  for (const auto& s : r.disagreements())
    dis.push_back({{"point", point_json(s.point)},
                   {"divisible", s.divisible},
                   {"lax", s.lax},
                   {"strong", s.strong},
                   {"divisibility_residual", s.divisibility_residual},
                   {"lax_residuals", s.lax_residuals},
                   {"strong_deviations", s.strong_deviations}});
  return {{"compared", static_cast<int>(r.compared.size())},
          {"agreeing", r.agreeing()},
          {"skipped_non_hyperbolic", r.skipped_non_hyperbolic},
          {"skipped_near_parabolic", r.skipped_near_parabolic},
          {"matrix", cells},
          {"disagreements", dis}};
}

}  // namespace

std::string_view tool_version() { return CEXPDE_VERSION_STRING; }

int exit_code(Outcome outcome) {
  switch (outcome) {
    case Outcome::Consistent: return 0;
    case Outcome::Inconclusive: return 2;
    case Outcome::Disagreement: return 3;
  }
  return 2;
}

Classification classify_pde(const ClassifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Expr f = parse(options.pde, options.n);
  const Equation eq(f, options.n);

  Classification out;
  json& r = out.report;
  r["schema"] = std::string(kReportSchemaVersion);
  r["tool"] = {{"name", "cexpde"}, {"version", std::string(tool_version())}};
  r["expression"] = options.pde;
  r["canonical_expression"] = to_string(f, options.n);
  r["n"] = options.n;
  r["seed"] = options.seed;
  r["box"] = {{"lo", options.box.lo}, {"hi", options.box.hi}};
  r["samples"] = options.samples;
  r["tolerance"] = options.tol;
  r["exceptionality"] = nullptr;
  r["monge_ampere"] = nullptr;
  r["characteristics"] = nullptr;
  r["errors"] = json::array();

  const SamplingOptions sampling{options.box, options.samples, options.seed};
  std::optional<ExceptionalityVerdict> verdict;
  try {
    verdict = is_completely_exceptional(eq, sampling, options.tol);
    out.exceptionality = verdict->aggregate;
    r["exceptionality"] = exceptionality_json(*verdict);
  } catch (const SamplingError& e) {
    r["errors"].push_back({{"module", "symbol"}, {"message", e.what()}});
  }

  try {
    const auto ma = classify(eq, options.box, options.samples, derive_seed(options.seed, "monge-ampere"),
                             options.tol);
    out.ma_class = ma.cls;
    r["monge_ampere"] = ma_json(ma, options.n);
  } catch (const DomainError& e) {
    r["errors"].push_back({{"module", "ma"}, {"message", e.what()}});
  } catch (const std::invalid_argument& e) {
    // Minor basis is only tabulated up to n = 4.
    r["errors"].push_back({{"module", "ma"}, {"message", e.what()}});
  }

  bool equivalence_disagrees = false;
  if (options.n == 2 && verdict) {
    std::vector<JetPoint> points;
    points.reserve(verdict->samples.size());
    for (const auto& s : verdict->samples) points.push_back(s.point);
    EquivalenceTolerances tol;
    tol.divisibility = options.tol;
    const auto eqv = equivalence_report(PlanarEquation(eq), points, tol);
    equivalence_disagrees = !eqv.disagreements().empty();
    r["characteristics"] = {{"hyperbolicity", scan_json(eqv.scan)}, {"equivalence", equivalence_json(eqv)}};
  }

  const bool ma_family = out.ma_class && is_monge_ampere_family(*out.ma_class);
  if (!out.exceptionality || !out.ma_class || *out.exceptionality == Exceptionality::Inconclusive) {
    out.outcome = Outcome::Inconclusive;
    out.overall = kVerdictInconclusive;
  } else if (equivalence_disagrees ||
             (*out.exceptionality == Exceptionality::Exceptional) != ma_family) {
    out.outcome = Outcome::Disagreement;
    out.overall = kVerdictDisagreement;
  } else {
    out.outcome = Outcome::Consistent;
    out.overall = ma_family ? kVerdictExceptional : kVerdictNotExceptional;
  }
  r["consistent"] = out.outcome == Outcome::Consistent;
  r["overall"] = out.overall;
  if (options.timing)
    r["duration_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace cexpde::cli
