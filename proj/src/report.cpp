#include "sigstab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sigstab {

namespace {

using nlohmann::json;

class Emitter {
 public:
  explicit Emitter(std::vector<std::string>& warnings) : warnings_(warnings) {}

  json num(double v, const std::string& field) {
    if (std::isfinite(v)) return v;
    warnings_.push_back(field + " is not finite; serialized as null");
    return nullptr;
  }

  template <class T>
  json opt(const std::optional<T>& v, const std::string& field) {
    return v ? num(*v, field) : json(nullptr);
  }

 private:
  std::vector<std::string>& warnings_;
};

json complex_list(const std::vector<std::complex<double>>& zs, Emitter& e, const std::string& field) {
  json arr = json::array();
  for (const auto& z : zs) arr.push_back({{"re", e.num(z.real(), field)}, {"im", e.num(z.imag(), field)}});
  return arr;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json report_to_json(const StabilityReport& rep, const Matrix& m, const std::string& input_path) {
  std::vector<std::string> warnings = rep.warnings;
  Emitter e(warnings);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["input"] = {{"path", input_path}, {"n", m.n()}, {"matrix", {{"n", m.n()}, {"entries", m.rows()}}}};
  doc["n"] = rep.n;

  json polys = json::array();
  for (const auto& p : rep.charpoly.p) polys.push_back(p.coeffs());
  doc["coefficient_polynomials"] = polys;
  doc["diagonal_sums"] = rep.diagonal_sums;

  if (rep.critical) {
    const auto& c = *rep.critical;
    doc["sigma_star"] = e.num(c.sigma_star, "sigma_star");
    doc["crossing"] = to_string(c.crossing);
    doc["leading_eigenvalues"] = complex_list(c.leading, e, "leading_eigenvalues");
    doc["certified_interval"] = {{"lo", c.sigma_star},
                                 {"lo_open", true},
                                 {"hi", e.num(c.certified_hi, "certified_interval.hi")},
                                 {"gershgorin_tail", c.gershgorin_tail}};
  } else {
    doc["sigma_star"] = nullptr;
    doc["crossing"] = nullptr;
    doc["leading_eigenvalues"] = nullptr;
    doc["certified_interval"] = nullptr;
  }

  if (rep.omega) {
    json per = json::array();
    for (const auto& rl : rep.omega->per_coefficient) {
      json roots = json::array();
      for (const auto& r : rl.roots)
        roots.push_back({{"root", e.num(r.value, "omega.root")},
                         {"residual", e.num(r.residual, "omega.residual")},
                         {"multiplicity", r.multiplicity}});
      per.push_back(roots);
    }
    doc["omega"] = {{"per_coefficient", per},
                    {"max_omega", e.opt(rep.omega->max_omega, "omega.max_omega")},
                    {"zero_coefficients", rep.omega->zero_coefficients}};
  } else {
    doc["omega"] = nullptr;
  }

  doc["gershgorin"] = e.opt(rep.gershgorin, "gershgorin");

  doc["theorem2"] = nullptr;
  doc["corollary"] = nullptr;
  doc["theorem_tolerance"] = nullptr;
  if (rep.theorems) {
    doc["theorem_tolerance"] = e.num(rep.theorems->tolerance, "theorem_tolerance");
    if (rep.theorems->theorem2) {
      const auto& t = *rep.theorems->theorem2;
      doc["theorem2"] = {{"holds", t.holds},
                         {"residual", e.num(t.residual, "theorem2.residual")},
                         {"max_omega_absent", t.max_omega_absent}};
    }
    if (rep.theorems->corollary) {
      const auto& c = *rep.theorems->corollary;
      doc["corollary"] = {{"holds", c.holds}, {"slack", e.num(c.slack, "corollary.slack")}};
    }
  }

  if (rep.scaling) {
    const auto& s = *rep.scaling;
    doc["scaling"] = {{"holds", s.holds},
                      {"mbar0_eigenvalues", complex_list(s.mbar0_eigenvalues, e, "scaling.mbar0_eigenvalues")},
                      {"p0_roots", complex_list(s.p0_roots, e, "scaling.p0_roots")},
                      {"multiset_residual", e.num(s.multiset_residual, "scaling.multiset_residual")},
                      {"multiset_match", s.multiset_match},
                      {"leading_complex_mbar0", s.leading_complex_mbar0},
                      {"mbar0_abscissa", e.opt(s.mbar0_abscissa, "scaling.mbar0_abscissa")},
                      {"p0_root_match_residual", e.opt(s.p0_root_match_residual, "scaling.p0_root_match_residual")},
                      {"det_at_mbar0_abscissa", e.opt(s.det_at_mbar0_abscissa, "scaling.det_at_mbar0_abscissa")},
                      {"min_eig_residual", e.opt(s.min_eig_residual, "scaling.min_eig_residual")}};
  } else {
    doc["scaling"] = nullptr;
  }

  if (rep.theorem1) {
    doc["theorem1"] = {{"verified", rep.theorem1->verified},
                       {"coefficients_checked", rep.theorem1->coefficients_checked},
                       {"sign_flips_checked", rep.theorem1->sign_flips_checked},
                       {"failures", rep.theorem1->failures}};
  } else {
    doc["theorem1"] = nullptr;
  }
  doc["sign_changes_verified"] = rep.sign_changes_verified;
  doc["timings_ms"] = rep.timings_ms;
  doc["errors"] = rep.errors;
  doc["warnings"] = warnings;
  return doc;
}

std::string report_to_text(const StabilityReport& rep, const std::string& input_path) {
  std::ostringstream os;
  os << "input: " << input_path << " (n = " << rep.n << ")\n";
  if (rep.critical) {
    os << "sigma*: " << fmt17(rep.critical->sigma_star) << "  " << to_string(rep.critical->crossing) << "\n";
  } else {
    os << "sigma*: unavailable\n";
  }
  if (rep.omega) os << "max(Omega): " << (rep.omega->max_omega ? fmt17(*rep.omega->max_omega) : "absent") << "\n";
  if (rep.gershgorin) os << "gershgorin sigma: " << fmt17(*rep.gershgorin) << "\n";
  if (rep.theorems && rep.theorems->theorem2) {
    os << "real crossing, sigma* = max(Omega): " << (rep.theorems->theorem2->holds ? "holds" : "FAILS")
       << " (residual " << fmt17(rep.theorems->theorem2->residual) << ")\n";
  }
  if (rep.theorems && rep.theorems->corollary) {
    os << "complex crossing, max(Omega) <= sigma*: " << (rep.theorems->corollary->holds ? "holds" : "FAILS")
       << " (slack " << fmt17(rep.theorems->corollary->slack) << ")\n";
  }
  if (rep.scaling) os << "scaling relation: " << (rep.scaling->holds ? "holds" : "FAILS") << "\n";
  if (rep.theorem1) os << "coefficient sign changes: " << (rep.theorem1->verified ? "verified" : "FAILS") << "\n";
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  for (const auto& err : rep.errors) os << "error: " << err << "\n";
  return os.str();
}

int exit_code_for(const StabilityReport& rep) {
  if (rep.any_check_failed()) return kExitFinding;
  if (!rep.errors.empty()) return kExitError;
  return kExitOk;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, std::size_t n) {
  std::ostringstream os;
  os << "sigma,abscissa";
  for (std::size_t i = 0; i < n; ++i) os << ",p_" << i;
  for (std::size_t i = 0; i < n; ++i) os << ",sign_" << i;
  os << "\n";
  for (const auto& r : rows) {
    os << fmt17(r.sigma) << "," << fmt17(r.abscissa);
    for (double v : r.p) os << "," << fmt17(v);
    for (Sign s : r.signs) os << "," << static_cast<int>(s);
    os << "\n";
  }
  return os.str();
}

}  // namespace sigstab
