#include "weilflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace weilflow {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

void dump_into(const ReportJson& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case ReportJson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad;
        out += ReportJson(it.key()).dump();
        out += sep;
        dump_into(it.value(), indent, depth + 1, out);
      }
      out += close;
      out += '}';
      return;
    }
    case ReportJson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        dump_into(v, indent, depth + 1, out);
      }
      out += close;
      out += ']';
      return;
    }
    case ReportJson::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

ReportJson big(const BigInt& v) { return to_string(v); }

ReportJson poly_json(const IntPoly& p) {
  ReportJson a = ReportJson::array();
  for (const auto& c : p) a.push_back(big(c));
  return a;
}

ReportJson subset_json(const Subset& s) {
  ReportJson a = ReportJson::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

}  // namespace

std::string dump_stable(const ReportJson& doc, int indent) {
  std::string out;
  dump_into(doc, indent, 0, out);
  return out;
}

ReportJson complex_json(Complex z) { return ReportJson{{"re", z.real()}, {"im", z.imag()}}; }

ReportJson input_json(const WeilDatum& w) {
  ReportJson poly = ReportJson::array();
  for (const auto& c : w.coeffs) poly.push_back(big(c));
  return ReportJson{{"q", w.q}, {"p", w.p}, {"f", w.f}, {"g", w.g}, {"weil_poly", poly}, {"label", w.label}};
}

ReportJson ordinarity_json(const OrdinarityVerdict& v) {
  ReportJson j{{"is_ordinary", v.is_ordinary}, {"middle_coefficient", big(v.middle_coefficient)}};
  j["p_valuation"] = v.p_valuation ? ReportJson(*v.p_valuation) : ReportJson(nullptr);
  return j;
}

ReportJson validate_report(const WeilDatum& w, const FrobeniusModel& m, const OrdinarityVerdict& v) {
  ReportJson roots = ReportJson::array();
  for (const auto& r : m.roots) roots.push_back(complex_json(r));
  ReportJson partner = ReportJson::array();
  for (auto p : m.partner) partner.push_back(p);
  ReportJson matrix = ReportJson::array();
  for (std::size_t i = 0; i < m.matrix.rows(); ++i) {
    ReportJson row = ReportJson::array();
    for (std::size_t k = 0; k < m.matrix.cols(); ++k) row.push_back(big(m.matrix(i, k)));
    matrix.push_back(row);
  }
  return ReportJson{{"input", input_json(w)},
                    {"valid", true},
                    {"ordinary", ordinarity_json(v)},
                    {"frobenius_matrix", matrix},
                    {"det_F", big(determinant(m.matrix))},
                    {"roots", roots},
                    {"partner", partner},
                    {"riemann_max_relative_deviation", riemann_deviation(m.roots, w.q)}};
}

ReportJson zeta_report(const WeilDatum& w, const FrobeniusModel& m, const PjFamily& fam,
                       const FunctionalEquationCheck& fe) {
  ReportJson polys = ReportJson::array();
  for (const auto& p : fam.polys) polys.push_back(poly_json(p));
  ReportJson roots = ReportJson::array();
  for (const auto& r : m.roots) roots.push_back(complex_json(r));
  ReportJson products = ReportJson::array();
  for (const auto& prods : fam.products) {
    ReportJson row = ReportJson::array();
    for (const auto& l : prods) row.push_back(complex_json(l));
    products.push_back(row);
  }
  return ReportJson{{"input", input_json(w)},
                    {"P", polys},
                    {"roots", roots},
                    {"products_by_j", products},
                    {"cross_check_deviation", fam.cross_check_deviation},
                    {"functional_equation", {{"ok", fe.ok}, {"max_deviation", fe.max_deviation}}}};
}

ReportJson count_report(const WeilDatum& w, const CountTable& ct, const OrbitTable& ot) {
  ReportJson n = ReportJson::object(), a = ReportJson::object(), orbits = ReportJson::object(),
             snf = ReportJson::object();
  for (const auto& [k, v] : ct.N) n[std::to_string(k)] = big(v);
  for (const auto& [k, v] : ct.a) a[std::to_string(k)] = big(v);
  for (const auto& [k, v] : ot.orbits) orbits[std::to_string(k)] = ReportJson{{"count", big(v.count)}, {"length", v.length}};
  for (const auto& [k, grp] : ot.groups) {
    ReportJson divs = ReportJson::array();
    for (const auto& d : grp.snf) divs.push_back(big(d));
    snf[std::to_string(k)] = divs;
  }
  return ReportJson{{"input", input_json(w)}, {"range", ct.range}, {"N", n}, {"a", a}, {"orbits", orbits}, {"snf", snf}};
}

ReportJson spectrum_report(const WeilDatum& w, const ZeroLattice& lattice, const PjFamily& fam,
                           const SpectrumWindow& spectrum, const FunctionalEquationCheck& fe) {
  ReportJson per_j = ReportJson::array();
  for (std::size_t j = 0; j < spectrum.zeros.size(); ++j) {
    ReportJson base = ReportJson::array();
    for (std::size_t s = 0; s < lattice.base[j].size(); ++s) {
      base.push_back(ReportJson{{"subset", subset_json(fam.subsets[j][s])}, {"s", complex_json(lattice.base[j][s])}});
    }
    ReportJson zeros = ReportJson::array();
    for (const auto& z : spectrum.zeros[j]) {
      zeros.push_back(ReportJson{{"subset", subset_json(fam.subsets[j][z.subset])},
                                 {"nu", z.nu},
                                 {"re", z.rho.real()},
                                 {"im", z.rho.imag()}});
    }
    per_j.push_back(ReportJson{{"j", j}, {"base", base}, {"zeros", zeros}});
  }
  return ReportJson{{"input", input_json(w)},
                    {"window", spectrum.window},
                    {"period", lattice.period},
                    {"critical_line_max_deviation", critical_line_deviation(lattice)},
                    {"functional_equation", {{"ok", fe.ok}, {"max_deviation", fe.max_deviation}}},
                    {"per_j", per_j}};
}

ReportJson verify_report(const VerificationReport& r, const TestFunction& alpha, bool include_timing) {
  ReportJson bumps = ReportJson::array();
  for (const auto& b : alpha.bumps()) bumps.push_back(ReportJson{{"c", b.center}, {"w", b.width}, {"A", b.amplitude}});

  ReportJson per_j = ReportJson::array();
  for (const auto& t : r.spectral.per_j) {
    per_j.push_back(ReportJson{{"j", t.j},
                               {"value", complex_json(t.value)},
                               {"nu_max", t.nu_max},
                               {"zeros", t.zeros},
                               {"majorant_order", t.majorant_order},
                               {"majorant_constant", t.majorant_constant},
                               {"tail_bound", t.tail_bound},
                               {"quadrature_error", t.quadrature_error}});
  }
  ReportJson cells = ReportJson::array();
  for (const auto& c : r.geometric.cells) {
    cells.push_back(ReportJson{{"k", c.k},
                               {"d", c.d},
                               {"a_d", to_string(c.closed_points)},
                               {"alpha", c.alpha},
                               {"weight", c.weight},
                               {"value", c.value}});
  }
  ReportJson doc{
      {"input", input_json(r.input)},
      {"ordinary", ordinarity_json(r.ordinarity)},
      {"alpha", bumps},
      {"tolerance", r.tolerance},
      {"checks",
       {{"functional_equation_max_deviation", r.functional_equation_deviation},
        {"critical_line_max_deviation", r.critical_line_deviation}}},
      {"spectral",
       {{"per_j", per_j},
        {"zero_sum", complex_json(r.spectral.zero_sum)},
        {"zero_sum_j_from_1", complex_json(r.spectral.zero_sum_from_j1)},
        {"closed_form", r.spectral.closed_form ? ReportJson(*r.spectral.closed_form) : ReportJson(nullptr)},
        {"tail_bound", r.spectral.tail_bound},
        {"quadrature_error", r.spectral.quadrature_error},
        {"zeros", r.spectral.zeros}}},
      {"geometric",
       {{"cells", cells},
        {"positive", r.geometric.positive},
        {"negative", r.geometric.negative},
        {"total", r.geometric.total}}},
      {"residuals",
       {{"zero_sum_vs_geometric", r.residuals.zero_sum_vs_geometric},
        {"zero_sum_vs_closed_form", r.residuals.zero_sum_vs_closed_form},
        {"closed_form_vs_geometric", r.residuals.closed_form_vs_geometric},
        {"max_imaginary_part", r.residuals.max_imaginary_part},
        {"budget", r.residuals.budget}}},
      {"pass", r.pass}};
  if (include_timing) doc["wall_time_seconds"] = r.wall_time_seconds;
  return doc;
}

}  // namespace weilflow
