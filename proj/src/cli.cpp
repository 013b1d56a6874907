#include "weilflow/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "weilflow/counting_orbits.hpp"
#include "weilflow/errors.hpp"
#include "weilflow/explicit_formula.hpp"
#include "weilflow/exterior_powers.hpp"
#include "weilflow/report.hpp"
#include "weilflow/weil_core.hpp"

namespace weilflow::cli {

namespace {

nlohmann::json read_input(const std::string& path) {
  if (path.empty()) throw Error(ErrorKind::BadInput, "--input is required", "input");
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open input file '" + path + "'", "input");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, "input file '" + path + "' is not valid JSON: " + e.what(), "input");
  }
}

std::string complex_text(Complex z) {
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
}

std::string poly_text(const IntPoly& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + "]";
}

void input_text(std::ostream& out, const WeilDatum& w) {
  out << "input: " << (w.label.empty() ? "(unlabelled)" : w.label) << "  q=" << w.q << " (p=" << w.p
      << ", f=" << w.f << ")  g=" << w.g << "  weil_poly=" << poly_text(w.coeffs) << "\n";
}

struct Pipeline {
  WeilDatum datum;
  OrdinarityVerdict verdict;
  FrobeniusModel model;
};

Pipeline load(const RunConfig& config) {
  const nlohmann::json doc = read_input(config.input_path);
  Pipeline p;
  try {
    p.datum = parse_and_validate(doc, ValidateOptions{config.max_dimension});
  } catch (const Error& e) {
    throw e.with_stage("validate");
  }
  p.verdict = check_ordinary(p.datum);
  if (!p.verdict.is_ordinary && !config.allow_non_ordinary) {
    throw Error(ErrorKind::NonOrdinary,
                "middle coefficient c_g = " + to_string(p.verdict.middle_coefficient) + " is divisible by p = " +
                    std::to_string(p.datum.p),
                "ordinarity");
  }
  try {
    p.model = frobenius_model(p.datum);
  } catch (const Error& e) {
    throw e.with_stage("frobenius_model");
  }
  return p;
}

int cmd_validate(const RunConfig& config, std::ostream& out) {
  const Pipeline p = load(config);
  switch (config.format) {
    case OutputFormat::Json:
      out << dump_stable(validate_report(p.datum, p.model, p.verdict)) << "\n";
      break;
    case OutputFormat::Text:
      input_text(out, p.datum);
      out << "valid: yes\n";
      out << "ordinary: " << (p.verdict.is_ordinary ? "yes" : "no") << " (c_g = " << to_string(p.verdict.middle_coefficient)
          << ")\n";
      out << "det(F) = " << to_string(determinant(p.model.matrix)) << "\n";
      for (std::size_t i = 0; i < p.model.roots.size(); ++i) out << "mu_" << i + 1 << " = " << complex_text(p.model.roots[i]) << "\n";
      out << "max | |mu|^2 - q | / q = " << format_double(riemann_deviation(p.model.roots, p.datum.q)) << "\n";
      break;
    case OutputFormat::Csv:
      out << "index,re,im,abs\n";
      for (std::size_t i = 0; i < p.model.roots.size(); ++i) {
        const auto& r = p.model.roots[i];
        out << i + 1 << "," << format_double(r.real()) << "," << format_double(r.imag()) << ","
            << format_double(std::abs(r)) << "\n";
      }
      break;
  }
  return kExitOk;
}

int cmd_zeta(const RunConfig& config, std::ostream& out) {
  const Pipeline p = load(config);
  PjFamily fam;
  FunctionalEquationCheck fe;
  try {
    fam = build_pj_family(p.model);
    fe = functional_equation_check(fam);
  } catch (const Error& e) {
    throw e.with_stage("exterior_powers");
  }
  switch (config.format) {
    case OutputFormat::Json:
      out << dump_stable(zeta_report(p.datum, p.model, fam, fe)) << "\n";
      break;
    case OutputFormat::Text:
      input_text(out, p.datum);
      for (std::size_t j = 0; j < fam.polys.size(); ++j) out << "P_" << j << " = " << poly_text(fam.polys[j]) << "\n";
      out << "functional equation max deviation: " << format_double(fe.max_deviation) << "\n";
      break;
    case OutputFormat::Csv:
      out << "j,power,coefficient\n";
      for (std::size_t j = 0; j < fam.polys.size(); ++j)
        for (std::size_t i = 0; i < fam.polys[j].size(); ++i) out << j << "," << i << "," << to_string(fam.polys[j][i]) << "\n";
      break;
  }
  return kExitOk;
}

int cmd_count(const RunConfig& config, std::ostream& out, bool orbit_view) {
  if (config.count_range < 1) throw Error(ErrorKind::BadInput, "--max must be >= 1", "config");
  const Pipeline p = load(config);
  CountTable ct;
  OrbitTable ot;
  try {
    ct = count_table(p.model, config.count_range);
    ot = orbit_table(p.model, ct, config.count_range);
  } catch (const Error& e) {
    throw e.with_stage("counting");
  }
  switch (config.format) {
    case OutputFormat::Json:
      out << dump_stable(count_report(p.datum, ct, ot)) << "\n";
      break;
    case OutputFormat::Text:
      input_text(out, p.datum);
      if (orbit_view) {
        out << "nu  b_nu  length\n";
        for (const auto& [nu, e] : ot.orbits) out << nu << "  " << to_string(e.count) << "  " << format_double(e.length) << "\n";
      } else {
        out << "n  N_n  a_n  snf\n";
        for (const auto& [n, v] : ct.N) {
          out << n << "  " << to_string(v) << "  " << to_string(ct.a.at(n)) << "  ";
          for (const auto& d : ot.groups.at(n).snf) out << to_string(d) << " ";
          out << "\n";
        }
      }
      break;
    case OutputFormat::Csv:
      out << "n,N,a,orbit_count,orbit_length,snf\n";
      for (const auto& [n, v] : ct.N) {
        out << n << "," << to_string(v) << "," << to_string(ct.a.at(n)) << "," << to_string(ot.orbits.at(n).count) << ","
            << format_double(ot.orbits.at(n).length) << ",";
        const auto& snf = ot.groups.at(n).snf;
        for (std::size_t i = 0; i < snf.size(); ++i) out << (i ? " " : "") << to_string(snf[i]);
        out << "\n";
      }
      break;
  }
  return kExitOk;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  if (!(config.window >= 0.0)) throw Error(ErrorKind::BadInput, "--window must be >= 0", "config");
  const Pipeline p = load(config);
  PjFamily fam;
  FunctionalEquationCheck fe;
  try {
    fam = build_pj_family(p.model);
    fe = functional_equation_check(fam);
  } catch (const Error& e) {
    throw e.with_stage("exterior_powers");
  }
  const ZeroLattice lattice = zero_lattice(fam);
  SpectrumWindow sw;
  sw.window = config.window;
  for (int j = 0; j <= 2 * p.datum.g; ++j) sw.zeros.push_back(zeros_in_window(lattice, j, config.window));
  switch (config.format) {
    case OutputFormat::Json:
      out << dump_stable(spectrum_report(p.datum, lattice, fam, sw, fe)) << "\n";
      break;
    case OutputFormat::Text:
      input_text(out, p.datum);
      out << "window |Im rho| <= " << format_double(config.window) << ", period " << format_double(lattice.period) << "\n";
      for (std::size_t j = 0; j < sw.zeros.size(); ++j) {
        out << "j=" << j << ": " << sw.zeros[j].size() << " zeros\n";
        for (const auto& z : sw.zeros[j]) out << "  " << complex_text(z.rho) << "\n";
      }
      break;
    case OutputFormat::Csv:
      out << "j,subset,nu,re,im\n";
      for (std::size_t j = 0; j < sw.zeros.size(); ++j)
        for (const auto& z : sw.zeros[j])
          out << j << "," << z.subset << "," << z.nu << "," << format_double(z.rho.real()) << ","
              << format_double(z.rho.imag()) << "\n";
      break;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  if (config.alpha.empty()) throw Error(ErrorKind::BadInput, "verify needs at least one --alpha", "config");
  if (!(config.tolerance > 0.0)) throw Error(ErrorKind::BadInput, "--tol must be > 0", "config");
  const nlohmann::json doc = read_input(config.input_path);
  WeilDatum w;
  try {
    w = parse_and_validate(doc, ValidateOptions{config.max_dimension});
  } catch (const Error& e) {
    throw e.with_stage("validate");
  }
  VerifyOptions options;
  options.tolerance = config.tolerance;
  options.allow_non_ordinary = config.allow_non_ordinary;
  options.trace.nu_cap = config.nu_cap;
  options.trace.threads = config.threads;
  const TestFunction alpha(config.alpha);
  const VerificationReport r = verify(w, alpha, options);
  switch (config.format) {
    case OutputFormat::Json:
      out << dump_stable(verify_report(r, alpha, config.timing)) << "\n";
      break;
    case OutputFormat::Text: {
      input_text(out, r.input);
      out << "ordinary: " << (r.ordinarity.is_ordinary ? "yes" : "no") << "\n";
      for (const auto& t : r.spectral.per_j) {
        out << "T_" << t.j << " = " << complex_text(t.value) << "  (|nu| <= " << t.nu_max << ", tail <= "
            << format_double(t.tail_bound) << ")\n";
      }
      out << "spectral (zero sum, j=0..2g): " << complex_text(r.spectral.zero_sum) << "\n";
      out << "spectral (zero sum, j=1..2g): " << complex_text(r.spectral.zero_sum_from_j1) << "\n";
      out << "spectral (closed form):       " << format_double(*r.spectral.closed_form) << "\n";
      out << "geometric:                    " << format_double(r.geometric.total) << "\n";
      out << "residual zero sum - geometric: " << format_double(r.residuals.zero_sum_vs_geometric) << " (budget "
          << format_double(r.residuals.budget) << ")\n";
      if (config.timing) out << "wall time: " << format_double(r.wall_time_seconds) << " s\n";
      out << (r.pass ? "PASS" : "FAIL") << "\n";
      break;
    }
    case OutputFormat::Csv:
      out << "quantity,j,re,im,nu_max,zeros,tail_bound,quadrature_error\n";
      for (const auto& t : r.spectral.per_j) {
        out << "trace," << t.j << "," << format_double(t.value.real()) << "," << format_double(t.value.imag()) << ","
            << t.nu_max << "," << t.zeros << "," << format_double(t.tail_bound) << ","
            << format_double(t.quadrature_error) << "\n";
      }
      out << "zero_sum,," << format_double(r.spectral.zero_sum.real()) << "," << format_double(r.spectral.zero_sum.imag())
          << ",," << r.spectral.zeros << "," << format_double(r.spectral.tail_bound) << ","
          << format_double(r.spectral.quadrature_error) << "\n";
      out << "closed_form,," << format_double(*r.spectral.closed_form) << ",0,,,,\n";
      out << "geometric,," << format_double(r.geometric.total) << ",0,,,,\n";
      out << "residual,," << format_double(r.residuals.zero_sum_vs_geometric) << ",,,,"
          << format_double(r.residuals.budget) << ",\n";
      out << "pass,," << (r.pass ? 1 : 0) << ",,,,,\n";
      break;
  }
  return r.pass ? kExitOk : kExitVerificationFailed;
}

void report_error(const Error& e, const RunConfig& config, std::ostream& out, std::ostream& err) {
  err << "error [" << (e.stage().empty() ? "run" : e.stage()) << "] " << to_string(e.kind()) << ": " << e.what() << "\n"
      << "  hint: " << remediation_hint(e.kind()) << "\n";
  if (config.format == OutputFormat::Json) {
    ReportJson doc{{"error",
                    {{"kind", std::string(to_string(e.kind()))},
                     {"stage", e.stage()},
                     {"message", e.what()},
                     {"hint", std::string(remediation_hint(e.kind()))},
                     {"subcommand", config.subcommand},
                     {"input_path", config.input_path}}}};
    std::ifstream in(config.input_path);
    if (in) {
      try {
        doc["error"]["input"] = ReportJson::parse(in);
      } catch (const std::exception&) {
      }
    }
    out << dump_stable(doc) << "\n";
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "validate") return cmd_validate(config, out);
    if (config.subcommand == "zeta") return cmd_zeta(config, out);
    if (config.subcommand == "count") return cmd_count(config, out, false);
    if (config.subcommand == "orbits") return cmd_count(config, out, true);
    if (config.subcommand == "spectrum") return cmd_spectrum(config, out);
    if (config.subcommand == "verify") return cmd_verify(config, out);
    throw Error(ErrorKind::BadInput, "unknown subcommand '" + config.subcommand + "'", "config");
  } catch (const Error& e) {
    report_error(e, config, out, err);
    return kExitInputError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  if (const char* env = std::getenv("WEILFLOW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      err << "error [config] BadInput: WEILFLOW_THREADS must be an integer >= 1, got '" << env << "'\n";
      return kExitInputError;
    }
    config.threads = static_cast<int>(v);
  }

  CLI::App app{"weilflow: explicit-formula verification for zeta functions of abelian varieties over finite fields"};
  app.require_subcommand(1);
  std::string format = "json";
  std::vector<std::string> alpha_specs;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", config.input_path, "input JSON document")->required();
    sub->add_flag("--allow-non-ordinary", config.allow_non_ordinary, "run on non-ordinary inputs");
    sub->add_option("--format", format, "json | text | csv")->check(CLI::IsMember({"json", "text", "csv"}));
    sub->add_option("--max-dimension", config.max_dimension, "largest accepted g (default 8)");
  };
  auto* validate = app.add_subcommand("validate", "validate a Weil polynomial and report its Frobenius roots");
  auto* zeta = app.add_subcommand("zeta", "exact P_0..P_2g and the functional-equation check");
  auto* count = app.add_subcommand("count", "point counts, closed points and fixed-point groups");
  auto* orbits = app.add_subcommand("orbits", "primitive compact-orbit counts and lengths");
  auto* spectrum = app.add_subcommand("spectrum", "zeros of P_j(q^-s) in a window |Im s| <= T");
  auto* verify_cmd = app.add_subcommand("verify", "spectral vs geometric side of the explicit formula");
  for (auto* sub : {validate, zeta, count, orbits, spectrum, verify_cmd}) common(sub);
  for (auto* sub : {count, orbits}) sub->add_option("--max", config.count_range, "largest n (default 12)");
  spectrum->add_option("--window", config.window, "half-height T of the window (default 10)");
  verify_cmd->add_option("--alpha", alpha_specs, "bump c=<float>,w=<float>[,A=<float>]; repeat to sum")->required();
  verify_cmd->add_option("--tol", config.tolerance, "tolerance (default 1e-8)");
  verify_cmd->add_option("--nu-max", config.nu_cap, "hard cap on |nu| per sublattice (default 1e7)");
  verify_cmd->add_flag("--timing", config.timing, "include wall time (breaks byte-stable output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error [config] BadInput: " << e.what() << "\n";
    return kExitInputError;
  }
  for (auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();
  config.format = format == "text" ? OutputFormat::Text : format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  try {
    for (const auto& spec : alpha_specs) config.alpha.push_back(parse_bump_spec(spec));
  } catch (const Error& e) {
    report_error(e.with_stage("config"), config, out, err);
    return kExitInputError;
  }
  return run(config, out, err);
}

}  // namespace weilflow::cli
