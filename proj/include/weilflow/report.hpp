#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "weilflow/counting_orbits.hpp"
#include "weilflow/explicit_formula.hpp"
#include "weilflow/exterior_powers.hpp"
#include "weilflow/weil_core.hpp"

namespace weilflow {

using ReportJson = nlohmann::ordered_json;

// JSON text with every float printed as %.16e (17 significant digits) so
// identical runs diff byte-for-byte. Non-finite floats become null.
std::string dump_stable(const ReportJson& doc, int indent = 2);

// 17 significant digits, scientific.
std::string format_double(double v);

ReportJson complex_json(Complex z);
ReportJson input_json(const WeilDatum& w);
ReportJson ordinarity_json(const OrdinarityVerdict& v);

ReportJson validate_report(const WeilDatum& w, const FrobeniusModel& m, const OrdinarityVerdict& v);
ReportJson zeta_report(const WeilDatum& w, const FrobeniusModel& m, const PjFamily& fam,
                       const FunctionalEquationCheck& fe);
ReportJson count_report(const WeilDatum& w, const CountTable& ct, const OrbitTable& ot);

struct SpectrumWindow {
  double window = 0.0;
  std::vector<std::vector<LatticeZero>> zeros;  // per j
};
ReportJson spectrum_report(const WeilDatum& w, const ZeroLattice& lattice, const PjFamily& fam,
                           const SpectrumWindow& spectrum, const FunctionalEquationCheck& fe);

ReportJson verify_report(const VerificationReport& r, const TestFunction& alpha, bool include_timing);

}  // namespace weilflow
