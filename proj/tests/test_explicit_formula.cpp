#include "weilflow/explicit_formula.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "weilflow/errors.hpp"

using namespace weilflow;
using weilflow::testing::load_json;

namespace {

const double kLog5 = std::log(5.0);
const double kInvE = std::exp(-1.0);

WeilDatum datum(const std::string& file) { return parse_and_validate(load_json(file)); }

VerificationReport run(const std::string& file, std::vector<Bump> bumps, double tol = 1e-8) {
  VerifyOptions opt;
  opt.tolerance = tol;
  return verify(datum(file), TestFunction(std::move(bumps)), opt);
}

ErrorKind error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::BadInput;
}

struct Pipeline {
  FrobeniusModel model;
  PjFamily family;
  ZeroLattice lattice;
  explicit Pipeline(const std::string& file)
      : model(frobenius_model(datum(file))), family(build_pj_family(model)), lattice(zero_lattice(family)) {}
};

}  // namespace

TEST_CASE("single surviving orbit at log 5") {
  const auto r = run("e5a2.json", {Bump{kLog5, 0.5, 1.0}});
  CHECK(r.pass);
  CHECK(r.geometric.total == doctest::Approx(4 * kLog5 * kInvE).epsilon(1e-14));
  CHECK(r.geometric.total == doctest::Approx(2.36830).epsilon(1e-5));
  CHECK(*r.spectral.closed_form == doctest::Approx(4 * kLog5 * kInvE).epsilon(1e-14));
  CHECK(std::abs(r.spectral.zero_sum - r.geometric.total) < 1e-8 * (1 + r.geometric.total));
  REQUIRE(r.geometric.cells.size() == 1);
  CHECK(r.geometric.cells[0].k == 1);
  CHECK(r.geometric.cells[0].d == 1);
  CHECK(r.geometric.cells[0].closed_points == 4);
  // j = 2 alone carries 5 log 5 / e through its single sublattice.
  const TraceResult& t2 = r.spectral.per_j[2];
  CHECK(std::abs(t2.value - 5 * kLog5 * kInvE) <= t2.tail_bound + t2.quadrature_error + 1e-9);
  // The renderings differ by T_0 = log 5 * sum_k alpha(k log 5) = log 5 / e.
  CHECK(std::abs(r.spectral.zero_sum - r.spectral.zero_sum_from_j1 - kLog5 * kInvE) < 1e-7);
}

TEST_CASE("two cells contribute at 2 log 5") {
  const auto r = run("e5a2.json", {Bump{2 * kLog5, 0.4, 1.0}});
  CHECK(r.pass);
  CHECK(r.geometric.total == doctest::Approx(32 * kLog5 * kInvE).epsilon(1e-14));
  CHECK(r.geometric.total == doctest::Approx(18.9466).epsilon(1e-5));
  REQUIRE(r.geometric.cells.size() == 2);
  // Cells (k, d) = (2, 1) and (1, 2): 1 * 4 + 2 * 14 = 32.
  CHECK(r.geometric.cells[0].k * r.geometric.cells[0].d == 2);
  CHECK(r.geometric.cells[1].k * r.geometric.cells[1].d == 2);
}

TEST_CASE("negative orbit weight q^{gk}") {
  const auto r = run("e5a2.json", {Bump{-kLog5, 0.5, 1.0}});
  CHECK(r.pass);
  CHECK(r.geometric.total == doctest::Approx(0.8 * kLog5 * kInvE).epsilon(1e-14));
  CHECK(*r.spectral.closed_form == doctest::Approx(0.47366).epsilon(1e-5));
  CHECK(r.geometric.positive == 0.0);
  REQUIRE(r.geometric.cells.size() == 1);
  CHECK(r.geometric.cells[0].k == -1);
  CHECK(r.geometric.cells[0].weight == doctest::Approx(0.2));
}

TEST_CASE("cancellation when no orbit length is in the support") {
  const auto r = run("e5a2.json", {Bump{0.0, 0.5, 1.0}});
  CHECK(r.pass);
  CHECK(r.geometric.total == 0.0);
  CHECK(r.geometric.cells.empty());
  CHECK(*r.spectral.closed_form == 0.0);
  CHECK(std::abs(r.spectral.zero_sum) < 1e-8);
  // T_0 alone is the Poisson sum log 5 * alpha(0).
  const TraceResult& t0 = r.spectral.per_j[0];
  CHECK(std::abs(t0.value - kLog5 * kInvE) <= t0.tail_bound + t0.quadrature_error + 1e-9);
  // Dropping j = 0 loses exactly that term.
  CHECK(std::abs(r.spectral.zero_sum_from_j1 + kLog5 * kInvE) < 1e-7);
  CHECK(r.spectral.zeros > 1000);
}

TEST_CASE("product surface") {
  const auto r = run("e5_surface.json", {Bump{kLog5, 0.5, 1.0}}, 1e-6);
  CHECK(r.pass);
  REQUIRE(r.geometric.cells.size() == 1);
  CHECK(r.geometric.cells[0].closed_points == 8);
  CHECK(r.geometric.total == doctest::Approx(8 * kLog5 * kInvE).epsilon(1e-14));
  CHECK(r.spectral.per_j.size() == 5);
  CHECK(r.functional_equation_deviation <= 1e-8);
  CHECK(r.critical_line_deviation < 1e-9);
}

TEST_CASE("imaginary parts stay inside the certified bounds") {
  const auto r = run("e5a2.json", {Bump{1.0, 1.2, 1.0}, Bump{-2.5, 0.7, -0.5}});
  CHECK(r.pass);
  for (const auto& t : r.spectral.per_j)
    CHECK(std::abs(t.value.imag()) <= t.tail_bound + t.quadrature_error + 1e-8 * (1 + std::abs(r.geometric.total)));
}

TEST_CASE("linearity in the test function") {
  const Bump b1{1.2, 0.9, 1.0}, b2{-1.9, 0.6, 2.0};
  const auto r1 = run("e5a2.json", {b1});
  const auto r2 = run("e5a2.json", {b2});
  const auto r12 = run("e5a2.json", {b1, b2});
  CHECK(r12.pass);
  const double budget = r1.residuals.budget + r2.residuals.budget + r12.residuals.budget;
  CHECK(std::abs(r12.spectral.zero_sum - r1.spectral.zero_sum - r2.spectral.zero_sum) <= budget);
  CHECK(r12.geometric.total == doctest::Approx(r1.geometric.total + r2.geometric.total).epsilon(1e-14));
}

TEST_CASE("shifting by log q moves the contributing cells") {
  const Bump base{0.8, 0.6, 1.0};
  for (int shift = -2; shift <= 2; ++shift) {
    CAPTURE(shift);
    const Bump moved{base.center + shift * kLog5, base.width, 1.0};
    const auto r = run("e5a2.json", {moved});
    CHECK(r.pass);
    CHECK(r.residuals.zero_sum_vs_geometric <= r.residuals.budget);
    for (const auto& cell : r.geometric.cells) {
      const double t = cell.k * cell.d * kLog5;
      CHECK(t > moved.lower());
      CHECK(t < moved.upper());
    }
  }
}

TEST_CASE("closed form equals the geometric side") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> center(-4.0, 4.0), width(0.2, 1.0);
  for (const auto& file : {"e5a2.json", "e7a3.json", "e5_surface.json", "e5_threefold.json"}) {
    const FrobeniusModel m = frobenius_model(datum(file));
    const CountTable ct = count_table(m, 12);
    for (int trial = 0; trial < 20; ++trial) {
      const TestFunction alpha({Bump{center(rng), width(rng), 1.0}});
      const double closed = spectral_side_closed_form(ct, alpha, m.q, m.g);
      const double geo = geometric_side(ct, alpha, m.q, m.g).total;
      CHECK(std::abs(closed - geo) <= 1e-13 * (1 + std::abs(geo)));
    }
  }
}

TEST_CASE("monotone truncation with fixed nu_max") {
  Pipeline p("e5a2.json");
  const TestFunction alpha({Bump{0.3, 1.0, 1.0}});
  const double closed = spectral_side_closed_form(count_table(p.model, 1), alpha, 5, 1);
  double previous_bound = std::numeric_limits<double>::infinity();
  double previous_gap = std::numeric_limits<double>::infinity();
  for (std::int64_t n : {2, 5, 10, 20, 40, 80}) {
    TraceOptions opt;
    opt.nu_max = n;
    const SpectralResult s = spectral_side_zero_sum(p.lattice, p.family, alpha, opt);
    const double gap = std::abs(s.zero_sum - closed);
    CAPTURE(n);
    CHECK(gap <= s.tail_bound + s.quadrature_error + 1e-12);
    CHECK(gap <= previous_bound);
    CHECK(s.tail_bound <= previous_bound);
    CHECK(s.zeros == static_cast<std::size_t>((2 * n + 1) * 4));
    previous_bound = s.tail_bound + s.quadrature_error;
    previous_gap = gap;
  }
  CHECK(previous_gap < 1e-9);
}

TEST_CASE("parallel summation meets the same budget") {
  Pipeline p("e5_surface.json");
  const TestFunction alpha({Bump{kLog5, 0.5, 1.0}});
  TraceOptions serial;
  serial.tolerance = 1e-6;
  TraceOptions parallel = serial;
  parallel.threads = 4;
  const SpectralResult a = spectral_side_zero_sum(p.lattice, p.family, alpha, serial);
  const SpectralResult b = spectral_side_zero_sum(p.lattice, p.family, alpha, parallel);
  CHECK(a.zeros == b.zeros);
  CHECK(std::abs(a.zero_sum - b.zero_sum) <= 1e-12 * (1 + std::abs(a.zero_sum)));
  CHECK(std::abs(b.zero_sum - 8 * kLog5 * kInvE) <= 1e-6 * (1 + 8 * kLog5 * kInvE) + b.tail_bound + b.quadrature_error);
}

TEST_CASE("serial summation is deterministic") {
  Pipeline p("e5a2.json");
  const TestFunction alpha({Bump{0.7, 1.1, 1.0}});
  const SpectralResult a = spectral_side_zero_sum(p.lattice, p.family, alpha, {});
  const SpectralResult b = spectral_side_zero_sum(p.lattice, p.family, alpha, {});
  CHECK(a.zero_sum == b.zero_sum);
  CHECK(a.tail_bound == b.tail_bound);
}

TEST_CASE("error conditions") {
  Pipeline p("e5a2.json");
  const TestFunction alpha({Bump{0.0, 0.5, 1.0}});
  TraceOptions capped;
  capped.nu_cap = 10;
  capped.tolerance = 1e-10;
  CHECK(error_kind([&] { trace_j(p.lattice, 1, alpha, capped); }) == ErrorKind::TruncationBudgetExceeded);

  const CountTable small = count_table(p.model, 1);
  const TestFunction wide({Bump{3.0, 0.5, 1.0}});
  CHECK(required_count_range(wide, kLog5) == 2);
  CHECK(error_kind([&] { geometric_side(small, wide, 5, 1); }) == ErrorKind::InsufficientCountRange);
  CHECK(error_kind([&] { spectral_side_closed_form(small, wide, 5, 1); }) == ErrorKind::InsufficientCountRange);

  const WeilDatum ss = datum("e5a0.json");
  VerifyOptions opt;
  CHECK(error_kind([&] { verify(ss, alpha, opt); }) == ErrorKind::NonOrdinary);
  opt.allow_non_ordinary = true;
  CHECK(verify(ss, TestFunction({Bump{kLog5, 0.5, 1.0}}), opt).pass);

  opt.tolerance = 0.0;
  CHECK(error_kind([&] { verify(ss, alpha, opt); }) == ErrorKind::BadInput);
  CHECK(error_kind([&] { verify(datum("e5a2.json"), TestFunction{}, VerifyOptions{}); }) == ErrorKind::BadInput);
}

TEST_CASE("errors carry the stage where they surfaced") {
  VerifyOptions opt;
  opt.trace.nu_cap = 3;
  try {
    verify(datum("e5a2.json"), TestFunction({Bump{0.0, 0.5, 1.0}}), opt);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TruncationBudgetExceeded);
    CHECK(e.stage() == "spectral_zero_sum");
  }
}
