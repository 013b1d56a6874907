#include "weilflow/exterior_powers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "weilflow/weil_core.hpp"

using namespace weilflow;
using weilflow::testing::Gaussian;
using weilflow::testing::load_json;

namespace {

FrobeniusModel model(const std::string& file) { return frobenius_model(parse_and_validate(load_json(file))); }

IntPoly to_int_poly(const std::vector<Gaussian>& p) {
  IntPoly out;
  for (const auto& c : p) {
    REQUIRE(c.im == 0);
    out.push_back(c.re);
  }
  return out;
}

}  // namespace

TEST_CASE("lexicographic subsets and binomials") {
  const auto s = lexicographic_subsets(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s.front() == Subset{0, 1});
  CHECK(s[1] == Subset{0, 2});
  CHECK(s.back() == Subset{2, 3});
  CHECK(lexicographic_subsets(3, 0) == std::vector<Subset>{Subset{}});
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(16, 8) == 12870);
}

TEST_CASE("exterior power matrices") {
  const IntMatrix f{{0, -5}, {1, 2}};
  CHECK(exterior_power_matrix(f, 0) == IntMatrix{{1}});
  CHECK(exterior_power_matrix(f, 1) == f);
  CHECK(exterior_power_matrix(f, 2) == IntMatrix{{5}});

  const FrobeniusModel m = model("e5_surface.json");
  for (int j = 0; j <= 4; ++j) {
    const IntMatrix lj = exterior_power_matrix(m.matrix, j);
    CHECK(lj.rows() == binomial(4, j));
  }
  CHECK(exterior_power_matrix(m.matrix, 4) == IntMatrix{{25}});
}

TEST_CASE("P_j of the trace 2 curve") {
  const PjFamily fam = build_pj_family(model("e5a2.json"));
  REQUIRE(fam.polys.size() == 3);
  CHECK(fam.polys[0] == IntPoly{1, -1});
  CHECK(fam.polys[1] == IntPoly{1, -2, 5});
  CHECK(fam.polys[2] == IntPoly{1, -5});
}

TEST_CASE("P_2 of the product surface from Gaussian-integer products") {
  // Inverse roots of P_1: 1 +- 2i and 2 +- i.
  const std::vector<Gaussian> mu{{1, 2}, {1, -2}, {2, 1}, {2, -1}};
  std::vector<Gaussian> pairwise;
  for (std::size_t a = 0; a < mu.size(); ++a)
    for (std::size_t b = a + 1; b < mu.size(); ++b) pairwise.push_back(mu[a] * mu[b]);
  std::vector<Gaussian> expected{{5, 0}, {5, 0}, {0, 5}, {0, -5}, {4, 3}, {4, -3}};
  auto key = [](Gaussian z) { return std::pair{z.re, z.im}; };
  std::ranges::sort(pairwise, {}, key);
  std::ranges::sort(expected, {}, key);
  CHECK(pairwise == expected);

  const PjFamily fam = build_pj_family(model("e5_surface.json"));
  CHECK(fam.polys[2] == to_int_poly(weilflow::testing::expand_inverse_roots(pairwise)));
  CHECK(fam.polys[1] == IntPoly{1, -6, 18, -30, 25});
  // P_3 from triple products q * conj(mu).
  std::vector<Gaussian> triples;
  for (const auto& m : mu) triples.push_back(Gaussian{5 * m.re, -5 * m.im});
  CHECK(fam.polys[3] == to_int_poly(weilflow::testing::expand_inverse_roots(triples)));
  CHECK(fam.polys[4] == IntPoly{1, -25});
}

TEST_CASE("family invariants over the corpus") {
  for (const auto& file : weilflow::testing::corpus()) {
    CAPTURE(file);
    const FrobeniusModel m = model(file);
    const PjFamily fam = build_pj_family(m);
    const int g = m.g;
    BigInt qg = 1;
    for (int i = 0; i < g; ++i) qg *= m.q;
    CHECK(fam.polys[0] == IntPoly{1, -1});
    CHECK(fam.polys[static_cast<std::size_t>(2 * g)] == IntPoly{1, -qg});
    CHECK(fam.cross_check_deviation <= 1e-8);
    for (int j = 0; j <= 2 * g; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      CHECK(fam.polys[ju].size() == binomial(2 * g, j) + 1);
      REQUIRE(fam.products[ju].size() == binomial(2 * g, j));
      for (const auto& lambda : fam.products[ju])
        CHECK(std::abs(std::norm(lambda) / std::pow(static_cast<double>(m.q), j) - 1.0) <= kRiemannTolerance);
    }
    const auto fe = functional_equation_check(fam);
    CHECK(fe.ok);
    CHECK(fe.max_deviation <= 1e-8);

    const ZeroLattice lat = zero_lattice(fam);
    CHECK(critical_line_deviation(lat) < 1e-9);

    // k = 0 cancellation: sum_j (-1)^j C(2g, j) = 0.
    long long alternating = 0;
    for (int j = 0; j <= 2 * g; ++j)
      alternating += (j % 2 ? -1 : 1) * static_cast<long long>(fam.products[static_cast<std::size_t>(j)].size());
    CHECK(alternating == 0);

    // k = 1: sum_j (-1)^j sum_S lambda_S = prod (1 - mu_i) = N_1.
    Complex power_sum = 0.0;
    for (int j = 0; j <= 2 * g; ++j)
      for (const auto& lambda : fam.products[static_cast<std::size_t>(j)]) power_sum += (j % 2 ? -1.0 : 1.0) * lambda;
    const double n1 = to_double(determinant(IntMatrix::identity(m.matrix.rows()) - m.matrix));
    CHECK(std::abs(power_sum - n1) < 1e-9 * n1);
  }
}

TEST_CASE("functional equation for the trace 2 curve") {
  const PjFamily fam = build_pj_family(model("e5a2.json"));
  const ZeroLattice lat = zero_lattice(fam);
  const double L = std::log(5.0);
  const Complex s1 = std::log(Complex{1.0, 2.0}) / L;
  const Complex s2 = std::log(Complex{1.0, -2.0}) / L;
  const Complex diff = 1.0 - s1 - s2;
  CHECK(std::abs(diff.real()) < 1e-14);
  const double turns = diff.imag() / lat.period;
  CHECK(std::abs(turns - std::round(turns)) < 1e-12);
  CHECK(lat.base[0][0] == Complex{0.0, 0.0});
  CHECK(std::abs(lat.base[2][0] - 1.0) < 1e-15);
}

TEST_CASE("zeros in small windows") {
  const PjFamily fam = build_pj_family(model("e5a2.json"));
  const ZeroLattice lat = zero_lattice(fam);
  const double period = 2.0 * std::numbers::pi / std::log(5.0);
  CHECK(lat.period == doctest::Approx(period).epsilon(1e-15));

  const auto z2 = zeros_in_window(lat, 2, 0.0);
  REQUIRE(z2.size() == 1);
  CHECK(std::abs(z2[0].rho - 1.0) < 1e-15);

  const auto z0 = zeros_in_window(lat, 0, 4.0);
  REQUIRE(z0.size() == 3);
  CHECK(std::abs(z0[0].rho - Complex{0.0, -period}) < 1e-12);
  CHECK(std::abs(z0[1].rho) < 1e-15);
  CHECK(std::abs(z0[2].rho - Complex{0.0, period}) < 1e-12);
}

TEST_CASE("window enumeration is complete and ordered") {
  for (const auto& file : {"e5a2.json", "e5_surface.json", "e7a3.json"}) {
    CAPTURE(file);
    const ZeroLattice lat = zero_lattice(build_pj_family(model(file)));
    for (int j = 0; j <= 2 * lat.g; ++j) {
      for (double window : {0.5, 7.0, 40.0, 300.0}) {
        const auto zeros = zeros_in_window(lat, j, window);
        // Brute force over a generous nu range.
        std::size_t expected = 0;
        const auto& base = lat.base[static_cast<std::size_t>(j)];
        const auto reach = static_cast<std::int64_t>(window / lat.period) + 3;
        for (const auto& s : base)
          for (std::int64_t nu = -reach; nu <= reach; ++nu)
            if (std::abs(s.imag() + static_cast<double>(nu) * lat.period) <= window) ++expected;
        CHECK(zeros.size() == expected);
        for (std::size_t i = 0; i + 1 < zeros.size(); ++i) {
          const bool ordered = zeros[i].rho.imag() < zeros[i + 1].rho.imag() ||
                               (zeros[i].rho.imag() == zeros[i + 1].rho.imag() && zeros[i].subset <= zeros[i + 1].subset);
          CHECK(ordered);
        }
        for (const auto& z : zeros) CHECK(std::abs(z.rho.real() - 0.5 * j) < 1e-9);
        // Density 2 C(2g, j) T / period up to one zero per sublattice per edge.
        const double density = 2.0 * static_cast<double>(base.size()) * window / lat.period;
        CHECK(std::abs(static_cast<double>(zeros.size()) - density) <= 2.0 * static_cast<double>(base.size()));
      }
    }
  }
}

TEST_CASE("zero multiset does not depend on the log branch") {
  const ZeroLattice lat = zero_lattice(build_pj_family(model("e5_surface.json")));
  ZeroLattice shifted = lat;
  for (auto& row : shifted.base)
    for (std::size_t i = 0; i < row.size(); ++i) row[i] += Complex{0.0, (i % 2 ? 1.0 : -2.0) * lat.period};
  for (int j = 0; j <= 4; ++j) {
    const auto a = zeros_in_window(lat, j, 25.0);
    const auto b = zeros_in_window(shifted, j, 25.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].rho - b[i].rho) < 1e-9);
  }
}
