#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "kronrod/constellation.hpp"
#include "kronrod/error.hpp"

using namespace kronrod;
using std::numbers::pi;

namespace {

// Composite Simpson integral of the standard normal density over [x, x + 40].
double q_by_quadrature(double x) {
  const int n = 200000;
  const double a = x, b = x + 40.0;
  const double h = (b - a) / n;
  auto f = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * pi); };
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

std::vector<double> sorted_phases(const ConstellationSet& s) {
  std::vector<double> ph;
  for (auto p : s.points()) {
    double a = std::arg(p);
    if (a < -1e-12) a += 2 * pi;
    if (a >= 2 * pi - 1e-12) a = 0.0;
    ph.push_back(std::max(a, 0.0));
  }
  std::sort(ph.begin(), ph.end());
  return ph;
}

bool contains(const ConstellationSet& s, cdouble z) { return s.find(z) < s.size(); }

}  // namespace

TEST_CASE("make_psk produces the M-th roots of unity with Gray labels") {
  const auto bpsk = make_psk(2);
  CHECK(bpsk.size() == 2);
  CHECK(std::abs(bpsk.point(0) - cdouble(1, 0)) < 1e-15);
  CHECK(std::abs(bpsk.point(1) - std::polar(1.0, pi)) < 1e-15);

  const auto qpsk = make_psk(4);
  for (cdouble z : {cdouble(1, 0), cdouble(0, 1), cdouble(-1, 0), cdouble(0, -1)}) {
    CHECK(contains(qpsk, z));
  }

  const auto psk8 = make_psk(8);
  for (int k = 0; k < 8; ++k) CHECK(contains(psk8, std::polar(1.0, k * pi / 4)));

  // Adjacent points differ in exactly one label bit.
  for (unsigned m : {4u, 8u, 16u}) {
    const auto s = make_psk(m);
    for (unsigned k = 0; k < m; ++k) {
      CHECK(__builtin_popcount(s.label(k) ^ s.label((k + 1) % m)) == 1);
    }
  }
  const auto rotated = make_psk(4, 0.3);
  CHECK(std::abs(rotated.first_point() - std::polar(1.0, 0.3)) < 1e-15);
}

TEST_CASE("make_psk rejects bad orders") {
  for (unsigned m : {0u, 1u, 3u, 6u, 12u}) {
    try {
      make_psk(m);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_cardinality);
    }
  }
}

TEST_CASE("scheme 1 factor sets follow the successive rotation rule") {
  const auto s8 = scheme1_sets(8);
  REQUIRE(s8.size() == 3);
  CHECK(std::abs(s8[0].point(1) - std::polar(1.0, pi)) < 1e-15);
  CHECK(std::abs(s8[1].point(1) - std::polar(1.0, 3 * pi / 2)) < 1e-15);
  CHECK(std::abs(s8[2].point(1) - std::polar(1.0, 5 * pi / 4)) < 1e-15);
  for (const auto& s : s8) {
    CHECK(s.point(0) == cdouble(1, 0));
    CHECK(s.label(0) == 0);
    CHECK(s.label(1) == 1);
  }
  const auto s4 = scheme1_sets(4);
  REQUIRE(s4.size() == 2);
  CHECK(std::abs(s4[1].point(1) - std::polar(1.0, 3 * pi / 2)) < 1e-15);
  CHECK(scheme1_sets(2).size() == 1);
  CHECK_THROWS_AS(scheme1_sets(6), Error);
}

TEST_CASE("scheme 2 factor sets are plain PSK") {
  const std::vector<unsigned> c{2, 4, 8};
  const auto s = scheme2_sets(c);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == make_psk(2));
  CHECK(s[1] == make_psk(4));
  CHECK(s[2] == make_psk(8));
  const std::vector<unsigned> same{8, 8, 8};
  const auto t = scheme2_sets(same);
  CHECK((t[0] == t[1] && t[1] == t[2]));
  const std::vector<unsigned> one{2};
  CHECK(scheme2_sets(one).size() == 1);

  SchemeSpec too_big{Scheme::two, 4, {2, 8}};
  CHECK_THROWS_AS(scheme_sets(too_big), Error);
}

TEST_CASE("scheme 1 Kronecker expansion closes to M-PSK (exhaustive)") {
  for (unsigned m : {2u, 4u, 8u, 16u}) {
    const auto sets = scheme1_sets(m);
    const auto exp = kron_expand(sets);
    REQUIRE(exp.size() == m);
    const auto ph = sorted_phases(exp);
    for (std::size_t k = 0; k < ph.size(); ++k) {
      CHECK(std::abs(std::abs(exp.point(k)) - 1.0) < 1e-12);
      const double next = k + 1 < ph.size() ? ph[k + 1] : ph[0] + 2 * pi;
      CHECK(std::abs(next - ph[k] - 2 * pi / m) < 1e-10);
    }
  }
  // 8 products enumerated by hand: every e^{jk pi/4} appears.
  const auto e8 = kron_expand(scheme1_sets(8));
  for (int k = 0; k < 8; ++k) CHECK(contains(e8, std::polar(1.0, k * pi / 4)));

  const std::vector<ConstellationSet> single{make_psk(2)};
  CHECK(kron_expand(single) == make_psk(2));
  CHECK_THROWS_AS(kron_expand(std::vector<ConstellationSet>{}), Error);
}

TEST_CASE("scheme 2 expansion collapses duplicate products") {
  const std::vector<unsigned> c{2, 4, 8};
  const auto e = kron_expand(scheme2_sets(c));
  CHECK(e.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(contains(e, std::polar(1.0, k * pi / 4)));
}

TEST_CASE("minimum distance") {
  CHECK(min_distance(make_psk(2)) == doctest::Approx(2.0).epsilon(1e-15));
  const auto s4 = scheme1_sets(4);
  CHECK(min_distance(s4[1]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(min_distance(make_psk(4)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  // Scheme 1: |1 - e^{j(pi + pi/2^p)}| = 2 cos(pi / 2^{p+1}), so Phi_1 is the
  // closest-packed set and d_min grows towards 2 with p.
  for (unsigned m : {4u, 8u, 16u, 32u}) {
    const auto sets = scheme1_sets(m);
    for (std::size_t p = 1; p < sets.size(); ++p) {
      CHECK(min_distance(sets[p]) ==
            doctest::Approx(2.0 * std::cos(pi / std::pow(2.0, double(p + 1)))).epsilon(1e-14));
      CHECK(min_distance(sets[p]) >= min_distance(sets[1]) - 1e-15);
      if (p >= 2) CHECK(min_distance(sets[p]) > min_distance(sets[p - 1]));
    }
  }
  const ConstellationSet singleton(CVector{1.0}, {0});
  try {
    min_distance(singleton);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::undefined_distance);
  }
}

TEST_CASE("Q function") {
  CHECK(q_function(0.0) == 0.5);
  const double q1 = q_by_quadrature(1.0);
  CHECK(q1 == doctest::Approx(0.158655).epsilon(1e-5));
  CHECK(q_function(1.0) == doctest::Approx(q1).epsilon(1e-10));
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    CHECK(q_function(x) + q_function(-x) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q_function(x + 0.25) < q_function(x));
  }
  CHECK(q_function(2.5) == doctest::Approx(q_by_quadrature(2.5)).epsilon(1e-9));
}

TEST_CASE("per-set error probability") {
  CHECK(set_error_prob(make_psk(2), 2.0) == doctest::Approx(q_function(1.0)).epsilon(1e-15));
  const auto s4 = scheme1_sets(4);
  for (double n0 : {0.01, 0.1, 0.5, 1.0, 4.0, 100.0}) {
    CHECK(set_error_prob(s4[1], n0) > set_error_prob(s4[0], n0));
  }
  CHECK(set_error_prob(make_psk(2), 1e12) == doctest::Approx(0.5).epsilon(1e-5));
  try {
    set_error_prob(make_psk(4), 1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_cardinality);
  }
}

TEST_CASE("ConstellationSet validates its invariants") {
  CHECK_THROWS_AS(ConstellationSet(CVector{1.0, 2.0}, {0, 1}), Error);          // modulus
  CHECK_THROWS_AS(ConstellationSet(CVector{1.0, 1.0}, {0, 1}), Error);          // distinct
  CHECK_THROWS_AS(ConstellationSet(CVector{1.0, -1.0}, {0, 0}), Error);         // bijection
  CHECK_THROWS_AS(ConstellationSet(CVector{1.0, -1.0, {0, 1}}, {0, 1, 2}), Error);  // size
  const auto s = make_psk(8);
  for (auto p : s.points()) CHECK(std::abs(std::abs(p) - 1.0) < 1e-12);
  CHECK(s.nearest(cdouble(0.9, 0.05)) == 0);
  // Equidistant from both BPSK points: lowest index wins.
  CHECK(make_psk(2).nearest(cdouble(0.0, 0.0)) == 0);
}
