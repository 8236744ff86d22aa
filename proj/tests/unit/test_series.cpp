#include <doctest.h>

#include <random>
#include <vector>

#include "qks/series.hpp"

using namespace qks;

namespace {

// Power-series coefficients of num/den by integer long division.
std::vector<long> divide_integer(std::vector<long> num, const std::vector<long>& den, int d) {
  std::vector<long> out;
  num.resize(static_cast<std::size_t>(d) + 1 + den.size(), 0);
  for (int k = 0; k <= d; ++k) {
    long c = num[static_cast<std::size_t>(k)] / den[0];
    out.push_back(c);
    for (std::size_t j = 0; j < den.size(); ++j) num[static_cast<std::size_t>(k) + j] -= c * den[j];
  }
  return out;
}

std::vector<long> mul_int(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<long> one_minus_int(int k) {
  std::vector<long> p(static_cast<std::size_t>(k) + 1, 0);
  p[0] = 1;
  p[static_cast<std::size_t>(k)] -= 1;
  return p;
}

std::vector<long> as_longs(const std::vector<Cyclotomic>& v) {
  std::vector<long> out;
  for (const auto& c : v) {
    REQUIRE(c.is_rational());
    REQUIRE(c.rational_value().get_den() == 1);
    out.push_back(c.rational_value().get_num().get_si());
  }
  return out;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("polynomial arithmetic strips trailing zeros") {
    PolynomialT p({Cyclotomic(1), Cyclotomic(2), Cyclotomic(0)});
    CHECK(p.degree() == 1);
    CHECK((p - p).is_zero());
    CHECK((PolynomialT::one_minus(1) * PolynomialT::one_minus(1)).to_string() == "1 - 2*t + t^2");
  }

  TEST_CASE("series_expand of 1/(1-t)") {
    RationalFunctionSeries f(PolynomialT::constant(Cyclotomic(1)), PolynomialT::one_minus(1));
    CHECK(as_longs(series_expand(f, 3)) == std::vector<long>{1, 1, 1, 1});
  }

  TEST_CASE("series_expand matches integer long division") {
    RationalFunctionSeries f(PolynomialT::one_minus(4), product_one_minus({2, 2, 2}));
    auto got = as_longs(series_expand(f, 4));
    // (1 + t^2)/(1 - t^2)^2 = 1 + 3t^2 + 5t^4 + ...
    CHECK(got == std::vector<long>{1, 0, 3, 0, 5});
    auto oracle = divide_integer(one_minus_int(4), mul_int(mul_int(one_minus_int(2), one_minus_int(2)), one_minus_int(2)), 4);
    CHECK(got == oracle);
  }

  TEST_CASE("cross-multiplication equality") {
    RationalFunctionSeries a(PolynomialT::one_minus(2), product_one_minus({1, 2}));
    RationalFunctionSeries b(PolynomialT::constant(Cyclotomic(1)), PolynomialT::one_minus(1));
    CHECK(a == b);
    CHECK_FALSE(a == RationalFunctionSeries(PolynomialT::constant(Cyclotomic(2)), PolynomialT::one_minus(1)));
    CHECK(a + b == RationalFunctionSeries(PolynomialT::constant(Cyclotomic(2)), PolynomialT::one_minus(1)));
    CHECK(a * b == RationalFunctionSeries(PolynomialT::constant(Cyclotomic(1)), product_one_minus({1, 1})));
  }

  TEST_CASE("det(I - alpha t) by characteristic polynomial") {
    Matrix a = dihedral_representation(3)[4];
    auto p = det_one_minus_t(a);
    // reflection with a 2-cycle and a -1: (1 - t^2)(1 + t)
    CHECK(p == PolynomialT::one_minus(2) * PolynomialT({Cyclotomic(1), Cyclotomic(1)}));
    CHECK(determinant(a) == Cyclotomic(1));
  }

  TEST_CASE("Molien for the trivial group") {
    for (int n = 1; n <= 4; ++n) CHECK(molien_series(trivial_representation(n)) == trivial_closed_form(n));
  }

  TEST_CASE("Molien for the cyclic 2-dim representation") {
    for (int m = 2; m <= 5; ++m) {
      auto f = molien_series(cyclic_representation(m));
      CHECK(f == cyclic_closed_form(m));
      auto counts = invariant_dimensions(cyclic_representation(m), 12);
      CHECK(compare_with_counts(f, counts));
    }
  }

  TEST_CASE("Molien for the dihedral 3-dim representation") {
    for (int m : {2, 3}) {
      auto rep = dihedral_representation(m);
      auto f = molien_series(rep);
      CHECK(f == dihedral_closed_form(m));
      auto counts = invariant_dimensions(rep, m == 2 ? 10 : 12);
      CHECK(compare_with_counts(f, counts));
      auto perturbed = counts;
      perturbed.back() += 1;
      CHECK_FALSE(compare_with_counts(f, perturbed));
    }
    // D2 up to degree 6 against the closed form expansion by integer division
    auto counts = invariant_dimensions(dihedral_representation(2), 6);
    auto oracle = divide_integer(one_minus_int(6),
                                 mul_int(mul_int(mul_int(one_minus_int(2), one_minus_int(2)), one_minus_int(2)), one_minus_int(3)), 6);
    CHECK(counts == oracle);
  }

  TEST_CASE("Molien expansions are nonnegative with the averaging identities") {
    std::vector<std::vector<Matrix>> groups;
    for (int m = 1; m <= 5; ++m) groups.push_back(cyclic_representation(m));
    for (int m = 1; m <= 4; ++m) groups.push_back(dihedral_representation(m));
    for (int n = 1; n <= 3; ++n) groups.push_back(trivial_representation(n));
    for (const auto& g : groups) {
      auto s = as_longs(series_expand(molien_series(g), 20));
      CHECK(s[0] == 1);
      for (long c : s) CHECK(c >= 0);
      auto fixed = invariant_dimensions(g, 1);
      CHECK(s[1] == fixed[1]);
    }
  }

  TEST_CASE("Molien rejects bad inputs") {
    auto rep = dihedral_representation(3);
    rep.pop_back();
    CHECK_THROWS_AS(molien_series(rep), std::invalid_argument);
    Matrix z(2, std::vector<Cyclotomic>(2));
    CHECK_THROWS_AS(molien_series({identity_matrix(2), z}), std::invalid_argument);
  }
}
