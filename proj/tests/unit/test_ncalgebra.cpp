#include <doctest.h>

#include <random>

#include "qks/ncalgebra.hpp"
#include "test_rng.hpp"

using namespace qks;
using qks::testing::random_poly;

namespace {

NCPoly mono(const AlgebraPtr& a, int i, int j, long c = 1) { return NCPoly::monomial(a, i, j, Cyclotomic(c)); }

}  // namespace

TEST_SUITE("ncalgebra") {

TEST_CASE("defining relations") {
  auto q = Cyclotomic::root_of_unity(1, 5);
  auto Q = AlgebraSpec::quantum_plane(q);
  CHECK(NCPoly::v(Q) * NCPoly::u(Q) == mono(Q, 1, 1).scaled(q));

  auto J = AlgebraSpec::jordan_plane();
  CHECK(NCPoly::v(J) * NCPoly::u(J) == mono(J, 1, 1) + mono(J, 2, 0));

  auto JL = AlgebraSpec::jordan_plane(true);
  CHECK(NCPoly::v(JL) * mono(JL, -1, 0) == mono(JL, -1, 1) - mono(JL, 0, 0));

  auto C = AlgebraSpec::commutative();
  CHECK(NCPoly::v(C) * NCPoly::u(C) == mono(C, 1, 1));
  CHECK_THROWS_AS(NCPoly::u(C) * NCPoly::u(J), algebra_mismatch);
  CHECK_THROWS(mono(C, -1, 0));
  CHECK_THROWS(AlgebraSpec::quantum_plane(Cyclotomic(0)));
}

TEST_CASE("quantum torus inverses") {
  auto Q = AlgebraSpec::quantum_plane(Cyclotomic(-1), true, true);
  auto uv = mono(Q, 1, 1);
  CHECK(uv * uv.monomial_inverse() == NCPoly::scalar(Q, Cyclotomic(1)));
  CHECK(uv.pow(-2) * uv.pow(2) == NCPoly::scalar(Q, Cyclotomic(1)));
  auto P = AlgebraSpec::quantum_plane(Cyclotomic(-1));
  CHECK_THROWS_AS(mono(P, 1, 0).monomial_inverse(), not_invertible);
}

TEST_CASE("graded components") {
  auto C = AlgebraSpec::commutative();
  auto x = mono(C, 1, 1) + mono(C, 3, 0);
  CHECK(graded_component(x, 2) == mono(C, 1, 1));
  CHECK(graded_component(x, 1).is_zero());
  auto J = AlgebraSpec::jordan_plane();
  auto vu = NCPoly::v(J) * NCPoly::u(J);
  NCPoly sum(J);
  for (int d = 0; d <= 4; ++d) sum += graded_component(vu, d);
  CHECK(sum == vu);
}

TEST_CASE("group multiplication") {
  auto D3 = GroupSpec::dihedral(3, Cyclotomic::root_of_unity(1, 3));
  CHECK(group_multiply(D3, {1, 1}, {1, 0}) == GroupElement{0, 1});
  auto C4 = GroupSpec::cyclic(4, Cyclotomic::root_of_unity(1, 4));
  CHECK(group_multiply(C4, {3, 0}, {2, 0}) == GroupElement{1, 0});
  auto D4 = GroupSpec::dihedral(4, Cyclotomic::root_of_unity(1, 4));
  for (const auto& x : D4.elements()) {
    CHECK(group_multiply(D4, D4.identity(), x) == x);
    CHECK(group_multiply(D4, x, D4.inverse(x)) == D4.identity());
  }
  CHECK(D4.order() == 8);
  CHECK_THROWS(GroupSpec::cyclic(4, Cyclotomic(-1)));
}

TEST_CASE("automorphism examples") {
  long n = 5;
  auto w = Cyclotomic::root_of_unity(1, n);
  auto Q = AlgebraSpec::quantum_plane(Cyclotomic::root_of_unity(2, n));
  auto Cn = GroupSpec::cyclic(static_cast<int>(n), w);
  CHECK(apply_automorphism(Cn, {1, 0}, mono(Q, 2, 1)) == mono(Q, 2, 1).scaled(w));

  auto M = AlgebraSpec::quantum_plane(Cyclotomic(-1));
  auto S2 = GroupSpec::symmetric2();
  CHECK(apply_automorphism(S2, {0, 1}, mono(M, 1, 1)) == -mono(M, 1, 1));
  auto x = mono(M, 3, 1) + mono(M, 0, 2, 7);
  CHECK(apply_automorphism(S2, S2.identity(), x) == x);
}

TEST_CASE("action well-definedness") {
  auto q = Cyclotomic::root_of_unity(1, 6);
  CHECK(check_action_well_defined(AlgebraSpec::quantum_plane(q), GroupSpec::cyclic(4, Cyclotomic::root_of_unity(1, 4))));
  CHECK(check_action_well_defined(AlgebraSpec::quantum_plane(Cyclotomic(-1)),
                                  GroupSpec::dihedral(3, Cyclotomic::root_of_unity(1, 3))));
  CHECK_FALSE(check_action_well_defined(AlgebraSpec::quantum_plane(q), GroupSpec::symmetric2()));
  CHECK_FALSE(check_action_well_defined(AlgebraSpec::quantum_plane(Cyclotomic(2)), GroupSpec::symmetric2()));
  CHECK(check_action_well_defined(AlgebraSpec::quantum_plane(Cyclotomic(-1)), GroupSpec::symmetric2()));
  CHECK_FALSE(check_action_well_defined(AlgebraSpec::jordan_plane(), GroupSpec::symmetric2()));
  CHECK(check_action_well_defined(AlgebraSpec::jordan_plane(true), GroupSpec::cyclic(2, Cyclotomic(-1))));
  // swapping needs both variables inverted or neither
  CHECK_FALSE(check_action_well_defined(AlgebraSpec::commutative(true, false), GroupSpec::symmetric2()));
}

TEST_CASE("inner actions") {
  auto T = AlgebraSpec::quantum_plane(Cyclotomic(-1), true, true);
  auto C2 = GroupSpec::cyclic(2, Cyclotomic(-1));
  CHECK(check_inner_by(T, C2, {1, 0}, mono(T, 1, 1).monomial_inverse()));

  for (auto [n, k] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 4}, std::pair{4, 6}}) {
    long l = lcm_long(n, k);
    auto eps = Cyclotomic::root_of_unity(1, l);
    auto A = AlgebraSpec::quantum_plane(eps.pow(l / k), true, true);
    auto G = GroupSpec::cyclic(n, eps.pow(l / n));
    CHECK(check_inner_by(A, G, G.normalize(static_cast<int>(l / k), 0), mono(A, 1, 1).pow(static_cast<int>(l / n))));
  }

  auto JL = AlgebraSpec::jordan_plane(true);
  for (int k = -3; k <= 3; ++k) CHECK_FALSE(check_inner_by(JL, C2, {1, 0}, mono(JL, k, 0)));
  CHECK_THROWS_AS(check_inner_by(JL, C2, {1, 0}, NCPoly::v(JL)), not_invertible);
}

TEST_CASE("rewrite associativity and distributivity") {
  std::mt19937_64 rng(31337);
  std::vector<AlgebraPtr> algebras{
      AlgebraSpec::commutative(),
      AlgebraSpec::commutative(true, true),
      AlgebraSpec::quantum_plane(Cyclotomic(-1)),
      AlgebraSpec::quantum_plane(Cyclotomic::root_of_unity(1, 3), true, true),
      AlgebraSpec::quantum_plane(Cyclotomic(2), true, false),
      AlgebraSpec::jordan_plane(),
      AlgebraSpec::jordan_plane(true)};
  for (const auto& A : algebras) {
    auto one = NCPoly::scalar(A, Cyclotomic(1));
    for (int t = 0; t < 500; ++t) {
      auto x = random_poly(rng, A, 3);
      auto y = random_poly(rng, A, 3);
      auto z = random_poly(rng, A, 3);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(one * x == x);
      CHECK(x * one == x);
    }
  }
}

TEST_CASE("automorphisms are multiplicative and compose") {
  std::mt19937_64 rng(4242);
  struct Setup {
    AlgebraPtr a;
    GroupSpec g;
  };
  std::vector<Setup> setups{
      {AlgebraSpec::quantum_plane(Cyclotomic(-1)), GroupSpec::dihedral(4, Cyclotomic::root_of_unity(1, 4))},
      {AlgebraSpec::quantum_plane(Cyclotomic(-1), true, true), GroupSpec::dihedral(4, Cyclotomic::root_of_unity(1, 4))},
      {AlgebraSpec::quantum_plane(Cyclotomic::root_of_unity(1, 3)), GroupSpec::cyclic(6, Cyclotomic::root_of_unity(1, 6))},
      {AlgebraSpec::jordan_plane(true), GroupSpec::cyclic(2, Cyclotomic(-1))}};
  for (const auto& s : setups) {
    auto elems = s.g.elements();
    for (int t = 0; t < 60; ++t) {
      auto x = random_poly(rng, s.a, 12);
      auto y = random_poly(rng, s.a, 12);
      for (const auto& f : elems) {
        CHECK(apply_automorphism(s.g, f, x * y) == apply_automorphism(s.g, f, x) * apply_automorphism(s.g, f, y));
      }
      const auto& f = elems[rng() % elems.size()];
      const auto& f2 = elems[rng() % elems.size()];
      CHECK(apply_automorphism(s.g, f, apply_automorphism(s.g, f2, x)) ==
            apply_automorphism(s.g, group_multiply(s.g, f, f2), x));
    }
  }
}

TEST_CASE("grading is multiplicative") {
  std::mt19937_64 rng(5);
  auto J = AlgebraSpec::jordan_plane();
  for (int t = 0; t < 50; ++t) {
    auto x = random_poly(rng, J, 1);
    auto y = random_poly(rng, J, 1);
    for (int d = 0; d <= 8; ++d) {
      NCPoly cauchy(J);
      for (int i = 0; i <= d; ++i) cauchy += graded_component(x, i) * graded_component(y, d - i);
      CHECK(graded_component(x * y, d) == cauchy);
    }
  }
}

TEST_CASE("formal denominators") {
  auto base = AlgebraSpec::commutative();
  TermMap d{{Monomial{1, 0}, Cyclotomic(1)}, {Monomial{0, 1}, Cyclotomic(-1)}};
  auto A = AlgebraSpec::with_denominators(base, {d});
  auto inv = NCPoly::denominator_inverse(A, 0);
  auto diff = NCPoly::u(A) - NCPoly::v(A);
  CHECK(inv * diff == NCPoly::scalar(A, Cyclotomic(1)));
  auto S2 = GroupSpec::symmetric2();
  CHECK(apply_automorphism(S2, {0, 1}, inv) == -inv);
  CHECK(check_action_well_defined(A, S2));
  auto Q = AlgebraSpec::quantum_plane(Cyclotomic(-1));
  TermMap noncentral{{Monomial{1, 0}, Cyclotomic(1)}};
  CHECK_THROWS(AlgebraSpec::with_denominators(Q, {noncentral}));
}

}
