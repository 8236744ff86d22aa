#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qks/ncalgebra.hpp"
#include "qks/scalar.hpp"

namespace qks::testing {

inline Cyclotomic random_cyclotomic(std::mt19937_64& rng, long conductor, int height = 5) {
  int deg = static_cast<int>(euler_phi(conductor));
  std::vector<Rational> c(static_cast<std::size_t>(deg));
  for (auto& x : c) {
    long num = static_cast<long>(rng() % (2 * height + 1)) - height;
    long den = static_cast<long>(rng() % 3) + 1;
    x = Rational(num, den);
    x.canonicalize();
  }
  return Cyclotomic::from_coefficients(conductor, c);
}

inline NCPoly random_poly(std::mt19937_64& rng, const AlgebraPtr& a, long conductor, int terms = 3, int span = 2) {
  TermMap t;
  for (int k = 0; k < terms; ++k) {
    int lo_u = a->inverted_u() ? -span : 0;
    int lo_v = a->inverted_v() ? -span : 0;
    int ea = lo_u + static_cast<int>(rng() % static_cast<unsigned>(span - lo_u + 1));
    int eb = lo_v + static_cast<int>(rng() % static_cast<unsigned>(span - lo_v + 1));
    add_term(t, Monomial{ea, eb}, random_cyclotomic(rng, conductor, 3));
  }
  return NCPoly(a, std::move(t));
}

}  // namespace qks::testing
