#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "qks/linalg.hpp"
#include "qks/skewring.hpp"

namespace qks::testing {

// dim of span(box) / span{(z - value) m inside the box}, computed without any reduction rules.
// Generators carrying formal denominators are skipped; the caller supplies enough of the others.
inline std::size_t windowed_fiber_dimension(const RingPtr& ring, const CentralPresentation& p,
                                            const std::vector<Cyclotomic>& values, int radius) {
  const auto& A = ring->algebra();
  const auto elements = ring->group().elements();
  const int lo_u = A->inverted_u() ? -radius : 0, hi_u = A->inverted_u() ? radius : 2 * radius;
  const int lo_v = A->inverted_v() ? -radius : 0, hi_v = A->inverted_v() ? radius : 2 * radius;
  std::map<std::tuple<int, int, GroupElement>, std::size_t> index;
  for (const auto& f : elements)
    for (int a = lo_u; a <= hi_u; ++a)
      for (int b = lo_v; b <= hi_v; ++b) index.emplace(std::make_tuple(a, b, f), index.size());
  const std::size_t dim = index.size();
  EchelonBasis span(dim);
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const SkewElement& z = p.generators[i].element;
    if (z.has_denominator()) continue;
    SkewElement r = z - SkewElement::scalar(ring, values[i]);
    for (const auto& [key, pos] : index) {
      (void)pos;
      auto [a, b, f] = key;
      SkewElement m = SkewElement::term(ring, NCPoly::monomial(A, a, b), f);
      SkewElement prod = r * m;
      DenseVector v(dim);
      bool inside = true;
      for (const auto& [g, c] : prod.coeffs()) {
        for (const auto& [mono, coef] : c.terms()) {
          auto it = index.find(std::make_tuple(mono.a, mono.b, g));
          if (it == index.end()) {
            inside = false;
            break;
          }
          v[it->second] += coef;
        }
        if (!inside) break;
      }
      if (inside) span.insert(std::move(v));
    }
  }
  return dim - span.rank();
}

}  // namespace qks::testing
