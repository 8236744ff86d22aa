// Acceptance suite: one pass/fail line per criterion, nonzero exit if any fails.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qks/catalog.hpp"
#include "qks/fiber.hpp"
#include "qks/linalg.hpp"
#include "qks/series.hpp"
#include "qks/skewring.hpp"
#include "qks/workbench.hpp"
#include "test_rng.hpp"

using namespace qks;
using qks::testing::random_cyclotomic;
using qks::testing::random_poly;

namespace {

// Collects failed expectations of one criterion.
struct Checker {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

NCPoly mono(const AlgebraPtr& a, int i, int j) { return NCPoly::monomial(a, i, j); }

SkewElement sk(const RingPtr& r, const NCPoly& a, GroupElement f = {}) { return SkewElement::term(r, a, f); }

std::map<int, std::size_t> dims_of(const std::vector<GradedSkewPiece>& pieces) {
  std::map<int, std::size_t> out;
  for (const auto& p : pieces) out[p.degree] = p.basis.size();
  return out;
}

// Monomial count of prod g_i^{e_i} in degree d for generator degrees `degs`, d <= top.
std::map<int, std::size_t> free_commutative_dims(const std::vector<int>& degs, int top) {
  std::vector<std::size_t> c(static_cast<std::size_t>(top) + 1, 0);
  c[0] = 1;
  for (int g : degs) {
    for (int d = g; d <= top; ++d) c[static_cast<std::size_t>(d)] += c[static_cast<std::size_t>(d - g)];
  }
  std::map<int, std::size_t> out;
  for (int d = 0; d <= top; ++d) {
    if (c[static_cast<std::size_t>(d)]) out[d] = c[static_cast<std::size_t>(d)];
  }
  return out;
}

bool only_identity_component(const std::vector<GradedSkewPiece>& pieces) {
  for (const auto& p : pieces) {
    for (const auto& x : p.basis) {
      if (x.coeffs().size() != 1 || x.coeffs().begin()->first != GroupElement{}) return false;
    }
  }
  return true;
}

// X-outer case: Z(T) = Z(A)^G, compared with the free algebra on the listed central generators.
void outer_center(Checker& ck, const std::string& name, const RingPtr& t, const CentralPresentation& p,
                  const std::vector<int>& degs, int window) {
  auto zc = center_basis(t, window);
  ck.expect(dims_of(zc) == free_commutative_dims(degs, window), name + ": center dims differ from generators");
  ck.expect(only_identity_component(zc), name + ": center leaves A");
  if (!p.generators.empty()) {
    auto rep = verify_generating_set(p, t, window);
    ck.expect(rep.ok, name + ": " + rep.failure);
  }
}

void criterion_centers(Checker& ck) {
  const int window = 8;
  auto M = AlgebraSpec::quantum_plane(Cyclotomic(-1));
  {
    auto T = SkewRing::make(M, GroupSpec::symmetric2());
    CentralPresentation p;
    p.add_generator("x", sk(T, mono(M, 2, 0) + mono(M, 0, 2)));
    p.add_generator("y", sk(T, mono(M, 2, 2)));
    outer_center(ck, "k_-1#S2", T, p, {2, 4}, window);
  }
  {
    auto T = SkewRing::make(M, GroupSpec::dihedral(3, Cyclotomic::root_of_unity(1, 3)));
    CentralPresentation p;
    p.add_generator("x", sk(T, mono(M, 2, 2)));
    p.add_generator("y", sk(T, mono(M, 6, 0) + mono(M, 0, 6)));
    outer_center(ck, "k_-1#D3", T, p, {4, 6}, window);
  }
  {
    auto J = AlgebraSpec::jordan_plane();
    auto T = SkewRing::make(J, GroupSpec::cyclic(2, Cyclotomic(-1)));
    outer_center(ck, "k_J#C2", T, CentralPresentation{}, {}, window);
  }
  {
    // g^2 acts inner: the center gains z with a group component.
    auto T = SkewRing::make(M, GroupSpec::dihedral(4, Cyclotomic::root_of_unity(1, 4)));
    auto p = dihedral_even_presentation(T, 4);
    auto rep = verify_generating_set(p, T, window);
    ck.expect(rep.ok, "k_-1#D4: " + rep.failure);
    for (const auto& g : p.generators) ck.expect(is_central(g.element), "k_-1#D4: " + g.name + " not central");
  }
  {
    // Inner C2 on the quantum torus: Z(T) = Z(A)[(eta^-1 g)^{+-1}] with eta = uv.
    auto A = AlgebraSpec::quantum_plane(Cyclotomic(-1), true, true);
    auto T = SkewRing::make(A, GroupSpec::cyclic(2, Cyclotomic(-1)));
    auto zc = center_basis(T, window);
    Window w = make_window(*A, window);
    auto c = sk(T, mono(A, 1, 1).monomial_inverse(), {1, 0});
    auto cinv = sk(T, mono(A, 1, 1), {1, 0});
    ck.expect(is_central(c), "torus#C2: eta^-1 g not central");
    ck.expect(c * cinv == SkewElement::scalar(T, Cyclotomic(1)), "torus#C2: inverse");
    std::map<int, std::vector<SkewElement>> described;
    for (int a = w.u_min; a <= w.u_max; ++a) {
      for (int b = w.v_min; b <= w.v_max; ++b) {
        if (a % 2 || b % 2) continue;  // Z(A) = k[u^{+-2}, v^{+-2}]
        auto z = sk(T, mono(A, a, b));
        for (int e = -window; e <= window; ++e) {
          auto x = z * (e >= 0 ? c.pow(e) : cinv.pow(-e));
          bool inside = true;
          int deg = 0;
          for (const auto& [f, poly] : x.coeffs()) {
            for (const auto& [m, k] : poly.terms()) {
              inside = inside && w.contains(m);
              deg = m.degree();
            }
          }
          if (inside) described[deg].push_back(x);
        }
      }
    }
    for (const auto& piece : zc) {
      std::map<std::pair<GroupElement, Monomial>, std::size_t> index;
      auto coords = [&](const SkewElement& x) {
        for (const auto& [f, poly] : x.coeffs())
          for (const auto& [m, k] : poly.terms()) index.emplace(std::make_pair(f, m), index.size());
      };
      for (const auto& x : piece.basis) coords(x);
      for (const auto& x : described[piece.degree]) coords(x);
      auto vec = [&](const SkewElement& x) {
        DenseVector v = zero_vector(index.size());
        for (const auto& [f, poly] : x.coeffs())
          for (const auto& [m, k] : poly.terms()) v[index.at({f, m})] = k;
        return v;
      };
      std::vector<DenseVector> desc, both;
      for (const auto& x : described[piece.degree]) desc.push_back(vec(x));
      both = desc;
      for (const auto& x : piece.basis) both.push_back(vec(x));
      std::size_t rd = rank_of(desc, index.size());
      ck.expect(rd == piece.basis.size() && rank_of(both, index.size()) == rd,
                "torus#C2: degree " + std::to_string(piece.degree) + " differs from Z(A)[(eta^-1 g)^{+-1}]");
    }
  }
}

void criterion_example(Checker& ck) {
  auto c = make_case({"0", 0, 0, std::nullopt, Localization::none});
  auto generic = fiber_report(c, {{"s", Cyclotomic(3)}, {"p", Cyclotomic(2)}});
  ck.expect(generic.certificate.to_string() == "CentralSimple(2)", "generic fiber: " + generic.certificate.to_string());
  auto special = fiber_report(c, {{"s", Cyclotomic(2)}, {"p", Cyclotomic(1)}});
  ck.expect(special.fiber_dim == 4, "degenerate fiber dim");
  ck.expect(special.certificate.trace_rank == 2, "degenerate trace rank");
  ck.expect(special.radical_dim == 2, "degenerate radical dim");
  ck.expect(special.semisimple_center_dim == 2, "degenerate semisimple center dim");
  ck.expect(!special.certificate.central_simple, "degenerate fiber certified");
}

void criterion_molien(Checker& ck) {
  for (int m : {2, 3}) {
    auto r = series_check("dihedral", m, 12);
    ck.expect(r.closed_form_equal, "m=" + std::to_string(m) + ": Molien series differs from closed form");
    ck.expect(r.counts_match, "m=" + std::to_string(m) + ": expansion differs from invariant counts");
    int n = 2 * m;
    auto M = AlgebraSpec::quantum_plane(Cyclotomic(-1));
    auto T = SkewRing::make(M, GroupSpec::dihedral(n, Cyclotomic::root_of_unity(1, n)));
    auto p = dihedral_even_presentation(T, n);
    for (const auto& g : p.generators) ck.expect(is_central(g.element), g.name + " not central");
    for (const auto& rel : p.relations) ck.expect(evaluate_relation(p, rel, T).is_zero(), "relation fails");
  }
}

void criterion_scans(Checker& ck) {
  std::vector<CaseParams> cases{{"i", 2, 2, std::nullopt, Localization::torus},
                                {"i", 3, 2, std::nullopt, Localization::torus},
                                {"i", 2, 4, std::nullopt, Localization::torus},
                                {"ii", 0, 0, std::nullopt, Localization::torus_denominator},
                                {"iii", 2, 0, std::nullopt, Localization::torus},
                                {"iii", 3, 0, std::nullopt, Localization::torus_denominator}};
  for (const auto& params : cases) {
    auto c = make_case(params);
    auto r = azumaya_scan(c, 25, 2024);
    std::size_t certified = 0;
    for (const auto& p : r.points) certified += p.certificate.central_simple;
    ck.expect(certified >= 25 && certified == r.points.size(), c.label + ": " + r.verdict);
    ck.expect(c.expected_d && r.verdict == "azumaya-consistent(" + std::to_string(*c.expected_d) + ")",
              c.label + ": verdict " + r.verdict);
    if (!c.expected_d || r.points.empty()) continue;
    long d = r.points.front().certificate.d;
    long g = c.group.order();
    long k = params.id == "i" ? params.k : 2;  // q = -1 in cases ii and iii
    if (c.x_outer) ck.expect(d * d == g * g * k * k, c.label + ": d^2 != |G|^2 k^2");
  }
}

void criterion_negative(Checker& ck) {
  struct Pair {
    CaseParams without, with;
  };
  for (const auto& pr : {Pair{{"0", 0, 0, std::nullopt, Localization::none}, {"0", 0, 0, std::nullopt, Localization::denominator}},
                         Pair{{"ii", 0, 0, std::nullopt, Localization::torus},
                              {"ii", 0, 0, std::nullopt, Localization::torus_denominator}}}) {
    auto bad = make_case(pr.without);
    auto fr = freeness_scan(bad, 10, 5);
    bool witnessed = false;
    for (const auto& p : fr.points) {
      if (p.stabilizer.size() > 1 && p.certificate && !p.certificate->central_simple) witnessed = true;
    }
    ck.expect(fr.verdict == "not-free", bad.label + ": freeness verdict " + fr.verdict);
    ck.expect(witnessed, bad.label + ": no stabilized point with a failing fiber");
    ck.expect(fr.azumaya_agreement, bad.label + ": stabilizers and certificates disagree");
    auto good = make_case(pr.with);
    auto gf = freeness_scan(good, 10, 5);
    auto gs = azumaya_scan(good, 10, 5);
    ck.expect(gf.verdict == "free" && gs.verdict.rfind("azumaya-consistent", 0) == 0,
              good.label + ": " + gf.verdict + " / " + gs.verdict);
  }
}

void criterion_inner_rank(Checker& ck) {
  auto a = make_case({"i", 1, 2, std::nullopt, Localization::torus});
  auto t = make_case({"i", 2, 2, std::nullopt, Localization::torus});
  ValuePool pool(2, 42);
  int matched = 0;
  while (matched < 10) {
    Cyclotomic alpha = pool.draw(), beta = pool.draw();
    // the point (U, W) of Z(T) lies over (U, W^2) of Z(A)
    auto va = complete_point(a, {{"U", alpha}, {"W", beta * beta}});
    auto vt = complete_point(t, {{"U", alpha}, {"W", beta}});
    auto fa = build_fiber(a.ring, a.presentation, va, a.recipe(va));
    auto ft = build_fiber(t.ring, t.presentation, vt, t.recipe(vt));
    ck.expect(fa.dim == ft.dim, "fiber dims " + std::to_string(fa.dim) + " != " + std::to_string(ft.dim));
    ck.expect(matrix_algebra_certificate(fa).central_simple && matrix_algebra_certificate(ft).central_simple,
              "matched fiber not central simple");
    ++matched;
  }
}

void criterion_auslander(Checker& ck) {
  for (const char* id : {"ii", "iv"}) {
    auto r = auslander_check(make_case({id, 0, 0, std::nullopt, Localization::none}), 4, 6);
    ck.expect(r.verdict == "agree", std::string(id) + ": " + r.verdict);
    for (const auto& row : r.degrees) {
      ck.expect(row.stable && row.injective && row.agree,
                std::string(id) + ": degree " + std::to_string(row.degree));
    }
  }
}

void criterion_kernel(Checker& ck) {
  std::mt19937_64 rng(7);
  // field axioms
  for (long n : {1L, 3L, 4L, 5L, 8L, 12L}) {
    for (int t = 0; t < 60; ++t) {
      auto a = random_cyclotomic(rng, n), b = random_cyclotomic(rng, n), c = random_cyclotomic(rng, n);
      bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * b == b * a &&
                a * (b + c) == a * b + a * c && a - a == Cyclotomic(0);
      if (!a.is_zero()) ok = ok && a * a.inverse() == Cyclotomic(1);
      ck.expect(ok, "field axioms at conductor " + std::to_string(n));
    }
  }
  // rewrite associativity and automorphism multiplicativity
  struct Setup {
    AlgebraPtr a;
    GroupSpec g;
    long conductor;
  };
  std::vector<Setup> setups{
      {AlgebraSpec::quantum_plane(Cyclotomic(-1)), GroupSpec::symmetric2(), 2},
      {AlgebraSpec::quantum_plane(Cyclotomic::root_of_unity(1, 3), true, true),
       GroupSpec::cyclic(3, Cyclotomic::root_of_unity(1, 3)), 3},
      {AlgebraSpec::quantum_plane(Cyclotomic(-1), true, true), GroupSpec::dihedral(3, Cyclotomic::root_of_unity(1, 3)), 6},
      {AlgebraSpec::jordan_plane(), GroupSpec::cyclic(2, Cyclotomic(-1)), 2},
      {AlgebraSpec::quantum_plane(Cyclotomic(Rational(2, 3))), GroupSpec::cyclic(4, Cyclotomic::root_of_unity(1, 4)), 4}};
  for (const auto& s : setups) {
    for (int t = 0; t < 25; ++t) {
      auto x = random_poly(rng, s.a, s.conductor), y = random_poly(rng, s.a, s.conductor),
           z = random_poly(rng, s.a, s.conductor);
      ck.expect((x * y) * z == x * (y * z), s.a->describe() + ": product not associative");
      for (const auto& f : s.g.elements()) {
        ck.expect(apply_automorphism(s.g, f, x * y) == apply_automorphism(s.g, f, x) * apply_automorphism(s.g, f, y),
                  s.a->describe() + ": automorphism " + s.g.name(f) + " not multiplicative");
      }
    }
  }
  // Molien nonnegativity
  std::vector<std::vector<Matrix>> reps;
  for (int m = 2; m <= 5; ++m) reps.push_back(dihedral_representation(m));
  for (int m = 2; m <= 6; ++m) reps.push_back(cyclic_representation(m));
  for (const auto& rep : reps) {
    for (const auto& c : series_expand(molien_series(rep), 20)) {
      ck.expect(c.is_rational() && c.rational_value() >= 0 && c.rational_value().get_den() == 1,
                "Molien coefficient " + c.to_string());
    }
  }
  // fiber associativity
  for (const auto& params : catalog_cases()) {
    auto c = make_case(params);
    if (!c.pointwise) continue;
    ValuePool pool(c.conductor, rng());
    for (int t = 0; t < 3; ++t) {
      auto p = sample_point(c, pool);
      if (!p) {
        ck.expect(false, c.label + ": no admissible point");
        continue;
      }
      auto f = build_fiber(c.ring, c.presentation, p->values, c.recipe(p->values));
      ck.expect(is_associative(f, 16, 300, rng()) && is_unital(f), c.label + ": fiber not associative");
    }
  }
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<void(Checker&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "fiber dichotomy for k[u,v] # S2", 1, criterion_example},
      {2, "centers of the skew group rings up to window 8", 30, criterion_centers},
      {3, "dihedral Molien series, invariant counts and central relation", 60, criterion_molien},
      {4, "seeded Azumaya scans with a single d per case", 300, criterion_scans},
      {5, "negative control without the freeness localization", 30, criterion_negative},
      {6, "inner C2 fibers match the torus rank", 30, criterion_inner_rank},
      {7, "graded End_{A^G}(A) against A#G", 300, criterion_auslander},
      {8, "kernel property suite", 120, criterion_kernel},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Checker ck;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      std::ostringstream os;
      os << "took " << secs << " s, limit " << c.limit_seconds << " s";
      ck.failures.push_back(os.str());
    }
    bool ok = ck.failures.empty();
    failed += !ok;
    std::cout << "criterion " << c.number << ": " << (ok ? "PASS" : "FAIL") << "  " << c.name << "  ("
              << std::fixed << std::setprecision(2) << secs << " s)\n";
    for (const auto& f : ck.failures) std::cout << "    " << f << "\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
