#include "qks/catalog.hpp"

#include <numeric>
#include <set>

namespace qks {

std::string to_string(Localization l) {
  switch (l) {
    case Localization::none: return "none";
    case Localization::torus: return "torus";
    case Localization::denominator: return "denominator";
    case Localization::torus_denominator: return "torus+denominator";
  }
  return "none";
}

Localization parse_localization(const std::string& s) {
  if (s == "none") return Localization::none;
  if (s == "torus") return Localization::torus;
  if (s == "denominator") return Localization::denominator;
  if (s == "torus+denominator" || s == "tpd") return Localization::torus_denominator;
  throw usage_error("unknown localization '" + s + "' (none, torus, denominator, torus+denominator)");
}

namespace {

NCPoly mono(const AlgebraPtr& a, int i, int j, const Cyclotomic& c = Cyclotomic(1)) {
  return NCPoly::monomial(a, i, j, c);
}

SkewElement sk(const RingPtr& t, const NCPoly& a, const GroupElement& f = {}) { return SkewElement::term(t, a, f); }

TermMap terms_of(const NCPoly& p) { return p.terms(); }

Cyclotomic value_of(const CentralPresentation& p, const Values& v, const std::string& name) {
  return v.at(p.index_of(name));
}

std::vector<Cyclotomic> rule_vector(int k, std::initializer_list<std::pair<int, Cyclotomic>> entries) {
  std::vector<Cyclotomic> r(static_cast<std::size_t>(k));
  for (const auto& [i, c] : entries) r.at(static_cast<std::size_t>(i)) += c;
  return r;
}

FiberRecipe monomial_v_recipe(int ku, std::vector<Cyclotomic> u_rule, int kv, const Cyclotomic& coef, int uexp) {
  FiberRecipe r;
  r.k_u = ku;
  r.u_rule = std::move(u_rule);
  r.k_v = kv;
  r.v_kind = FiberRecipe::VRule::monomial;
  r.v_coef = coef;
  r.v_u_exponent = uexp;
  return r;
}

std::string params_label(const CaseSpec& c) {
  std::string s = c.params.id + "(";
  bool any = false;
  auto add = [&](const std::string& t) {
    if (any) s += ", ";
    s += t;
    any = true;
  };
  if (c.params.n) add("n=" + std::to_string(c.params.n));
  if (c.params.k) add("k=" + std::to_string(c.params.k));
  if (c.params.q) add("q=" + rational_to_string(*c.params.q));
  add(to_string(c.localization));
  return s + ")";
}

Localization pick(const CaseParams& p, Localization dflt, std::initializer_list<Localization> allowed) {
  Localization l = p.localization.value_or(dflt);
  for (auto a : allowed) {
    if (a == l) return l;
  }
  throw usage_error("localization " + to_string(l) + " is not available for case " + p.id);
}

void case0(CaseSpec& c) {
  c.localization = pick(c.params, Localization::denominator, {Localization::none, Localization::denominator});
  bool loc = c.localization == Localization::denominator;
  c.conductor = 1;
  auto base = AlgebraSpec::commutative();
  if (loc) base = AlgebraSpec::with_denominators(base, {terms_of(mono(base, 1, 0) - mono(base, 0, 1))});
  c.algebra = base;
  c.group = GroupSpec::symmetric2();
  c.ring = SkewRing::make(c.algebra, c.group);
  const auto& A = c.algebra;
  auto& p = c.presentation;
  p.add_generator("s", sk(c.ring, mono(A, 1, 0) + mono(A, 0, 1)));
  p.add_generator("p", sk(c.ring, mono(A, 1, 1)));
  if (loc) {
    p.add_generator("dinv", sk(c.ring, NCPoly::denominator_inverse(A, 0, 2)));
    p.relations.push_back(CommPoly::parse("dinv*s^2 - 4*dinv*p - 1", p.names()));
    c.derived.push_back({"dinv", CommPoly::parse("s^2 - 4*p", p.names()), true});
  }
  c.pointwise = true;
  c.x_outer = true;
  if (loc) c.expected_d = 2;
  c.parameters = {"a", "b"};
  c.base_center = CoordinateSystem{{"u", "v"}, {mono(A, 1, 0), mono(A, 0, 1)}};
  if (loc) c.base_nonvanishing.push_back(CommPoly::parse("u - v", {"u", "v"}));
  c.base_to_center = [](const Values& ab) {
    return std::map<std::string, Cyclotomic>{{"s", ab[0] + ab[1]}, {"p", ab[0] * ab[1]}};
  };
  c.lift = c.base_to_center;
  CentralPresentation pres = p;
  c.recipe = [pres](const Values& v) {
    Cyclotomic s = value_of(pres, v, "s"), pr = value_of(pres, v, "p");
    FiberRecipe r;
    r.k_u = 2;
    r.u_rule = {-pr, s};
    r.k_v = 2;
    r.v_kind = FiberRecipe::VRule::polynomial;
    r.v_rule = {-pr, s};
    return r;
  };
}

void case_i(CaseSpec& c) {
  const int n = c.params.n;
  if (n < 1) throw usage_error("case i needs --n >= 1");
  if (c.params.q) {
    c.localization = pick(c.params, Localization::none, {Localization::none, Localization::torus});
    const Rational& q = *c.params.q;
    if (q == 0 || q == 1 || q == -1) throw usage_error("rational q must differ from 0 and +-1");
    c.conductor = n;
    bool t = c.localization == Localization::torus;
    c.algebra = AlgebraSpec::quantum_plane(Cyclotomic(q), t, t);
    c.group = GroupSpec::cyclic(n, Cyclotomic::root_of_unity(1, n));
    c.ring = SkewRing::make(c.algebra, c.group);
    return;
  }
  const int k = c.params.k;
  if (k < 2) throw usage_error("case i needs --k >= 2 or a rational --q");
  c.localization = pick(c.params, Localization::torus, {Localization::none, Localization::torus});
  const long l = lcm_long(n, k);
  c.conductor = l;
  auto eps = Cyclotomic::root_of_unity(1, l);
  bool t = c.localization == Localization::torus;
  c.algebra = AlgebraSpec::quantum_plane(eps.pow(static_cast<int>(l / k)), t, t);
  c.group = GroupSpec::cyclic(n, eps.pow(static_cast<int>(l / n)));
  c.ring = SkewRing::make(c.algebra, c.group);
  if (!t) return;
  const auto& A = c.algebra;
  const auto& G = c.group;
  auto& p = c.presentation;
  const int L = static_cast<int>(l);
  GroupElement gk = G.normalize(static_cast<int>(l / k), 0);
  NCPoly uv = mono(A, 1, 1);
  p.add_generator("U", sk(c.ring, mono(A, L, 0)));
  p.add_inverse("U", sk(c.ring, mono(A, -L, 0)));
  p.add_generator("W", sk(c.ring, uv.pow(-static_cast<int>(l / n)), gk));
  p.add_inverse("W", SkewElement::group_element(c.ring, G.inverse(gk)) * sk(c.ring, uv.pow(static_cast<int>(l / n))));
  c.derived.push_back({"U_inv", p.var("U"), true});
  c.derived.push_back({"W_inv", p.var("W"), true});
  c.pointwise = true;
  c.x_outer = n > 1 && gcd_long(n, k) == 1;
  c.expected_d = L;
  c.parameters = {"U", "W"};
  c.lift = [](const Values& v) { return std::map<std::string, Cyclotomic>{{"U", v[0]}, {"W", v[1]}}; };
  // (uv)^k = ck u^k v^k
  const Cyclotomic ck = uv.pow(k).coefficient(Monomial{k, k});
  const int h = static_cast<int>(gcd_long(n, k));
  CentralPresentation pres = p;
  c.recipe = [pres, L, k, h, ck](const Values& v) {
    Cyclotomic alpha = value_of(pres, v, "U"), beta = value_of(pres, v, "W");
    return monomial_v_recipe(L, rule_vector(L, {{0, alpha}}), k, beta.pow(-h) / ck, -k);
  };
  if (c.x_outer) {
    c.base_center = CoordinateSystem{{"a", "b"}, {mono(A, k, 0), mono(A, 0, k)}};
    c.base_nonvanishing = {CommPoly::parse("a", {"a", "b"}), CommPoly::parse("b", {"a", "b"})};
    const int lk = static_cast<int>(l / k);
    c.base_to_center = [lk, ck](const Values& ab) {
      return std::map<std::string, Cyclotomic>{{"U", ab[0].pow(lk)}, {"W", (ck * ab[0] * ab[1]).inverse()}};
    };
  }
}

void case_ii(CaseSpec& c) {
  c.localization = pick(c.params, Localization::torus_denominator,
                        {Localization::none, Localization::torus, Localization::torus_denominator});
  c.conductor = 2;
  bool t = c.localization != Localization::none;
  bool den = c.localization == Localization::torus_denominator;
  auto base = AlgebraSpec::quantum_plane(Cyclotomic(-1), t, t);
  if (den) base = AlgebraSpec::with_denominators(base, {terms_of(mono(base, 2, 0) - mono(base, 0, 2))});
  c.algebra = base;
  c.group = GroupSpec::symmetric2();
  c.ring = SkewRing::make(c.algebra, c.group);
  if (!t) return;
  const auto& A = c.algebra;
  auto& p = c.presentation;
  p.add_generator("x", sk(c.ring, mono(A, 2, 2)));
  p.add_inverse("x", sk(c.ring, mono(A, -2, -2)));
  p.add_generator("y", sk(c.ring, mono(A, 2, 0) + mono(A, 0, 2)));
  c.derived.push_back({"x_inv", p.var("x"), true});
  if (den) {
    p.add_generator("e", sk(c.ring, NCPoly::denominator_inverse(A, 0, 2)));
    p.relations.push_back(CommPoly::parse("e*y^2 - 4*e*x - 1", p.names()));
    c.derived.push_back({"e", CommPoly::parse("y^2 - 4*x", p.names()), true});
    c.expected_d = 4;
  }
  c.pointwise = true;
  c.x_outer = true;
  c.parameters = {"a", "b"};
  c.base_center = CoordinateSystem{{"a", "b"}, {mono(A, 2, 0), mono(A, 0, 2)}};
  c.base_nonvanishing = {CommPoly::parse("a", {"a", "b"}), CommPoly::parse("b", {"a", "b"})};
  if (den) c.base_nonvanishing.push_back(CommPoly::parse("a - b", {"a", "b"}));
  c.base_to_center = [](const Values& ab) {
    return std::map<std::string, Cyclotomic>{{"x", ab[0] * ab[1]}, {"y", ab[0] + ab[1]}};
  };
  c.lift = c.base_to_center;
  CentralPresentation pres = p;
  c.recipe = [pres](const Values& v) {
    Cyclotomic x = value_of(pres, v, "x"), y = value_of(pres, v, "y");
    return monomial_v_recipe(4, rule_vector(4, {{0, -x}, {2, y}}), 2, x, -2);
  };
}

void case_iii(CaseSpec& c) {
  const int n = c.params.n;
  if (n < 2) throw usage_error("case iii needs --n >= 2");
  const bool odd = n % 2 == 1;
  if (odd) {
    c.localization = pick(c.params, Localization::torus_denominator,
                          {Localization::none, Localization::torus, Localization::torus_denominator});
  } else {
    c.localization = pick(c.params, Localization::torus, {Localization::none, Localization::torus});
  }
  c.conductor = lcm_long(n, odd ? 2 : 4);
  bool t = c.localization != Localization::none;
  bool den = c.localization == Localization::torus_denominator;
  auto base = AlgebraSpec::quantum_plane(Cyclotomic(-1), t, t);
  if (den) base = AlgebraSpec::with_denominators(base, {terms_of(mono(base, 2 * n, 0) - mono(base, 0, 2 * n))});
  c.algebra = base;
  c.group = GroupSpec::dihedral(n, Cyclotomic::root_of_unity(c.conductor / n, c.conductor));
  c.ring = SkewRing::make(c.algebra, c.group);
  if (!t) return;
  const auto& A = c.algebra;
  c.pointwise = true;
  if (odd) {
    auto& p = c.presentation;
    p.add_generator("x", sk(c.ring, mono(A, 2, 2)));
    p.add_inverse("x", sk(c.ring, mono(A, -2, -2)));
    p.add_generator("y", sk(c.ring, mono(A, 2 * n, 0) + mono(A, 0, 2 * n)));
    c.derived.push_back({"x_inv", p.var("x"), true});
    if (den) {
      p.add_generator("dinv", sk(c.ring, NCPoly::denominator_inverse(A, 0, 2)));
      std::string ns = std::to_string(n);
      p.relations.push_back(CommPoly::parse("dinv*y^2 - 4*dinv*x^" + ns + " - 1", p.names()));
      c.derived.push_back({"dinv", CommPoly::parse("y^2 - 4*x^" + ns, p.names()), true});
      c.expected_d = 4 * n;
    }
    c.x_outer = true;
    c.parameters = {"a", "b"};
    c.base_center = CoordinateSystem{{"a", "b"}, {mono(A, 2, 0), mono(A, 0, 2)}};
    c.base_nonvanishing = {CommPoly::parse("a", {"a", "b"}), CommPoly::parse("b", {"a", "b"})};
    if (den) c.base_nonvanishing.push_back(CommPoly::parse("a^" + std::to_string(n) + " - b^" + std::to_string(n), {"a", "b"}));
    c.base_to_center = [n](const Values& ab) {
      return std::map<std::string, Cyclotomic>{{"x", ab[0] * ab[1]}, {"y", ab[0].pow(n) + ab[1].pow(n)}};
    };
    c.lift = c.base_to_center;
    CentralPresentation pres = p;
    c.recipe = [pres, n](const Values& v) {
      Cyclotomic x = value_of(pres, v, "x"), y = value_of(pres, v, "y");
      return monomial_v_recipe(4 * n, rule_vector(4 * n, {{0, -x.pow(n)}, {2 * n, y}}), 2, x, -2);
    };
    return;
  }
  const int m = n / 2;
  c.presentation = dihedral_even_presentation(c.ring, n);
  auto& p = c.presentation;
  p.add_inverse("y", sk(c.ring, mono(A, -2, -2)));
  c.derived.push_back({"y_inv", p.var("y"), true});
  c.x_outer = false;
  c.expected_d = 2 * n;
  c.parameters = {"a", "c"};
  const Cyclotomic i = Cyclotomic::root_of_unity(1, 4);
  c.lift = [m, i](const Values& ac) {
    Cyclotomic a = ac[0], cc = ac[1];
    Cyclotomic b = cc * cc / a;
    Cyclotomic am = a.pow(m), bm = b.pow(m);
    return std::map<std::string, Cyclotomic>{
        {"x", i * (am + bm) / Cyclotomic(2)}, {"y", cc * cc}, {"z", (am - bm) * cc / Cyclotomic(2)}};
  };
  CentralPresentation pres = p;
  c.recipe = [pres, n, m, i](const Values& v) {
    Cyclotomic x = value_of(pres, v, "x"), y = value_of(pres, v, "y");
    // u^n + v^n = -2i x and u^n v^n = y^m
    Cyclotomic s = Cyclotomic(-2) * i * x;
    return monomial_v_recipe(2 * n, rule_vector(2 * n, {{0, -y.pow(m)}, {n, s}}), 2, y, -2);
  };
}

void case_iv(CaseSpec& c) {
  c.localization = pick(c.params, Localization::none, {Localization::none});
  c.conductor = 2;
  c.algebra = AlgebraSpec::jordan_plane();
  c.group = GroupSpec::cyclic(2, Cyclotomic(-1));
  c.ring = SkewRing::make(c.algebra, c.group);
}

}  // namespace

CentralPresentation dihedral_even_presentation(const RingPtr& ring, int n) {
  if (n % 2 != 0) throw std::invalid_argument("dihedral_even_presentation needs even n");
  const int m = n / 2;
  const auto& A = ring->algebra();
  const Cyclotomic half_i = Cyclotomic::root_of_unity(1, 4) / Cyclotomic(2);
  GroupElement gm = ring->group().normalize(m, 0);
  CentralPresentation p;
  p.add_generator("x", sk(ring, mono(A, n, 0) + mono(A, 0, n)).scaled(half_i));
  p.add_generator("y", sk(ring, mono(A, 2, 2)));
  p.add_generator("z", (sk(ring, mono(A, n + 1, 1), gm) - sk(ring, mono(A, 1, n + 1), gm)).scaled(half_i));
  p.relations.push_back(CommPoly::parse("x^2*y + y^" + std::to_string(m + 1) + " + z^2", p.names()));
  return p;
}

CaseSpec make_case(const CaseParams& params) {
  CaseSpec c;
  c.params = params;
  if (params.id == "0") case0(c);
  else if (params.id == "i") case_i(c);
  else if (params.id == "ii") case_ii(c);
  else if (params.id == "iii") case_iii(c);
  else if (params.id == "iv") case_iv(c);
  else throw usage_error("unknown case '" + params.id + "' (0, i, ii, iii, iv)");
  c.label = params_label(c);
  return c;
}

std::vector<CaseParams> catalog_cases() {
  return {
      {"0", 0, 0, std::nullopt, Localization::denominator},
      {"0", 0, 0, std::nullopt, Localization::none},
      {"i", 2, 2, std::nullopt, Localization::torus},
      {"i", 3, 2, std::nullopt, Localization::torus},
      {"i", 2, 4, std::nullopt, Localization::torus},
      {"ii", 0, 0, std::nullopt, Localization::torus_denominator},
      {"ii", 0, 0, std::nullopt, Localization::torus},
      {"iii", 2, 0, std::nullopt, Localization::torus},
      {"iii", 3, 0, std::nullopt, Localization::torus_denominator},
      {"iii", 3, 0, std::nullopt, Localization::torus},
      {"iv", 0, 0, std::nullopt, Localization::none},
  };
}

Values complete_point(const CaseSpec& c, const std::map<std::string, Cyclotomic>& given) {
  const auto& p = c.presentation;
  for (const auto& [name, v] : given) (void)p.index_of(name);
  const std::size_t n = p.generators.size();
  Values out(n);
  std::vector<bool> known(n, false);
  for (const auto& [name, v] : given) {
    out[p.index_of(name)] = v;
    known[p.index_of(name)] = true;
  }
  for (const auto& d : c.derived) {
    std::size_t idx = p.index_of(d.name);
    if (known[idx]) continue;
    for (const auto& [ex, coef] : d.expr.terms()) {
      for (std::size_t j = 0; j < ex.size(); ++j) {
        if (ex[j] && !known[j]) throw usage_error("value of " + d.name + " needs " + p.generators[j].name);
      }
    }
    Cyclotomic v = d.expr.evaluate(Values(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(d.expr.nvars())));
    if (d.inverse) {
      if (v.is_zero()) throw usage_error("value of " + d.name + " is the inverse of zero");
      v = v.inverse();
    }
    out[idx] = v;
    known[idx] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!known[i]) throw usage_error("missing value for generator " + p.generators[i].name);
  }
  return out;
}

std::optional<std::string> point_problem(const CaseSpec& c, const Values& v) {
  return point_violation(c.presentation, v);
}

ValuePool::ValuePool(long conductor, std::uint64_t seed) : conductor_(conductor), rng_(seed) {
  for (long num : {1, 2, 3, -1, -2, -3}) {
    for (long den : {1, 2, 3}) {
      Rational r(num, den);
      r.canonicalize();
      if (std::find(magnitudes_.begin(), magnitudes_.end(), r) == magnitudes_.end()) magnitudes_.push_back(r);
    }
  }
}

Cyclotomic ValuePool::draw() {
  const Rational& r = magnitudes_[next(magnitudes_.size())];
  long j = static_cast<long>(next(static_cast<std::uint64_t>(conductor_)));
  return Cyclotomic::root_of_unity(j, conductor_) * Cyclotomic(r);
}

std::optional<SampledPoint> sample_point(const CaseSpec& c, ValuePool& pool, int retries, std::string* last_problem) {
  if (!c.pointwise) throw usage_error("case " + c.label + " has no pointwise description");
  for (int attempt = 0; attempt < retries; ++attempt) {
    Values params;
    for (std::size_t k = 0; k < c.parameters.size(); ++k) params.push_back(pool.draw());
    try {
      Values v = complete_point(c, c.lift(params));
      auto problem = point_problem(c, v);
      if (!problem) return SampledPoint{std::move(params), std::move(v)};
      if (last_problem) *last_problem = *problem;
    } catch (const usage_error& e) {
      if (last_problem) *last_problem = e.what();
    }
  }
  return std::nullopt;
}

bool base_point_admissible(const CaseSpec& c, const Values& base) {
  for (const auto& r : c.base_nonvanishing) {
    if (r.evaluate(base).is_zero()) return false;
  }
  return true;
}

std::optional<Values> lift_base_point(const CaseSpec& c, const Values& base, std::string* problem) {
  if (!c.base_to_center) throw usage_error("case " + c.label + " has no base coordinates");
  if (!base_point_admissible(c, base)) {
    if (problem) *problem = "point lies outside the localization";
    return std::nullopt;
  }
  try {
    Values v = complete_point(c, c.base_to_center(base));
    if (auto why = point_problem(c, v)) {
      if (problem) *problem = *why;
      return std::nullopt;
    }
    return v;
  } catch (const usage_error& e) {
    if (problem) *problem = e.what();
    return std::nullopt;
  }
}

SeriesCase series_case(const std::string& kind, int m) {
  if (m < 1) throw usage_error("series parameter must be positive");
  std::string ms = std::to_string(m);
  if (kind == "dihedral") {
    return {"D" + ms + " on k[a,b,c]", dihedral_representation(m), dihedral_closed_form(m),
            "(1 - t^" + std::to_string(2 * (m + 1)) + ") / ((1 - t^2)^2 (1 - t^" + ms + ")(1 - t^" +
                std::to_string(m + 1) + "))"};
  }
  if (kind == "cyclic") {
    return {"C" + ms + " on k[u,v]", cyclic_representation(m), cyclic_closed_form(m),
            "(1 - t^" + std::to_string(2 * m) + ") / ((1 - t^2)(1 - t^" + ms + ")^2)"};
  }
  if (kind == "trivial") {
    return {"trivial group on k^" + ms, trivial_representation(m), trivial_closed_form(m), "1 / (1 - t)^" + ms};
  }
  throw usage_error("unknown representation '" + kind + "' (dihedral, cyclic, trivial)");
}

}  // namespace qks
