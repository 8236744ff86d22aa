#include "qks/skewring.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "qks/linalg.hpp"

namespace qks {

RingPtr SkewRing::make(AlgebraPtr algebra, GroupSpec group) {
  if (!check_action_well_defined(algebra, group)) {
    throw action_undefined(group.describe() + " does not act on " + algebra->describe());
  }
  return RingPtr(new SkewRing(std::move(algebra), std::move(group)));
}

std::string SkewRing::describe() const { return algebra_->describe() + " # " + group_.describe(); }

// ---------------------------------------------------------------- SkewElement

SkewElement::SkewElement(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("SkewElement needs a ring");
}

void SkewElement::put(const GroupElement& f, NCPoly a) {
  if (!ring_->group().contains(f)) throw std::invalid_argument("group element outside the group");
  auto it = coeffs_.find(f);
  if (it == coeffs_.end()) {
    if (!a.is_zero()) coeffs_.emplace(f, std::move(a));
    return;
  }
  it->second += a;
  if (it->second.is_zero()) coeffs_.erase(it);
}

SkewElement SkewElement::from_algebra(RingPtr ring, const NCPoly& a) {
  SkewElement x(std::move(ring));
  if (!a.algebra()->same_as(*x.ring_->algebra())) throw algebra_mismatch("coefficient from another algebra");
  x.put(GroupElement{}, a);
  return x;
}

SkewElement SkewElement::group_element(RingPtr ring, const GroupElement& f) {
  SkewElement x(std::move(ring));
  x.put(f, NCPoly::scalar(x.ring_->algebra(), Cyclotomic(1)));
  return x;
}

SkewElement SkewElement::term(RingPtr ring, const NCPoly& a, const GroupElement& f) {
  SkewElement x(std::move(ring));
  if (!a.algebra()->same_as(*x.ring_->algebra())) throw algebra_mismatch("coefficient from another algebra");
  x.put(f, a);
  return x;
}

SkewElement SkewElement::scalar(RingPtr ring, const Cyclotomic& c) {
  SkewElement x(std::move(ring));
  x.put(GroupElement{}, NCPoly::scalar(x.ring_->algebra(), c));
  return x;
}

NCPoly SkewElement::coefficient(const GroupElement& f) const {
  auto it = coeffs_.find(f);
  return it == coeffs_.end() ? NCPoly(ring_->algebra()) : it->second;
}

bool SkewElement::has_denominator() const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.has_denominator(); });
}

namespace {

void require_same(const SkewElement& x, const SkewElement& y) {
  if (x.ring() == y.ring()) return;
  if (!x.ring()->algebra()->same_as(*y.ring()->algebra()) || !(x.ring()->group() == y.ring()->group())) {
    throw algebra_mismatch("SkewElement operands from different rings");
  }
}

}  // namespace

SkewElement& SkewElement::operator+=(const SkewElement& o) {
  require_same(*this, o);
  for (const auto& [f, a] : o.coeffs_) put(f, a);
  return *this;
}

SkewElement& SkewElement::operator-=(const SkewElement& o) { return *this += -o; }

SkewElement SkewElement::operator-() const { return scaled(Cyclotomic(-1)); }

SkewElement SkewElement::scaled(const Cyclotomic& c) const {
  SkewElement r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [f, a] : coeffs_) r.coeffs_.emplace(f, a.scaled(c));
  return r;
}

SkewElement operator*(const SkewElement& x, const SkewElement& y) {
  require_same(x, y);
  const GroupSpec& g = x.ring_->group();
  SkewElement r(x.ring_);
  // (a f)(b f') = a (f.b) (f f')
  for (const auto& [f, a] : x.coeffs_) {
    for (const auto& [f2, b] : y.coeffs_) {
      NCPoly fb = apply_automorphism(g, f, b);
      r.put(g.multiply(f, f2), a * fb);
    }
  }
  return r;
}

SkewElement skew_multiply(const SkewElement& x, const SkewElement& y) { return x * y; }

SkewElement SkewElement::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a skew element");
  SkewElement acc = scalar(ring_, Cyclotomic(1));
  SkewElement base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

bool operator==(const SkewElement& a, const SkewElement& b) {
  require_same(a, b);
  std::set<GroupElement> keys;
  for (const auto& [f, _] : a.coeffs_) keys.insert(f);
  for (const auto& [f, _] : b.coeffs_) keys.insert(f);
  for (const auto& f : keys) {
    if (a.coefficient(f) != b.coefficient(f)) return false;
  }
  return true;
}

std::string SkewElement::to_string(long conductor) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [f, a] : coeffs_) {
    if (!first) out += " + ";
    first = false;
    out += "(" + a.to_string(conductor) + ")";
    if (f != GroupElement{}) out += "*" + ring_->group().name(f);
  }
  return out;
}

bool is_central(const SkewElement& x) {
  const RingPtr& ring = x.ring();
  std::vector<SkewElement> gens;
  gens.push_back(SkewElement::from_algebra(ring, NCPoly::u(ring->algebra())));
  gens.push_back(SkewElement::from_algebra(ring, NCPoly::v(ring->algebra())));
  for (const auto& f : ring->group().generators()) gens.push_back(SkewElement::group_element(ring, f));
  for (const auto& y : gens) {
    if (x * y != y * x) return false;
  }
  return true;
}

// ---------------------------------------------------------------- windows

Window make_window(const AlgebraSpec& a, int d) {
  if (d < 0) throw std::invalid_argument("window degree must be nonnegative");
  Window w{};
  w.degree_bound = d;
  w.laurent = a.laurent();
  w.u_min = a.inverted_u() ? -d : 0;
  w.v_min = a.inverted_v() ? -d : 0;
  w.u_max = d;
  w.v_max = d;
  return w;
}

std::vector<int> Window::degrees() const {
  std::vector<int> out;
  int lo = laurent ? u_min + v_min : 0;
  int hi = laurent ? u_max + v_max : degree_bound;
  for (int j = lo; j <= hi; ++j) out.push_back(j);
  return out;
}

std::vector<Monomial> Window::monomials(int degree) const {
  std::vector<Monomial> out;
  for (int a = u_min; a <= u_max; ++a) {
    Monomial m{a, degree - a};
    if (contains(m)) out.push_back(m);
  }
  return out;
}

namespace {

struct Key {
  std::size_t eq;  // which equation family
  GroupElement f;
  Monomial m;
  auto operator<=>(const Key&) const = default;
};

// Rows of the linear map described by images of each unknown.
std::vector<DenseVector> rows_from_images(const std::vector<std::map<Key, Cyclotomic>>& images) {
  std::map<Key, std::size_t> row_index;
  for (const auto& img : images) {
    for (const auto& [k, _] : img) row_index.emplace(k, 0);
  }
  std::size_t r = 0;
  for (auto& [_, idx] : row_index) idx = r++;
  std::vector<DenseVector> rows(r, DenseVector(images.size()));
  for (std::size_t col = 0; col < images.size(); ++col) {
    for (const auto& [k, c] : images[col]) rows[row_index[k]][col] = c;
  }
  return rows;
}

void collect(std::map<Key, Cyclotomic>& out, std::size_t eq, const SkewElement& x) {
  for (const auto& [f, a] : x.coeffs()) {
    if (a.has_denominator()) throw std::domain_error("graded solver got a fraction");
    for (const auto& [m, c] : a.terms()) out[Key{eq, f, m}] += c;
  }
}

void collect(std::map<Key, Cyclotomic>& out, std::size_t eq, const NCPoly& a) {
  for (const auto& [m, c] : a.terms()) out[Key{eq, GroupElement{}, m}] += c;
}

}  // namespace

std::vector<GradedSkewPiece> center_basis(const RingPtr& ring, int d) {
  const AlgebraPtr& A = ring->algebra();
  const GroupSpec& G = ring->group();
  Window w = make_window(*A, d);
  std::vector<SkewElement> gens;
  gens.push_back(SkewElement::from_algebra(ring, NCPoly::u(A)));
  gens.push_back(SkewElement::from_algebra(ring, NCPoly::v(A)));
  for (const auto& f : G.generators()) gens.push_back(SkewElement::group_element(ring, f));
  std::vector<GroupElement> elems = G.elements();

  std::vector<GradedSkewPiece> out;
  for (int j : w.degrees()) {
    std::vector<SkewElement> unknowns;
    for (const auto& m : w.monomials(j)) {
      for (const auto& f : elems) {
        unknowns.push_back(SkewElement::term(ring, NCPoly::monomial(A, m.a, m.b), f));
      }
    }
    if (unknowns.empty()) continue;
    std::vector<std::map<Key, Cyclotomic>> images(unknowns.size());
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      for (std::size_t e = 0; e < gens.size(); ++e) {
        collect(images[c], e, unknowns[c] * gens[e] - gens[e] * unknowns[c]);
      }
      for (auto it = images[c].begin(); it != images[c].end();) {
        it = it->second.is_zero() ? images[c].erase(it) : std::next(it);
      }
    }
    auto kernel = null_space(rows_from_images(images), unknowns.size());
    if (kernel.empty()) continue;
    GradedSkewPiece piece{j, {}};
    for (const auto& vec : kernel) {
      SkewElement x(ring);
      for (std::size_t c = 0; c < vec.size(); ++c) {
        if (!vec[c].is_zero()) x += unknowns[c].scaled(vec[c]);
      }
      piece.basis.push_back(std::move(x));
    }
    out.push_back(std::move(piece));
  }
  return out;
}

namespace {

std::vector<GradedPolyPiece> solve_polys(const AlgebraPtr& a, const GroupSpec& g, int d, bool central) {
  Window w = make_window(*a, d);
  NCPoly u = NCPoly::u(a);
  NCPoly v = NCPoly::v(a);
  std::vector<GradedPolyPiece> out;
  for (int j : w.degrees()) {
    std::vector<NCPoly> unknowns;
    for (const auto& m : w.monomials(j)) unknowns.push_back(NCPoly::monomial(a, m.a, m.b));
    if (unknowns.empty()) continue;
    std::vector<std::map<Key, Cyclotomic>> images(unknowns.size());
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      const NCPoly& x = unknowns[c];
      std::size_t eq = 0;
      for (const auto& f : g.generators()) collect(images[c], eq++, apply_automorphism(g, f, x) - x);
      if (central) {
        collect(images[c], eq++, x * u - u * x);
        collect(images[c], eq++, x * v - v * x);
      }
      for (auto it = images[c].begin(); it != images[c].end();) {
        it = it->second.is_zero() ? images[c].erase(it) : std::next(it);
      }
    }
    auto kernel = null_space(rows_from_images(images), unknowns.size());
    if (kernel.empty()) continue;
    GradedPolyPiece piece{j, {}};
    for (const auto& vec : kernel) {
      NCPoly x(a);
      for (std::size_t c = 0; c < vec.size(); ++c) {
        if (!vec[c].is_zero()) x += unknowns[c].scaled(vec[c]);
      }
      piece.basis.push_back(std::move(x));
    }
    out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace

std::vector<GradedPolyPiece> invariant_basis(const AlgebraPtr& a, const GroupSpec& g, int d) {
  return solve_polys(a, g, d, false);
}

std::vector<GradedPolyPiece> invariant_center_basis(const AlgebraPtr& a, const GroupSpec& g, int d) {
  return solve_polys(a, g, d, true);
}

std::size_t total_dimension(const std::vector<GradedSkewPiece>& pieces) {
  std::size_t n = 0;
  for (const auto& p : pieces) n += p.basis.size();
  return n;
}

// ---------------------------------------------------------------- presentations

std::vector<std::string> CentralPresentation::names() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.name);
  return out;
}

std::size_t CentralPresentation::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].name == name) return i;
  }
  throw std::out_of_range("no central generator named " + name);
}

CommPoly CentralPresentation::var(const std::string& name) const {
  return CommPoly::variable(generators.size(), index_of(name));
}

namespace {

int element_degree(const SkewElement& x) {
  bool first = true;
  int deg = 0;
  for (const auto& [f, a] : x.coeffs()) {
    for (const auto& [m, c] : a.terms()) {
      if (first) deg = m.degree();
      else if (deg != m.degree()) return 0;
      first = false;
    }
  }
  return deg;
}

CommPoly widen(const CommPoly& p, std::size_t n) {
  CommPoly out(n);
  std::vector<CommPoly> images;
  for (std::size_t i = 0; i < p.nvars(); ++i) images.push_back(CommPoly::variable(n, i));
  if (images.empty()) {
    for (const auto& [e, c] : p.terms()) out += CommPoly::constant(n, c);
    return out;
  }
  return p.substitute(images);
}

}  // namespace

void CentralPresentation::add_generator(std::string name, SkewElement element) {
  int deg = element_degree(element);
  for (const auto& g : generators) {
    if (g.name == name) throw std::invalid_argument("duplicate generator name " + name);
  }
  generators.push_back({std::move(name), std::move(element), deg});
  std::size_t n = generators.size();
  for (auto& r : relations) r = widen(r, n);
  for (auto& r : localized_at) r = widen(r, n);
}

void CentralPresentation::add_inverse(const std::string& name, SkewElement inverse) {
  std::size_t i = index_of(name);
  add_generator(name + "_inv", std::move(inverse));
  std::size_t j = generators.size() - 1;
  inverse_pairs.emplace_back(i, j);
  relations.push_back(var(name) * var(name + "_inv") - CommPoly::constant(generators.size(), Cyclotomic(1)));
}

CentralPresentation CentralPresentation::without(const std::string& name) const {
  std::size_t drop = index_of(name);
  CentralPresentation out;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i == drop) continue;
    bool partner = false;
    for (auto [a, b] : inverse_pairs) {
      if ((a == drop && b == i) || (b == drop && a == i)) partner = true;
    }
    if (!partner) keep.push_back(i);
  }
  for (std::size_t i : keep) out.generators.push_back(generators[i]);
  auto remap = [&](std::size_t i) -> std::optional<std::size_t> {
    auto it = std::find(keep.begin(), keep.end(), i);
    if (it == keep.end()) return std::nullopt;
    return static_cast<std::size_t>(it - keep.begin());
  };
  for (auto [a, b] : inverse_pairs) {
    auto ra = remap(a);
    auto rb = remap(b);
    if (ra && rb) out.inverse_pairs.emplace_back(*ra, *rb);
  }
  // Keep only relations that avoid the removed names.
  auto translate = [&](const CommPoly& p) -> std::optional<CommPoly> {
    CommPoly q(keep.size());
    for (const auto& [e, c] : p.terms()) {
      CommPoly::Exponents ne(keep.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto r = remap(i);
        if (!r) return std::nullopt;
        ne[*r] = e[i];
      }
      CommPoly t = CommPoly::constant(keep.size(), c);
      for (std::size_t i = 0; i < ne.size(); ++i) {
        if (ne[i]) t = t * CommPoly::variable(keep.size(), i).pow(ne[i]);
      }
      q += t;
    }
    return q;
  };
  for (const auto& r : relations) {
    if (auto t = translate(r)) out.relations.push_back(*t);
  }
  for (const auto& r : localized_at) {
    if (auto t = translate(r)) out.localized_at.push_back(*t);
  }
  return out;
}

std::string describe_relation(const CentralPresentation& p, const CommPoly& r) { return r.to_string(p.names()); }

std::optional<std::string> point_violation(const CentralPresentation& p, const std::vector<Cyclotomic>& values) {
  if (values.size() != p.generators.size()) return "expected " + std::to_string(p.generators.size()) + " values";
  for (const auto& r : p.relations) {
    if (!r.evaluate(values).is_zero()) return "relation " + describe_relation(p, r) + " != 0";
  }
  for (const auto& r : p.localized_at) {
    if (r.evaluate(values).is_zero()) return "localized element " + describe_relation(p, r) + " vanishes";
  }
  return std::nullopt;
}

SkewElement evaluate_relation(const CentralPresentation& p, const CommPoly& r, const RingPtr& ring) {
  std::vector<SkewElement> values;
  for (const auto& g : p.generators) values.push_back(g.element);
  return r.evaluate_in<SkewElement>(
      values, SkewElement::scalar(ring, Cyclotomic(1)), SkewElement(ring),
      [](const SkewElement& x, const SkewElement& y) { return x * y; },
      [](const SkewElement& x, const Cyclotomic& c) { return x.scaled(c); });
}

GeneratingSetReport verify_generating_set(const CentralPresentation& claimed, const RingPtr& ring, int d) {
  GeneratingSetReport rep;
  for (const auto& g : claimed.generators) {
    if (!is_central(g.element)) {
      rep.ok = false;
      rep.failure = "generator " + g.name + " is not central";
      return rep;
    }
  }
  for (const auto& r : claimed.relations) {
    if (!evaluate_relation(claimed, r, ring).is_zero()) {
      rep.ok = false;
      rep.failure = "relation " + describe_relation(claimed, r) + " does not vanish";
      return rep;
    }
  }
  for (const auto& g : claimed.generators) {
    if (g.element.has_denominator()) return rep;  // fractions have no place in the graded window
  }
  rep.spans_checked = true;

  // Laurent variables: merge each inverse pair into one signed exponent.
  const std::size_t n = claimed.generators.size();
  std::vector<int> partner(n, -1);
  std::vector<bool> secondary(n, false);
  for (auto [a, b] : claimed.inverse_pairs) {
    partner[a] = static_cast<int>(b);
    secondary[b] = true;
  }
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < n; ++i) {
    if (!secondary[i]) vars.push_back(i);
  }
  const int bound = 2 * d;
  Window w = make_window(*ring->algebra(), d);
  auto inside = [&](const SkewElement& x) {
    for (const auto& [f, a] : x.coeffs()) {
      for (const auto& [m, c] : a.terms()) {
        if (!w.contains(m)) return false;
      }
    }
    return true;
  };

  std::map<int, std::vector<SkewElement>> by_degree;
  std::vector<std::vector<SkewElement>> pos(n), neg(n);
  auto power_of = [&](std::size_t i, int e) -> const SkewElement& {
    auto& cache = e >= 0 ? pos[i] : neg[i];
    const SkewElement& base = e >= 0 ? claimed.generators[i].element
                                     : claimed.generators[static_cast<std::size_t>(partner[i])].element;
    if (cache.empty()) cache.push_back(SkewElement::scalar(ring, Cyclotomic(1)));
    int k = std::abs(e);
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * base);
    return cache[static_cast<std::size_t>(k)];
  };
  std::vector<int> ex(vars.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int deg) {
    if (idx == vars.size()) {
      SkewElement x = SkewElement::scalar(ring, Cyclotomic(1));
      for (std::size_t t = 0; t < vars.size(); ++t) {
        if (ex[t] != 0) x = x * power_of(vars[t], ex[t]);
      }
      if (!x.is_zero() && inside(x)) by_degree[deg].push_back(std::move(x));
      return;
    }
    std::size_t i = vars[idx];
    int lo = partner[i] >= 0 ? -bound : 0;
    int gd = claimed.generators[i].degree;
    for (int e = lo; e <= bound; ++e) {
      int nd = deg + e * gd;
      if (!w.laurent && (nd > d || nd < 0)) continue;
      ex[idx] = e;
      rec(idx + 1, nd);
    }
    ex[idx] = 0;
  };
  rec(0, 0);

  auto computed = center_basis(ring, d);
  std::map<int, std::size_t> computed_dim;
  for (const auto& piece : computed) computed_dim[piece.degree] = piece.basis.size();
  std::set<int> degrees;
  for (const auto& [j, _] : computed_dim) degrees.insert(j);
  for (const auto& [j, _] : by_degree) degrees.insert(j);

  for (int j : degrees) {
    std::size_t claimed_rank = 0;
    auto it = by_degree.find(j);
    if (it != by_degree.end()) {
      // coordinates over (group element, monomial) keys
      std::map<std::pair<GroupElement, Monomial>, std::size_t> index;
      for (const auto& x : it->second) {
        for (const auto& [f, a] : x.coeffs()) {
          for (const auto& [m, c] : a.terms()) index.emplace(std::make_pair(f, m), 0);
        }
      }
      std::size_t k = 0;
      for (auto& [_, idx] : index) idx = k++;
      std::vector<DenseVector> rows;
      for (const auto& x : it->second) {
        DenseVector row(k);
        for (const auto& [f, a] : x.coeffs()) {
          for (const auto& [m, c] : a.terms()) row[index[{f, m}]] = c;
        }
        rows.push_back(std::move(row));
      }
      claimed_rank = rank_of(rows, k);
    }
    std::size_t have = computed_dim.count(j) ? computed_dim[j] : 0;
    rep.degrees.push_back({j, claimed_rank, have});
    if (claimed_rank != have && rep.ok) {
      rep.ok = false;
      rep.failure = "degree " + std::to_string(j) + ": claimed span has dimension " + std::to_string(claimed_rank) +
                    ", center has dimension " + std::to_string(have);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- stabilizers

CoordinateAction coordinate_action(const CoordinateSystem& c, const GroupSpec& g, const GroupElement& f) {
  CoordinateAction act;
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    NCPoly img = apply_automorphism(g, f, c.elements[i]);
    bool found = false;
    for (std::size_t j = 0; j < c.elements.size() && !found; ++j) {
      const NCPoly& z = c.elements[j];
      if (z.is_zero()) continue;
      const auto& [lead, lc] = *z.terms().begin();
      Cyclotomic s = img.coefficient(lead) / lc;
      if (!s.is_zero() && img == z.scaled(s)) {
        act.perm.push_back(j);
        act.scale.push_back(s);
        found = true;
      }
    }
    if (!found) throw action_undefined("group element " + g.name(f) + " does not permute coordinate " + c.names[i]);
  }
  return act;
}

std::vector<GroupElement> stabilizer_of_point(const CoordinateSystem& c, const GroupSpec& g,
                                              const std::vector<Cyclotomic>& values) {
  if (values.size() != c.elements.size()) throw std::invalid_argument("point has the wrong number of coordinates");
  std::vector<GroupElement> out;
  for (const auto& f : g.elements()) {
    CoordinateAction act = coordinate_action(c, g, f);
    bool fixed = true;
    for (std::size_t i = 0; i < values.size() && fixed; ++i) {
      if (values[i] != act.scale[i] * values[act.perm[i]]) fixed = false;
    }
    if (fixed) out.push_back(f);
  }
  return out;
}

std::vector<Cyclotomic> fixed_point_of(const CoordinateSystem& c, const GroupSpec& g, const GroupElement& f,
                                       const std::vector<Cyclotomic>& seed) {
  CoordinateAction act = coordinate_action(c, g, f);
  std::vector<Cyclotomic> out = seed;
  std::vector<bool> done(seed.size(), false);
  for (std::size_t start = 0; start < seed.size(); ++start) {
    if (done[start]) continue;
    // p(z_perm(i)) = p(z_i) / scale_i along the cycle
    std::vector<std::size_t> cycle;
    Cyclotomic product(1);
    std::size_t i = start;
    do {
      cycle.push_back(i);
      product *= act.scale[i];
      i = act.perm[i];
    } while (i != start);
    bool consistent = product.is_one();
    Cyclotomic val = consistent ? seed[start] : Cyclotomic(0);
    for (std::size_t k : cycle) {
      out[k] = val;
      done[k] = true;
      val = val / act.scale[k];
    }
  }
  return out;
}

}  // namespace qks
