#include "qks/ncalgebra.hpp"

#include <algorithm>
#include <sstream>

namespace qks {

void add_term(TermMap& t, const Monomial& m, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto it = t.find(m);
  if (it == t.end()) {
    t.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t.erase(it);
}

void add_terms(TermMap& t, const TermMap& s, const Cyclotomic& scale) {
  if (scale.is_zero()) return;
  for (const auto& [m, c] : s) add_term(t, m, scale.is_one() ? c : c * scale);
}

namespace {

std::string coefficient_text(const Cyclotomic& c, long conductor) {
  Cyclotomic v = conductor > 0 ? c.coerce(lcm_long(conductor, c.conductor())) : c;
  if (v.is_rational()) return v.to_string();
  return "(" + v.to_string() + ")";
}

std::string monomial_text(const Monomial& m) {
  std::string out;
  auto var = [&](const char* name, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  };
  var("u", m.a);
  var("v", m.b);
  return out;
}

}  // namespace

std::string terms_to_string(const TermMap& t, long conductor) {
  if (t.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : t) {
    std::string coef = coefficient_text(c, conductor);
    std::string mono = monomial_text(m);
    bool negative = c.is_rational() && sgn(c.rational_value()) < 0;
    if (negative) coef = coefficient_text(-c, conductor);
    if (!first) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    first = false;
    if (mono.empty()) {
      out += coef;
    } else if (coef == "1") {
      out += mono;
    } else {
      out += coef + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------- AlgebraSpec

AlgebraPtr AlgebraSpec::commutative(bool invert_u, bool invert_v) {
  auto a = std::shared_ptr<AlgebraSpec>(new AlgebraSpec());
  a->kind_ = AlgebraKind::commutative;
  a->inv_u_ = invert_u;
  a->inv_v_ = invert_v;
  a->q_cycle_ = {Cyclotomic(1)};
  return a;
}

AlgebraPtr AlgebraSpec::quantum_plane(const Cyclotomic& q, bool invert_u, bool invert_v) {
  if (q.is_zero()) throw std::invalid_argument("quantum plane needs q != 0");
  auto a = std::shared_ptr<AlgebraSpec>(new AlgebraSpec());
  a->kind_ = AlgebraKind::quantum_plane;
  a->q_ = q;
  a->inv_u_ = invert_u;
  a->inv_v_ = invert_v;
  // Roots of unity in Q(zeta_N) have order dividing lcm(2, N).
  long bound = lcm_long(2, q.conductor());
  Cyclotomic p(1);
  std::vector<Cyclotomic> cycle{p};
  for (long r = 1; r <= bound; ++r) {
    p *= q;
    if (p.is_one()) {
      a->q_cycle_ = cycle;
      break;
    }
    cycle.push_back(p);
  }
  return a;
}

AlgebraPtr AlgebraSpec::jordan_plane(bool invert_u) {
  auto a = std::shared_ptr<AlgebraSpec>(new AlgebraSpec());
  a->kind_ = AlgebraKind::jordan_plane;
  a->inv_u_ = invert_u;
  a->q_cycle_ = {Cyclotomic(1)};
  return a;
}

AlgebraPtr AlgebraSpec::with_denominators(const AlgebraPtr& base, std::vector<TermMap> denominators) {
  auto a = std::shared_ptr<AlgebraSpec>(new AlgebraSpec(*base));
  for (const auto& d : denominators) {
    if (d.empty()) throw std::invalid_argument("denominator must be nonzero");
    for (const auto& [m, _] : d) {
      if (!a->admits(m)) throw std::invalid_argument("denominator uses a non-inverted variable");
    }
    for (const Monomial gen : {Monomial{1, 0}, Monomial{0, 1}}) {
      TermMap g{{gen, Cyclotomic(1)}};
      if (a->multiply(d, g) != a->multiply(g, d)) {
        throw std::invalid_argument("denominator " + terms_to_string(d) + " is not central");
      }
    }
  }
  a->denominators_ = std::move(denominators);
  return a;
}

bool AlgebraSpec::same_as(const AlgebraSpec& o) const {
  if (this == &o) return true;
  return kind_ == o.kind_ && q_ == o.q_ && inv_u_ == o.inv_u_ && inv_v_ == o.inv_v_ &&
         denominators_ == o.denominators_;
}

bool AlgebraSpec::admits(const Monomial& m) const {
  if (m.a < 0 && !inv_u_) return false;
  if (m.b < 0 && !inv_v_) return false;
  return true;
}

std::string AlgebraSpec::describe() const {
  std::string vars;
  vars += inv_u_ ? "u^{+-1}" : "u";
  vars += ",";
  vars += inv_v_ ? "v^{+-1}" : "v";
  std::string out;
  switch (kind_) {
    case AlgebraKind::commutative: out = "k[" + vars + "]"; break;
    case AlgebraKind::quantum_plane: out = "k_q[" + vars + "] q=" + q_.to_string(); break;
    case AlgebraKind::jordan_plane: out = "k_J[" + vars + "]"; break;
  }
  for (const auto& d : denominators_) out += "[(" + terms_to_string(d) + ")^-1]";
  return out;
}

Cyclotomic AlgebraSpec::q_power(long e) const {
  if (!q_cycle_.empty()) {
    long r = static_cast<long>(q_cycle_.size());
    long k = e % r;
    if (k < 0) k += r;
    return q_cycle_[static_cast<std::size_t>(k)];
  }
  return q_.pow(e);
}

TermMap AlgebraSpec::multiply_monomials(const Monomial& x, const Monomial& y) const {
  TermMap out;
  switch (kind_) {
    case AlgebraKind::commutative:
      out.emplace(Monomial{x.a + y.a, x.b + y.b}, Cyclotomic(1));
      break;
    case AlgebraKind::quantum_plane:
      // v^b u^c = q^{bc} u^c v^b
      out.emplace(Monomial{x.a + y.a, x.b + y.b}, q_power(static_cast<long>(x.b) * y.a));
      break;
    case AlgebraKind::jordan_plane: {
      // v^b u^c = sum_i C(b,i) c(c+1)...(c+i-1) u^{c+i} v^{b-i}
      if (x.b < 0 || y.b < 0) throw std::domain_error("Jordan plane: v is not invertible");
      mpz_class binom = 1;
      mpz_class rising = 1;
      for (int i = 0; i <= x.b; ++i) {
        if (i > 0) {
          binom = binom * (x.b - i + 1) / i;
          rising *= (y.a + i - 1);
        }
        mpz_class coef = binom * rising;
        if (coef == 0) break;
        add_term(out, Monomial{x.a + y.a + i, x.b - i + y.b}, Cyclotomic(Rational(coef)));
      }
      break;
    }
  }
  return out;
}

TermMap AlgebraSpec::multiply(const TermMap& x, const TermMap& y) const {
  TermMap out;
  for (const auto& [mx, cx] : x) {
    for (const auto& [my, cy] : y) {
      Cyclotomic c = cx * cy;
      for (const auto& [m, k] : multiply_monomials(mx, my)) add_term(out, m, k.is_one() ? c : c * k);
    }
  }
  return out;
}

// ---------------------------------------------------------------- NCPoly

NCPoly::NCPoly(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) throw std::invalid_argument("NCPoly needs an algebra");
}

NCPoly::NCPoly(AlgebraPtr algebra, TermMap terms, std::vector<int> denominator)
    : algebra_(std::move(algebra)), denominator_(std::move(denominator)) {
  if (!algebra_) throw std::invalid_argument("NCPoly needs an algebra");
  for (auto& [m, c] : terms) {
    if (!c.is_zero()) terms_.emplace(m, std::move(c));
  }
  check_terms();
  if (!denominator_.empty() && denominator_.size() != algebra_->denominators().size()) {
    throw std::invalid_argument("denominator tag length mismatch");
  }
  for (int e : denominator_) {
    if (e < 0) throw std::invalid_argument("negative denominator exponent");
  }
  if (std::all_of(denominator_.begin(), denominator_.end(), [](int e) { return e == 0; })) {
    denominator_.clear();
  }
  if (terms_.empty()) denominator_.clear();
}

void NCPoly::check_terms() const {
  for (const auto& [m, _] : terms_) {
    if (!algebra_->admits(m)) {
      throw std::invalid_argument("monomial u^" + std::to_string(m.a) + " v^" + std::to_string(m.b) +
                                  " not allowed in " + algebra_->describe());
    }
  }
}

NCPoly NCPoly::scalar(AlgebraPtr algebra, const Cyclotomic& c) {
  TermMap t;
  add_term(t, Monomial{0, 0}, c);
  return NCPoly(std::move(algebra), std::move(t));
}

NCPoly NCPoly::monomial(AlgebraPtr algebra, int a, int b, const Cyclotomic& c) {
  TermMap t;
  add_term(t, Monomial{a, b}, c);
  return NCPoly(std::move(algebra), std::move(t));
}

NCPoly NCPoly::denominator_inverse(AlgebraPtr algebra, std::size_t index, int power) {
  std::size_t n = algebra->denominators().size();
  if (index >= n) throw std::out_of_range("no such denominator");
  std::vector<int> tag(n, 0);
  tag[index] = power;
  TermMap one{{Monomial{0, 0}, Cyclotomic(1)}};
  return NCPoly(std::move(algebra), std::move(one), std::move(tag));
}

bool NCPoly::has_denominator() const { return !denominator_.empty(); }

bool NCPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, _] : terms_) {
    if (m.degree() != d) return false;
  }
  return true;
}

Cyclotomic NCPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Cyclotomic() : it->second;
}

namespace {

int denominator_degree(const AlgebraSpec& a, const std::vector<int>& tag) {
  int total = 0;
  for (std::size_t i = 0; i < tag.size(); ++i) {
    if (tag[i] == 0) continue;
    const TermMap& d = a.denominators()[i];
    int deg = d.begin()->first.degree();
    for (const auto& [m, _] : d) {
      if (m.degree() != deg) throw std::domain_error("grading undefined for inhomogeneous denominator");
    }
    total += tag[i] * deg;
  }
  return total;
}

TermMap power_terms(const AlgebraSpec& a, const TermMap& x, int e) {
  TermMap acc{{Monomial{0, 0}, Cyclotomic(1)}};
  for (int k = 0; k < e; ++k) acc = a.multiply(acc, x);
  return acc;
}

}  // namespace

NCPoly NCPoly::graded_component(int d) const {
  int shift = denominator_degree(*algebra_, denominator_);
  TermMap out;
  for (const auto& [m, c] : terms_) {
    if (m.degree() == d + shift) out.emplace(m, c);
  }
  return NCPoly(algebra_, std::move(out), denominator_);
}

TermMap NCPoly::numerator_over(const std::vector<int>& target) const {
  TermMap acc = terms_;
  for (std::size_t i = 0; i < target.size(); ++i) {
    int have = denominator_.empty() ? 0 : denominator_[i];
    if (target[i] < have) throw std::invalid_argument("target denominator too small");
    if (target[i] > have) {
      acc = algebra_->multiply(acc, power_terms(*algebra_, algebra_->denominators()[i], target[i] - have));
    }
  }
  return acc;
}

namespace {

std::vector<int> max_tag(const NCPoly& x, const NCPoly& y) {
  std::size_t n = x.algebra()->denominators().size();
  std::vector<int> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int a = x.denominator().empty() ? 0 : x.denominator()[i];
    int b = y.denominator().empty() ? 0 : y.denominator()[i];
    out[i] = std::max(a, b);
  }
  return out;
}

void require_same(const NCPoly& x, const NCPoly& y) {
  if (!x.algebra()->same_as(*y.algebra())) throw algebra_mismatch("NCPoly operands from different algebras");
}

}  // namespace

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  require_same(*this, o);
  if (o.is_zero()) return *this;
  if (is_zero()) {
    terms_ = o.terms_;
    denominator_ = o.denominator_;
    return *this;
  }
  if (denominator_ == o.denominator_) {
    add_terms(terms_, o.terms_);
    if (terms_.empty()) denominator_.clear();
    return *this;
  }
  std::vector<int> tag = max_tag(*this, o);
  TermMap t = numerator_over(tag);
  add_terms(t, o.numerator_over(tag));
  *this = NCPoly(algebra_, std::move(t), std::move(tag));
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) { return *this += -o; }

NCPoly NCPoly::operator-() const { return scaled(Cyclotomic(-1)); }

NCPoly NCPoly::scaled(const Cyclotomic& c) const {
  if (c.is_zero()) return NCPoly(algebra_);
  NCPoly r = *this;
  for (auto& [_, k] : r.terms_) k *= c;
  return r;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  require_same(a, b);
  TermMap t = a.algebra_->multiply(a.terms_, b.terms_);
  std::vector<int> tag;
  if (a.has_denominator() || b.has_denominator()) {
    tag.assign(a.algebra_->denominators().size(), 0);
    for (std::size_t i = 0; i < tag.size(); ++i) {
      tag[i] = (a.denominator_.empty() ? 0 : a.denominator_[i]) + (b.denominator_.empty() ? 0 : b.denominator_[i]);
    }
  }
  return NCPoly(a.algebra_, std::move(t), std::move(tag));
}

NCPoly nc_multiply(const NCPoly& x, const NCPoly& y) { return x * y; }

NCPoly graded_component(const NCPoly& x, int d) { return x.graded_component(d); }

bool operator==(const NCPoly& a, const NCPoly& b) {
  require_same(a, b);
  if (a.denominator_ == b.denominator_) return a.terms_ == b.terms_;
  std::vector<int> tag = max_tag(a, b);
  return a.numerator_over(tag) == b.numerator_over(tag);
}

NCPoly NCPoly::monomial_inverse() const {
  if (terms_.size() != 1 || has_denominator()) throw not_invertible("not a monomial: " + to_string());
  const auto& [m, c] = *terms_.begin();
  if ((m.a != 0 && !algebra_->inverted_u()) || (m.b != 0 && !algebra_->inverted_v())) {
    throw not_invertible("monomial " + to_string() + " is not a unit in " + algebra_->describe());
  }
  // (u^a v^b)^{-1} = v^{-b} u^{-a}
  TermMap vpart{{Monomial{0, -m.b}, Cyclotomic(1)}};
  TermMap upart{{Monomial{-m.a, 0}, Cyclotomic(1)}};
  TermMap inv = algebra_->multiply(vpart, upart);
  NCPoly r(algebra_, std::move(inv));
  return r.scaled(c.inverse());
}

NCPoly NCPoly::pow(int e) const {
  if (e < 0) return monomial_inverse().pow(-e);
  NCPoly acc = scalar(algebra_, Cyclotomic(1));
  NCPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

std::string NCPoly::to_string(long conductor) const {
  std::string out = terms_to_string(terms_, conductor);
  if (!has_denominator()) return out;
  out = "(" + out + ")";
  for (std::size_t i = 0; i < denominator_.size(); ++i) {
    if (denominator_[i] == 0) continue;
    out += " / (" + terms_to_string(algebra_->denominators()[i], conductor) + ")";
    if (denominator_[i] != 1) out += "^" + std::to_string(denominator_[i]);
  }
  return out;
}

// ---------------------------------------------------------------- GroupSpec

namespace {

std::vector<Cyclotomic> checked_powers(int n, const Cyclotomic& omega) {
  if (n < 1) throw std::invalid_argument("group order parameter must be positive");
  std::vector<Cyclotomic> pw;
  Cyclotomic p(1);
  for (int k = 0; k < n; ++k) {
    if (k > 0 && p.is_one()) {
      throw std::invalid_argument("omega has order " + std::to_string(k) + ", expected " + std::to_string(n));
    }
    pw.push_back(p);
    p *= omega;
  }
  if (!p.is_one()) throw std::invalid_argument("omega^n != 1");
  return pw;
}

}  // namespace

GroupSpec GroupSpec::cyclic(int n, const Cyclotomic& omega) {
  GroupSpec g;
  g.kind_ = GroupKind::cyclic;
  g.n_ = n;
  g.omega_ = omega;
  g.omega_powers_ = checked_powers(n, omega);
  return g;
}

GroupSpec GroupSpec::symmetric2() {
  GroupSpec g;
  g.kind_ = GroupKind::symmetric2;
  g.n_ = 1;
  g.omega_ = Cyclotomic(1);
  g.omega_powers_ = {Cyclotomic(1)};
  return g;
}

GroupSpec GroupSpec::dihedral(int n, const Cyclotomic& omega) {
  GroupSpec g;
  g.kind_ = GroupKind::dihedral;
  g.n_ = n;
  g.omega_ = omega;
  g.omega_powers_ = checked_powers(n, omega);
  return g;
}

int GroupSpec::order() const {
  switch (kind_) {
    case GroupKind::cyclic: return n_;
    case GroupKind::symmetric2: return 2;
    case GroupKind::dihedral: return 2 * n_;
  }
  return 1;
}

std::vector<GroupElement> GroupSpec::elements() const {
  std::vector<GroupElement> out;
  int jmax = kind_ == GroupKind::cyclic ? 1 : 2;
  for (int j = 0; j < jmax; ++j) {
    for (int i = 0; i < n_; ++i) out.push_back({i, j});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupElement> GroupSpec::generators() const {
  switch (kind_) {
    case GroupKind::cyclic:
      if (n_ == 1) return {};
      return {{1, 0}};
    case GroupKind::symmetric2: return {{0, 1}};
    case GroupKind::dihedral:
      if (n_ == 1) return {{0, 1}};
      return {{1, 0}, {0, 1}};
  }
  return {};
}

GroupElement GroupSpec::normalize(int i, int j) const {
  int ii = i % n_;
  if (ii < 0) ii += n_;
  int jj = j % 2;
  if (jj < 0) jj += 2;
  if (kind_ == GroupKind::cyclic) jj = 0;
  return {ii, jj};
}

bool GroupSpec::contains(const GroupElement& x) const {
  if (x.i < 0 || x.i >= n_) return false;
  if (x.j < 0 || x.j > 1) return false;
  if (kind_ == GroupKind::cyclic && x.j != 0) return false;
  return true;
}

GroupElement GroupSpec::multiply(const GroupElement& x, const GroupElement& y) const {
  // (g^i h^j)(g^k h^l) = g^{i + (-1)^j k} h^{j+l}
  return normalize(x.i + (x.j ? -y.i : y.i), x.j + y.j);
}

GroupElement GroupSpec::inverse(const GroupElement& x) const {
  if (x.j) return x;
  return normalize(-x.i, 0);
}

std::string GroupSpec::name(const GroupElement& x) const {
  std::string out;
  if (x.i == 1) out = "g";
  if (x.i > 1) out = "g^" + std::to_string(x.i);
  if (x.j) out += out.empty() ? "h" : " h";
  return out.empty() ? "e" : out;
}

std::string GroupSpec::describe() const {
  switch (kind_) {
    case GroupKind::cyclic: return "C" + std::to_string(n_);
    case GroupKind::symmetric2: return "S2";
    case GroupKind::dihedral: return "D" + std::to_string(n_);
  }
  return "?";
}

bool GroupSpec::operator==(const GroupSpec& o) const {
  return kind_ == o.kind_ && n_ == o.n_ && omega_ == o.omega_;
}

std::pair<GroupSpec::GeneratorImage, GroupSpec::GeneratorImage> GroupSpec::generator_images(
    const GroupElement& f) const {
  const Cyclotomic& w = omega_powers_[static_cast<std::size_t>(f.i)];
  const Cyclotomic& winv = omega_powers_[static_cast<std::size_t>((n_ - f.i) % n_)];
  if (f.j == 0) return {{w, 0}, {winv, 1}};
  // g^i h: u -> v -> w^{-i} v, v -> u -> w^i u
  return {{winv, 1}, {w, 0}};
}

GroupElement group_multiply(const GroupSpec& g, const GroupElement& x, const GroupElement& y) {
  return g.multiply(x, y);
}

// ---------------------------------------------------------------- actions

TermMap apply_automorphism_terms(const AlgebraSpec& a, const GroupSpec& g, const GroupElement& f,
                                 const TermMap& x) {
  if (!g.contains(f)) throw std::invalid_argument("element not in group");
  auto [iu, iv] = g.generator_images(f);
  auto var_power = [&](const GroupSpec::GeneratorImage& img, int e) {
    Monomial m = img.var == 0 ? Monomial{e, 0} : Monomial{0, e};
    if (!a.admits(m)) throw action_undefined("action needs an inverse that " + a.describe() + " lacks");
    return std::make_pair(m, img.coef.pow(e));
  };
  TermMap out;
  for (const auto& [m, c] : x) {
    auto [mu, cu] = var_power(iu, m.a);
    auto [mv, cv] = var_power(iv, m.b);
    Cyclotomic s = c * cu * cv;
    for (const auto& [mm, k] : a.multiply_monomials(mu, mv)) add_term(out, mm, s * k);
  }
  return out;
}

std::vector<std::pair<std::size_t, Cyclotomic>> denominator_action(const AlgebraSpec& a, const GroupSpec& g,
                                                                   const GroupElement& f) {
  std::vector<std::pair<std::size_t, Cyclotomic>> out;
  const auto& dens = a.denominators();
  for (std::size_t i = 0; i < dens.size(); ++i) {
    TermMap img = apply_automorphism_terms(a, g, f, dens[i]);
    bool found = false;
    for (std::size_t j = 0; j < dens.size() && !found; ++j) {
      const auto& [lead, lc] = *dens[j].begin();
      auto it = img.find(lead);
      if (it == img.end()) continue;
      Cyclotomic c = it->second / lc;
      TermMap scaled;
      add_terms(scaled, dens[j], c);
      if (scaled == img) {
        out.emplace_back(j, c);
        found = true;
      }
    }
    if (!found) throw action_undefined("group does not preserve denominator " + terms_to_string(dens[i]));
  }
  return out;
}

NCPoly apply_automorphism(const GroupSpec& g, const GroupElement& f, const NCPoly& x) {
  const AlgebraSpec& a = *x.algebra();
  TermMap num = apply_automorphism_terms(a, g, f, x.terms());
  if (!x.has_denominator()) return NCPoly(x.algebra(), std::move(num));
  auto act = denominator_action(a, g, f);
  std::vector<int> tag(a.denominators().size(), 0);
  Cyclotomic scale(1);
  for (std::size_t i = 0; i < tag.size(); ++i) {
    int e = x.denominator()[i];
    if (e == 0) continue;
    tag[act[i].first] += e;
    scale *= act[i].second.pow(-e);
  }
  NCPoly r(x.algebra(), std::move(num), std::move(tag));
  return r.scaled(scale);
}

namespace {

// Free-algebra degree-2 words uu, uv, vu, vv.
using Quadric = std::vector<Cyclotomic>;

Quadric defining_relation(const AlgebraSpec& a) {
  switch (a.kind()) {
    case AlgebraKind::commutative: return {Cyclotomic(0), Cyclotomic(-1), Cyclotomic(1), Cyclotomic(0)};
    case AlgebraKind::quantum_plane: return {Cyclotomic(0), -a.q(), Cyclotomic(1), Cyclotomic(0)};
    case AlgebraKind::jordan_plane: return {Cyclotomic(-1), Cyclotomic(-1), Cyclotomic(1), Cyclotomic(0)};
  }
  return {};
}

Quadric image_of(const Quadric& r, const GroupSpec::GeneratorImage& iu, const GroupSpec::GeneratorImage& iv) {
  Quadric out(4);
  const GroupSpec::GeneratorImage img[2] = {iu, iv};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const Cyclotomic& c = r[static_cast<std::size_t>(2 * x + y)];
      if (c.is_zero()) continue;
      out[static_cast<std::size_t>(2 * img[x].var + img[y].var)] += c * img[x].coef * img[y].coef;
    }
  }
  return out;
}

bool proportional(const Quadric& r, const Quadric& s) {
  // 2x2 minors vanish
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (r[i] * s[j] != r[j] * s[i]) return false;
    }
  }
  return std::any_of(s.begin(), s.end(), [](const Cyclotomic& c) { return !c.is_zero(); });
}

}  // namespace

bool check_action_well_defined(const AlgebraPtr& a, const GroupSpec& g) {
  Quadric rel = defining_relation(*a);
  for (const auto& f : g.elements()) {
    auto [iu, iv] = g.generator_images(f);
    if (!proportional(rel, image_of(rel, iu, iv))) return false;
    auto inverted = [&](int var) { return var == 0 ? a->inverted_u() : a->inverted_v(); };
    if (a->inverted_u() && !inverted(iu.var)) return false;
    if (a->inverted_v() && !inverted(iv.var)) return false;
    try {
      denominator_action(*a, g, f);
    } catch (const action_undefined&) {
      return false;
    }
  }
  // The assignment element -> automorphism must be a homomorphism.
  for (const auto& x : g.elements()) {
    for (const auto& y : g.elements()) {
      auto xy = g.generator_images(g.multiply(x, y));
      auto ix = g.generator_images(x);
      auto iy = g.generator_images(y);
      auto compose = [&](const GroupSpec::GeneratorImage& inner) {
        const auto& outer = inner.var == 0 ? ix.first : ix.second;
        return GroupSpec::GeneratorImage{inner.coef * outer.coef, outer.var};
      };
      auto cu = compose(iy.first);
      auto cv = compose(iy.second);
      if (cu.var != xy.first.var || cu.coef != xy.first.coef) return false;
      if (cv.var != xy.second.var || cv.coef != xy.second.coef) return false;
    }
  }
  auto id = g.generator_images(g.identity());
  return id.first.var == 0 && id.first.coef.is_one() && id.second.var == 1 && id.second.coef.is_one();
}

bool check_inner_by(const AlgebraPtr& a, const GroupSpec& g, const GroupElement& f, const NCPoly& c) {
  if (!c.algebra()->same_as(*a)) throw algebra_mismatch("conjugating element from another algebra");
  c.monomial_inverse();  // throws not_invertible
  NCPoly u = NCPoly::u(a);
  NCPoly v = NCPoly::v(a);
  return c * u == apply_automorphism(g, f, u) * c && c * v == apply_automorphism(g, f, v) * c;
}

}  // namespace qks
