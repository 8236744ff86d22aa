#include "qks/fiber.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <random>

namespace qks {

// ---------------------------------------------------------------- algebra basics

DenseVector FiniteDimAlgebra::multiply(const DenseVector& x, const DenseVector& y) const {
  DenseVector out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j].is_zero()) continue;
      axpy(out, x[i] * y[j], table[i][j]);
    }
  }
  return out;
}

std::vector<DenseVector> FiniteDimAlgebra::generating_set() const {
  if (!generators.empty()) return generators;
  std::vector<DenseVector> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(basis_vector(i));
  return out;
}

namespace {

// (b_i b_j) b_k and b_i (b_j b_k)
bool triple_associates(const FiniteDimAlgebra& f, std::size_t i, std::size_t j, std::size_t k) {
  DenseVector left(f.dim), right(f.dim);
  for (const auto& [t, c] : f.table[i][j]) axpy(left, c, f.table[t][k]);
  for (const auto& [t, c] : f.table[j][k]) axpy(right, c, f.table[i][t]);
  return left == right;
}

}  // namespace

bool is_associative(const FiniteDimAlgebra& f, std::size_t exhaustive_limit, std::size_t samples, std::uint64_t seed) {
  if (f.dim <= exhaustive_limit) {
    for (std::size_t i = 0; i < f.dim; ++i)
      for (std::size_t j = 0; j < f.dim; ++j)
        for (std::size_t k = 0; k < f.dim; ++k)
          if (!triple_associates(f, i, j, k)) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, f.dim - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    if (!triple_associates(f, pick(rng), pick(rng), pick(rng))) return false;
  }
  return true;
}

bool is_unital(const FiniteDimAlgebra& f) {
  for (std::size_t i = 0; i < f.dim; ++i) {
    DenseVector b = f.basis_vector(i);
    if (f.multiply(f.unit, b) != b || f.multiply(b, f.unit) != b) return false;
  }
  return true;
}

std::vector<DenseVector> trace_form(const FiniteDimAlgebra& f) {
  // tr(L_{b_k}) = sum_m coefficient of b_m in b_k b_m
  DenseVector tr(f.dim);
  for (std::size_t k = 0; k < f.dim; ++k) {
    for (std::size_t m = 0; m < f.dim; ++m) {
      for (const auto& [t, c] : f.table[k][m]) {
        if (t == m) tr[k] += c;
      }
    }
  }
  std::vector<DenseVector> form(f.dim, DenseVector(f.dim));
  for (std::size_t i = 0; i < f.dim; ++i) {
    for (std::size_t j = 0; j < f.dim; ++j) {
      Cyclotomic acc;
      for (const auto& [t, c] : f.table[i][j]) {
        if (!tr[t].is_zero()) acc += c * tr[t];
      }
      form[i][j] = acc;
    }
  }
  return form;
}

std::size_t trace_form_rank(const FiniteDimAlgebra& f) { return rank_of(trace_form(f), f.dim); }

std::size_t center_dimension(const FiniteDimAlgebra& f) {
  auto gens = f.generating_set();
  const std::size_t rows = gens.size() * f.dim;
  EchelonBasis span(rows);
  for (std::size_t i = 0; i < f.dim; ++i) {
    DenseVector b = f.basis_vector(i);
    DenseVector col(rows);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      DenseVector c = f.multiply(b, gens[g]);
      axpy(c, Cyclotomic(-1), f.multiply(gens[g], b));
      for (std::size_t t = 0; t < f.dim; ++t) col[g * f.dim + t] = std::move(c[t]);
    }
    span.insert(std::move(col));
  }
  return f.dim - span.rank();
}

std::vector<DenseVector> jacobson_radical(const FiniteDimAlgebra& f) { return null_space(trace_form(f), f.dim); }

std::size_t jacobson_radical_dim(const FiniteDimAlgebra& f) { return f.dim - trace_form_rank(f); }

std::vector<DenseVector> ideal_closure(const FiniteDimAlgebra& f, const std::vector<DenseVector>& seeds) {
  EchelonBasis span(f.dim);
  std::deque<DenseVector> queue;
  for (const auto& s : seeds) {
    if (span.insert(s)) queue.push_back(s);
  }
  auto gens = f.generating_set();
  while (!queue.empty() && span.rank() < f.dim) {
    DenseVector w = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      for (DenseVector p : {f.multiply(g, w), f.multiply(w, g)}) {
        if (span.insert(p)) queue.push_back(std::move(p));
      }
    }
  }
  return span.basis();
}

namespace {

// Coordinates on the complement of an ideal spanned by free RREF columns.
struct Projection {
  EchelonBasis span;
  std::vector<std::size_t> free;

  Projection(std::size_t dim, const std::vector<DenseVector>& ideal) : span(dim) {
    for (const auto& v : ideal) span.insert(v);
    span.make_reduced();
    free = span.free_columns();
  }

  DenseVector operator()(DenseVector v) const {
    span.reduce(v);
    DenseVector out(free.size());
    for (std::size_t k = 0; k < free.size(); ++k) out[k] = std::move(v[free[k]]);
    return out;
  }
};

FiniteDimAlgebra quotient_by(const FiniteDimAlgebra& f, const Projection& project) {
  const auto& free = project.free;
  FiniteDimAlgebra q;
  q.dim = free.size();
  for (std::size_t c : free) q.basis_labels.push_back(c < f.basis_labels.size() ? f.basis_labels[c] : "");
  q.table.assign(q.dim, std::vector<SparseVector>(q.dim));
  for (std::size_t a = 0; a < q.dim; ++a) {
    for (std::size_t b = 0; b < q.dim; ++b) {
      q.table[a][b] = to_sparse(project(to_dense(f.table[free[a]][free[b]], f.dim)));
    }
  }
  q.unit = project(f.unit);
  for (const auto& g : f.generators) q.generators.push_back(project(g));
  return q;
}

}  // namespace

FiniteDimAlgebra quotient_algebra(const FiniteDimAlgebra& f, const std::vector<DenseVector>& ideal) {
  Projection project(f.dim, ideal);
  if (project.free.empty()) throw std::invalid_argument("quotient by the whole algebra");
  return quotient_by(f, project);
}

FiniteDimAlgebra semisimple_quotient(const FiniteDimAlgebra& f) { return quotient_algebra(f, jacobson_radical(f)); }

std::string MatrixCertificate::to_string() const {
  if (central_simple) return "CentralSimple(" + std::to_string(d) + ")";
  return "NotCentralSimple(" + witness + ")";
}

MatrixCertificate matrix_algebra_certificate(const FiniteDimAlgebra& f) {
  MatrixCertificate c;
  c.dim = f.dim;
  c.trace_rank = trace_form_rank(f);
  c.center_dim = center_dimension(f);
  auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(f.dim))));
  while (root * root > f.dim) --root;
  while ((root + 1) * (root + 1) <= f.dim) ++root;
  if (f.dim == 0 || root * root != f.dim) {
    c.witness = "dimension " + std::to_string(f.dim) + " is not a square";
  } else if (c.trace_rank < f.dim) {
    c.witness = "trace form rank " + std::to_string(c.trace_rank) + " < " + std::to_string(f.dim);
  } else if (c.center_dim != 1) {
    c.witness = "center dimension " + std::to_string(c.center_dim) + " != 1";
  } else {
    c.central_simple = true;
    c.d = static_cast<int>(root);
  }
  return c;
}

// ---------------------------------------------------------------- reference algebras

FiniteDimAlgebra matrix_algebra(int n) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  const auto N = static_cast<std::size_t>(n);
  FiniteDimAlgebra f;
  f.dim = N * N;
  f.table.assign(f.dim, std::vector<SparseVector>(f.dim));
  f.unit = DenseVector(f.dim);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      f.basis_labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
      for (std::size_t l = 0; l < N; ++l) f.table[i * N + j][j * N + l] = {{i * N + l, Cyclotomic(1)}};
    }
    f.unit[i * N + i] = Cyclotomic(1);
  }
  return f;
}

FiniteDimAlgebra truncated_polynomial_algebra(int k) {
  if (k < 1) throw std::invalid_argument("length must be positive");
  const auto K = static_cast<std::size_t>(k);
  FiniteDimAlgebra f;
  f.dim = K;
  f.table.assign(K, std::vector<SparseVector>(K));
  for (std::size_t i = 0; i < K; ++i) {
    f.basis_labels.push_back(i == 0 ? "1" : i == 1 ? "t" : "t^" + std::to_string(i));
    for (std::size_t j = 0; i + j < K; ++j) f.table[i][j] = {{i + j, Cyclotomic(1)}};
  }
  f.unit = unit_vector(K, 0);
  return f;
}

FiniteDimAlgebra split_algebra(int n) {
  if (n < 1) throw std::invalid_argument("number of factors must be positive");
  const auto N = static_cast<std::size_t>(n);
  FiniteDimAlgebra f;
  f.dim = N;
  f.table.assign(N, std::vector<SparseVector>(N));
  f.unit = DenseVector(N);
  for (std::size_t i = 0; i < N; ++i) {
    f.basis_labels.push_back("e" + std::to_string(i + 1));
    f.table[i][i] = {{i, Cyclotomic(1)}};
    f.unit[i] = Cyclotomic(1);
  }
  return f;
}

// ---------------------------------------------------------------- fibers

namespace {

class Reducer {
 public:
  Reducer(const AlgebraSpec& a, const FiberRecipe& r) : a_(a), r_(r) {
    ku_ = static_cast<std::size_t>(r.k_u);
    kv_ = static_cast<std::size_t>(r.k_v);
  }

  std::size_t size() const { return ku_ * kv_; }

  DenseVector reduce(const TermMap& t) {
    DenseVector out(size());
    for (const auto& [m, c] : t) add_monomial(out, m.a, m.b, c);
    return out;
  }

 private:
  void add_monomial(DenseVector& out, int a, int b, const Cyclotomic& c) {
    if (r_.v_kind == FiberRecipe::VRule::monomial) {
      int t = floor_div(b, r_.k_v);
      int rem = b - t * r_.k_v;
      Cyclotomic s = c * r_.v_coef.pow(t);
      const auto& up = u_power(a + r_.v_u_exponent * t);
      for (std::size_t i = 0; i < ku_; ++i) {
        if (!up[i].is_zero()) out[i * kv_ + static_cast<std::size_t>(rem)] += s * up[i];
      }
      return;
    }
    const auto& vp = v_power(b);
    const auto& up = u_power(a);
    for (std::size_t i = 0; i < ku_; ++i) {
      if (up[i].is_zero()) continue;
      for (std::size_t j = 0; j < kv_; ++j) {
        if (!vp[j].is_zero()) out[i * kv_ + j] += c * up[i] * vp[j];
      }
    }
  }

  static int floor_div(int x, int m) {
    int q = x / m;
    if (x % m != 0 && x < 0) --q;
    return q;
  }

  // x^e reduced by x^k = sum rule[i] x^i, as a coefficient vector of length k.
  static const DenseVector& power(std::map<int, DenseVector>& cache, const std::vector<Cyclotomic>& rule,
                                  std::size_t k, int e) {
    if (auto it = cache.find(e); it != cache.end()) return it->second;
    if (cache.empty()) {
      for (std::size_t i = 0; i < k; ++i) cache[static_cast<int>(i)] = unit_vector(k, i);
    }
    if (e >= 0) {
      int top = cache.rbegin()->first;
      for (int s = top + 1; s <= e; ++s) {
        const DenseVector& prev = cache.at(s - 1);
        DenseVector next(k);
        for (std::size_t i = 0; i + 1 < k; ++i) next[i + 1] = prev[i];
        axpy(next, prev[k - 1], rule);
        cache[s] = std::move(next);
      }
    } else {
      if (rule[0].is_zero()) throw inconsistent_recipe("reduction rule is not invertible");
      Cyclotomic inv0 = rule[0].inverse();
      int bottom = cache.begin()->first;
      for (int s = bottom - 1; s >= e; --s) {
        // x^{-1} x^{s+1}: shift down; the constant term uses x^{-1} = (x^{k-1} - sum_{i>0} rule[i] x^{i-1}) / rule[0]
        const DenseVector& prev = cache.at(s + 1);
        DenseVector next(k);
        for (std::size_t i = 1; i < k; ++i) next[i - 1] = prev[i];
        if (!prev[0].is_zero()) {
          Cyclotomic c = prev[0] * inv0;
          next[k - 1] += c;
          for (std::size_t i = 1; i < k; ++i) next[i - 1] -= c * rule[i];
        }
        cache[s] = std::move(next);
      }
    }
    return cache.at(e);
  }

  const DenseVector& u_power(int e) { return power(u_cache_, r_.u_rule, ku_, e); }
  const DenseVector& v_power(int e) { return power(v_cache_, r_.v_rule, kv_, e); }

  const AlgebraSpec& a_;
  const FiberRecipe& r_;
  std::size_t ku_ = 1, kv_ = 1;
  std::map<int, DenseVector> u_cache_, v_cache_;
};

std::string monomial_label(int a, int b) {
  std::string s;
  auto part = [&](const char* x, int e) {
    if (e == 0) return;
    if (!s.empty()) s += " ";
    s += x;
    if (e != 1) s += "^" + std::to_string(e);
  };
  part("u", a);
  part("v", b);
  return s;
}

void validate_recipe(const AlgebraSpec& a, const FiberRecipe& r) {
  if (a.kind() == AlgebraKind::jordan_plane) throw inconsistent_recipe("fiber recipes need a quantum or commutative plane");
  if (r.k_u < 1 || r.k_v < 1) throw inconsistent_recipe("reduction exponents must be positive");
  if (r.u_rule.size() != static_cast<std::size_t>(r.k_u)) throw inconsistent_recipe("u rule has the wrong length");
  if (a.inverted_u() && r.u_rule[0].is_zero()) throw inconsistent_recipe("u is invertible but its rule is not");
  auto qp = [&](long e) { return a.q_power(e); };
  for (std::size_t i = 0; i < r.u_rule.size(); ++i) {
    if (!r.u_rule[i].is_zero() && qp(static_cast<long>(i)) != qp(r.k_u)) {
      throw inconsistent_recipe("u rule is not normal in the algebra");
    }
  }
  if (r.v_kind == FiberRecipe::VRule::polynomial) {
    if (r.v_rule.size() != static_cast<std::size_t>(r.k_v)) throw inconsistent_recipe("v rule has the wrong length");
    if (a.inverted_v() && r.v_rule[0].is_zero()) throw inconsistent_recipe("v is invertible but its rule is not");
    for (std::size_t j = 0; j < r.v_rule.size(); ++j) {
      if (!r.v_rule[j].is_zero() && qp(static_cast<long>(j)) != qp(r.k_v)) {
        throw inconsistent_recipe("v rule is not normal in the algebra");
      }
    }
  } else {
    if (r.v_coef.is_zero()) throw inconsistent_recipe("v rule has zero coefficient");
    if (r.v_u_exponent < 0 && !a.inverted_u()) throw inconsistent_recipe("v rule needs u to be invertible");
    if (qp(r.k_v) != Cyclotomic(1) || qp(r.v_u_exponent) != Cyclotomic(1)) {
      throw inconsistent_recipe("v rule is not normal in the algebra");
    }
  }
}

TermMap rule_terms(const FiberRecipe& r, bool u_rule) {
  TermMap t;
  if (u_rule) {
    add_term(t, Monomial{r.k_u, 0}, Cyclotomic(1));
    for (std::size_t i = 0; i < r.u_rule.size(); ++i) add_term(t, Monomial{static_cast<int>(i), 0}, -r.u_rule[i]);
  } else if (r.v_kind == FiberRecipe::VRule::polynomial) {
    add_term(t, Monomial{0, r.k_v}, Cyclotomic(1));
    for (std::size_t j = 0; j < r.v_rule.size(); ++j) add_term(t, Monomial{0, static_cast<int>(j)}, -r.v_rule[j]);
  } else {
    add_term(t, Monomial{0, r.k_v}, Cyclotomic(1));
    add_term(t, Monomial{r.v_u_exponent, 0}, -r.v_coef);
  }
  return t;
}

}  // namespace

FiberBuild build_fiber_with_ambient(const RingPtr& ring, const CentralPresentation& p,
                                    const std::vector<Cyclotomic>& values, const FiberRecipe& recipe) {
  const AlgebraSpec& A = *ring->algebra();
  const GroupSpec& G = ring->group();
  if (auto why = point_violation(p, values)) throw std::invalid_argument("inadmissible point: " + *why);
  validate_recipe(A, recipe);
  Reducer red(A, recipe);

  // The rules must generate a G-stable ideal.
  for (const auto& f : G.generators()) {
    for (bool which : {true, false}) {
      TermMap img = apply_automorphism_terms(A, G, f, rule_terms(recipe, which));
      if (!is_zero(red.reduce(img))) throw inconsistent_recipe("reductions are not stable under the group");
    }
  }

  const auto elements = G.elements();
  std::map<GroupElement, std::size_t> gindex;
  for (std::size_t k = 0; k < elements.size(); ++k) gindex[elements[k]] = k;
  const std::size_t block = red.size();
  const std::size_t dim = block * elements.size();
  const int ku = recipe.k_u, kv = recipe.k_v;

  FiniteDimAlgebra B;
  B.dim = dim;
  B.table.assign(dim, std::vector<SparseVector>(dim));
  for (const auto& f : elements) {
    std::string gname = G.name(f);
    for (int i = 0; i < ku; ++i) {
      for (int j = 0; j < kv; ++j) {
        std::string m = monomial_label(i, j);
        if (gname != "e") m = m.empty() ? gname : m + " " + gname;
        B.basis_labels.push_back(m.empty() ? "1" : m);
      }
    }
  }
  // f.(u^k v^l), reduced
  std::map<std::pair<std::size_t, std::size_t>, TermMap> acted;
  for (std::size_t fi = 0; fi < elements.size(); ++fi) {
    for (int k = 0; k < ku; ++k) {
      for (int l = 0; l < kv; ++l) {
        TermMap x;
        add_term(x, Monomial{k, l}, Cyclotomic(1));
        acted[{fi, static_cast<std::size_t>(k * kv + l)}] = apply_automorphism_terms(A, G, elements[fi], x);
      }
    }
  }
  for (std::size_t fi = 0; fi < elements.size(); ++fi) {
    for (std::size_t x = 0; x < block; ++x) {
      TermMap left;
      add_term(left, Monomial{static_cast<int>(x) / kv, static_cast<int>(x) % kv}, Cyclotomic(1));
      for (std::size_t y = 0; y < block; ++y) {
        DenseVector prod = red.reduce(A.multiply(left, acted.at({fi, y})));
        SparseVector sp = to_sparse(prod);
        for (std::size_t gi = 0; gi < elements.size(); ++gi) {
          std::size_t target = gindex.at(G.multiply(elements[fi], elements[gi]));
          SparseVector shifted;
          for (const auto& [t, c] : sp) shifted.emplace_back(target * block + t, c);
          B.table[fi * block + x][gi * block + y] = std::move(shifted);
        }
      }
    }
  }
  auto embed = [&](const TermMap& t, std::size_t gi) {
    DenseVector v(dim);
    DenseVector r = red.reduce(t);
    for (std::size_t k = 0; k < block; ++k) v[gi * block + k] = std::move(r[k]);
    return v;
  };
  TermMap one;
  add_term(one, Monomial{0, 0}, Cyclotomic(1));
  B.unit = embed(one, gindex.at(G.identity()));
  {
    TermMap tu, tv;
    add_term(tu, Monomial{1, 0}, Cyclotomic(1));
    add_term(tv, Monomial{0, 1}, Cyclotomic(1));
    B.generators.push_back(embed(tu, gindex.at(G.identity())));
    B.generators.push_back(embed(tv, gindex.at(G.identity())));
    for (const auto& f : G.generators()) B.generators.push_back(embed(one, gindex.at(f)));
  }

  // Residual relations with denominators are cleared by the central D^E on the left.
  const std::size_t ndens = A.denominators().size();
  auto cleared = [&](const SkewElement& z, const Cyclotomic& lambda) {
    std::vector<int> E(ndens, 0);
    for (const auto& [f, c] : z.coeffs()) {
      for (std::size_t i = 0; i < c.denominator().size(); ++i) E[i] = std::max(E[i], c.denominator()[i]);
    }
    DenseVector v(dim);
    for (const auto& [f, c] : z.coeffs()) {
      TermMap t = ndens ? c.numerator_over(E) : c.terms();
      axpy(v, Cyclotomic(1), embed(t, gindex.at(f)));
    }
    if (!lambda.is_zero()) {
      TermMap d = ndens ? NCPoly::scalar(ring->algebra(), Cyclotomic(1)).numerator_over(E) : one;
      axpy(v, -lambda, embed(d, gindex.at(G.identity())));
    }
    return v;
  };
  std::vector<DenseVector> seeds;
  for (std::size_t i = 0; i < p.generators.size(); ++i) seeds.push_back(cleared(p.generators[i].element, values[i]));
  for (const auto& r : recipe.residual_relations) seeds.push_back(cleared(r, Cyclotomic(0)));
  auto ideal = ideal_closure(B, seeds);
  if (ideal.size() == dim) throw inconsistent_recipe("reductions collapse 1 to 0");
  Projection project(dim, ideal);
  FiniteDimAlgebra F = quotient_by(B, project);

  // Denominators must be units in the fiber.
  for (std::size_t i = 0; i < ndens; ++i) {
    DenseVector d = project(embed(A.denominators()[i], gindex.at(G.identity())));
    EchelonBasis img(F.dim);
    for (std::size_t k = 0; k < F.dim; ++k) img.insert(F.multiply(d, F.basis_vector(k)));
    if (img.rank() != F.dim) throw inconsistent_recipe("denominator vanishes at the point");
  }
  return FiberBuild{std::move(B), std::move(F)};
}

FiniteDimAlgebra build_fiber(const RingPtr& ring, const CentralPresentation& p, const std::vector<Cyclotomic>& values,
                             const FiberRecipe& recipe) {
  return build_fiber_with_ambient(ring, p, values, recipe).fiber;
}

}  // namespace qks
