#include "qks/series.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qks/commpoly.hpp"
#include "qks/linalg.hpp"

namespace qks {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Cyclotomic>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Cyclotomic(1);
  return m;
}

Matrix matrix_multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  Matrix c(n, std::vector<Cyclotomic>(m));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!b[t][j].is_zero()) c[i][j] += a[i][t] * b[t][j];
      }
    }
  }
  return c;
}

Cyclotomic determinant(const Matrix& a) {
  Matrix m = a;
  const std::size_t n = m.size();
  Cyclotomic det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Cyclotomic(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Cyclotomic inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Cyclotomic f = m[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

// ---------------------------------------------------------------- PolynomialT

PolynomialT::PolynomialT(std::vector<Cyclotomic> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void PolynomialT::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

PolynomialT PolynomialT::constant(const Cyclotomic& c) { return PolynomialT({c}); }

PolynomialT PolynomialT::one_minus(int k, const Cyclotomic& c) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  std::vector<Cyclotomic> v(static_cast<std::size_t>(k) + 1);
  v[0] += Cyclotomic(1);
  v[static_cast<std::size_t>(k)] -= c;
  return PolynomialT(std::move(v));
}

Cyclotomic PolynomialT::coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Cyclotomic(); }

PolynomialT& PolynomialT::operator+=(const PolynomialT& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

PolynomialT PolynomialT::scaled(const Cyclotomic& c) const {
  std::vector<Cyclotomic> v = coeffs_;
  for (auto& x : v) x *= c;
  return PolynomialT(std::move(v));
}

PolynomialT operator*(const PolynomialT& a, const PolynomialT& b) {
  if (a.is_zero() || b.is_zero()) return PolynomialT();
  std::vector<Cyclotomic> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (!b.coeffs_[j].is_zero()) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return PolynomialT(std::move(v));
}

PolynomialT PolynomialT::pow(int e) const {
  PolynomialT acc = constant(Cyclotomic(1));
  for (int k = 0; k < e; ++k) acc = acc * *this;
  return acc;
}

std::string PolynomialT::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Cyclotomic& c = coeffs_[k];
    if (c.is_zero()) continue;
    bool negative = c.is_rational() && sgn(c.rational_value()) < 0;
    Cyclotomic mag = negative ? -c : c;
    std::string coef = mag.is_rational() ? mag.to_string() : "(" + mag.to_string() + ")";
    if (!first) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    first = false;
    if (k == 0) {
      out += coef;
      continue;
    }
    if (coef != "1") out += coef + "*";
    out += "t";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

PolynomialT product_one_minus(const std::vector<int>& exponents) {
  PolynomialT acc = PolynomialT::constant(Cyclotomic(1));
  for (int k : exponents) acc = acc * PolynomialT::one_minus(k);
  return acc;
}

// ---------------------------------------------------------------- rational functions

RationalFunctionSeries::RationalFunctionSeries(PolynomialT numerator, PolynomialT denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.coefficient(0).is_zero()) throw std::invalid_argument("denominator must have nonzero constant term");
}

RationalFunctionSeries operator+(const RationalFunctionSeries& a, const RationalFunctionSeries& b) {
  if (a.den_ == b.den_) return RationalFunctionSeries(a.num_ + b.num_, a.den_);
  return RationalFunctionSeries(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunctionSeries operator*(const RationalFunctionSeries& a, const RationalFunctionSeries& b) {
  return RationalFunctionSeries(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator==(const RationalFunctionSeries& a, const RationalFunctionSeries& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalFunctionSeries::to_string() const { return "(" + num_.to_string() + ") / (" + den_.to_string() + ")"; }

// ---------------------------------------------------------------- Molien

PolynomialT det_one_minus_t(const Matrix& alpha) {
  // Faddeev-LeVerrier: det(lambda I - alpha) = sum c_k lambda^{n-k}
  const std::size_t n = alpha.size();
  std::vector<Cyclotomic> c(n + 1);
  c[0] = Cyclotomic(1);
  Matrix mk(n, std::vector<Cyclotomic>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = matrix_multiply(alpha, mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[k - 1];
    mk = std::move(next);
    Matrix am = matrix_multiply(alpha, mk);
    Cyclotomic tr;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    c[k] = -tr / Cyclotomic(static_cast<long>(k));
  }
  // det(I - alpha t) = t^n det(t^{-1} I - alpha) = sum c_k t^k
  return PolynomialT(std::move(c));
}

RationalFunctionSeries molien_series(const std::vector<Matrix>& group) {
  if (group.empty()) throw std::invalid_argument("empty matrix group");
  const std::size_t n = group[0].size();
  for (const auto& g : group) {
    if (g.size() != n) throw std::invalid_argument("matrices of different sizes");
    if (determinant(g).is_zero()) throw std::invalid_argument("singular matrix in group");
  }
  for (const auto& a : group) {
    for (const auto& b : group) {
      Matrix ab = matrix_multiply(a, b);
      if (std::find(group.begin(), group.end(), ab) == group.end()) {
        throw std::invalid_argument("matrix list is not closed under multiplication");
      }
    }
  }
  // Group equal denominators so the common denominator stays small.
  std::vector<std::pair<PolynomialT, long>> classes;
  for (const auto& g : group) {
    PolynomialT d = det_one_minus_t(g);
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& p) { return p.first == d; });
    if (it == classes.end()) classes.emplace_back(d, 1);
    else ++it->second;
  }
  PolynomialT den = PolynomialT::constant(Cyclotomic(1));
  for (const auto& [d, _] : classes) den = den * d;
  PolynomialT num;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    PolynomialT term = PolynomialT::constant(Cyclotomic(classes[i].second));
    for (std::size_t j = 0; j < classes.size(); ++j) {
      if (j != i) term = term * classes[j].first;
    }
    num += term;
  }
  num = num.scaled(Cyclotomic(1, static_cast<long>(group.size())));
  return RationalFunctionSeries(std::move(num), std::move(den));
}

std::vector<Cyclotomic> series_expand(const RationalFunctionSeries& f, int d) {
  if (d < 0) return {};
  const auto& num = f.numerator();
  const auto& den = f.denominator();
  Cyclotomic inv0 = den.coefficient(0).inverse();
  std::vector<Cyclotomic> out(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    Cyclotomic acc = num.coefficient(static_cast<std::size_t>(k));
    for (int j = 1; j <= k && j <= den.degree(); ++j) {
      acc -= den.coefficient(static_cast<std::size_t>(j)) * out[static_cast<std::size_t>(k - j)];
    }
    out[static_cast<std::size_t>(k)] = acc * inv0;
  }
  return out;
}

bool compare_with_counts(const RationalFunctionSeries& f, const std::vector<long>& counts) {
  if (counts.empty()) return true;
  auto s = series_expand(f, static_cast<int>(counts.size()) - 1);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (s[k] != Cyclotomic(counts[k])) return false;
  }
  return true;
}

namespace {

// Smallest prefix of the list whose products reach every element.
std::vector<Matrix> generating_subset(const std::vector<Matrix>& group) {
  std::vector<Matrix> gens;
  std::vector<Matrix> reached{identity_matrix(group[0].size())};
  for (const auto& g : group) {
    if (std::find(reached.begin(), reached.end(), g) != reached.end()) continue;
    gens.push_back(g);
    // close up
    for (std::size_t i = 0; i < reached.size(); ++i) {
      for (const auto& h : gens) {
        Matrix p = matrix_multiply(reached[i], h);
        if (std::find(reached.begin(), reached.end(), p) == reached.end()) reached.push_back(p);
      }
    }
  }
  return gens;
}

}  // namespace

std::vector<long> invariant_dimensions(const std::vector<Matrix>& group, int d) {
  if (group.empty()) throw std::invalid_argument("empty matrix group");
  const std::size_t n = group[0].size();
  auto gens = generating_subset(group);
  // images of the coordinate functions: x_i -> sum_j alpha_ij x_j
  std::vector<std::vector<CommPoly>> images;
  for (const auto& a : gens) {
    std::vector<CommPoly> img;
    for (std::size_t i = 0; i < n; ++i) {
      CommPoly p(n);
      for (std::size_t j = 0; j < n; ++j) p += CommPoly::variable(n, j).scaled(a[i][j]);
      img.push_back(std::move(p));
    }
    images.push_back(std::move(img));
  }
  std::vector<long> dims;
  for (int deg = 0; deg <= d; ++deg) {
    std::vector<CommPoly::Exponents> monos;
    CommPoly::Exponents e(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
      if (i + 1 == n) {
        e[i] = left;
        monos.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        self(self, i + 1, left - k);
      }
    };
    if (n == 0) {
      dims.push_back(deg == 0 ? 1 : 0);
      continue;
    }
    rec(rec, 0, deg);
    std::map<CommPoly::Exponents, std::size_t> index;
    for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k]] = k;
    std::vector<DenseVector> rows;
    for (const auto& img : images) {
      // columns: monomials; rows: (generator, output monomial) of g.m - m
      std::vector<DenseVector> cols;
      for (const auto& m : monos) {
        CommPoly x = CommPoly::constant(n, Cyclotomic(1));
        for (std::size_t i = 0; i < n; ++i) {
          if (m[i]) x = x * img[i].pow(m[i]);
        }
        DenseVector col(monos.size());
        for (const auto& [ex, c] : x.terms()) col[index.at(ex)] += c;
        col[index.at(m)] -= Cyclotomic(1);
        cols.push_back(std::move(col));
      }
      for (std::size_t r = 0; r < monos.size(); ++r) {
        DenseVector row(monos.size());
        for (std::size_t c = 0; c < monos.size(); ++c) row[c] = cols[c][r];
        rows.push_back(std::move(row));
      }
    }
    dims.push_back(static_cast<long>(monos.size() - rank_of(rows, monos.size())));
  }
  return dims;
}

std::vector<Matrix> trivial_representation(int n) {
  if (n < 0) throw std::invalid_argument("negative dimension");
  return {identity_matrix(static_cast<std::size_t>(n))};
}

std::vector<Matrix> cyclic_representation(int m) {
  if (m < 1) throw std::invalid_argument("group order must be positive");
  std::vector<Matrix> out;
  for (int i = 0; i < m; ++i) {
    Matrix a(2, std::vector<Cyclotomic>(2));
    a[0][0] = Cyclotomic::root_of_unity(i, m);
    a[1][1] = Cyclotomic::root_of_unity(-i, m);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Matrix> dihedral_representation(int m) {
  if (m < 1) throw std::invalid_argument("group order must be positive");
  std::vector<Matrix> out;
  for (int i = 0; i < m; ++i) {
    Matrix a(3, std::vector<Cyclotomic>(3));
    a[0][0] = Cyclotomic::root_of_unity(i, m);
    a[1][1] = Cyclotomic::root_of_unity(-i, m);
    a[2][2] = Cyclotomic(1);
    out.push_back(std::move(a));
  }
  for (int i = 0; i < m; ++i) {
    Matrix a(3, std::vector<Cyclotomic>(3));
    a[0][1] = Cyclotomic::root_of_unity(i, m);
    a[1][0] = Cyclotomic::root_of_unity(-i, m);
    a[2][2] = Cyclotomic(-1);
    out.push_back(std::move(a));
  }
  return out;
}

RationalFunctionSeries trivial_closed_form(int n) {
  return RationalFunctionSeries(PolynomialT::constant(Cyclotomic(1)), PolynomialT::one_minus(1).pow(n));
}

RationalFunctionSeries cyclic_closed_form(int m) {
  return RationalFunctionSeries(PolynomialT::one_minus(2 * m), product_one_minus({2, m, m}));
}

RationalFunctionSeries dihedral_closed_form(int m) {
  return RationalFunctionSeries(PolynomialT::one_minus(2 * (m + 1)), product_one_minus({2, 2, m, m + 1}));
}

}  // namespace qks
