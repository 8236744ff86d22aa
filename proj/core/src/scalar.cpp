#include "qks/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qks {

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

long euler_phi(long n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of integer polynomials by a monic divisor.
std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<long> quot(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    long c = num[k];
    quot[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

std::vector<long> cyclotomic_polynomial(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
  std::vector<long> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  return poly;
}

CyclotomicField::CyclotomicField(long conductor)
    : conductor_(conductor), degree_(static_cast<int>(euler_phi(conductor))),
      modulus_(cyclotomic_polynomial(conductor)) {
  powers_.reserve(static_cast<std::size_t>(conductor));
  std::vector<long> cur(static_cast<std::size_t>(degree_), 0);
  cur[0] = 1;
  for (long k = 0; k < conductor; ++k) {
    powers_.push_back(cur);
    // multiply by z and fold the overflow term through Phi_N
    long top = cur.back();
    for (int j = degree_ - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0) {
      for (int j = 0; j < degree_; ++j) cur[j] -= top * modulus_[static_cast<std::size_t>(j)];
    }
  }
}

const std::vector<long>& CyclotomicField::power(long k) const {
  long r = k % conductor_;
  if (r < 0) r += conductor_;
  return powers_[static_cast<std::size_t>(r)];
}

const CyclotomicField& CyclotomicField::get(long conductor) {
  if (conductor < 1) throw conductor_error("conductor must be positive");
  static std::mutex mu;
  static std::map<long, std::unique_ptr<CyclotomicField>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(conductor);
  if (it == registry.end()) {
    it = registry.emplace(conductor, std::make_unique<CyclotomicField>(conductor)).first;
  }
  return *it->second;
}

namespace {

// Solves M x = rhs over Q, M given as rows. Returns nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_dense(std::vector<std::vector<Rational>> m,
                                                 std::vector<Rational> rhs) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(rhs[p], rhs[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (sgn(rhs[i]) != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

}  // namespace

Cyclotomic::Cyclotomic() : field_(&CyclotomicField::get(1)) {}

Cyclotomic::Cyclotomic(long value) : Cyclotomic(Rational(value)) {}

Cyclotomic::Cyclotomic(long numerator, long denominator) {
  if (denominator == 0) throw division_by_zero("rational with zero denominator");
  field_ = &CyclotomicField::get(1);
  Rational r(numerator, denominator);
  r.canonicalize();
  if (sgn(r) != 0) coeffs_ = {r};
}

Cyclotomic::Cyclotomic(const Rational& value) : field_(&CyclotomicField::get(1)) {
  if (sgn(value) != 0) coeffs_ = {value};
}

Cyclotomic::Cyclotomic(const CyclotomicField* field, std::vector<Rational> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  trim();
}

void Cyclotomic::trim() {
  bool zero = std::all_of(coeffs_.begin(), coeffs_.end(),
                          [](const Rational& c) { return sgn(c) == 0; });
  if (zero) {
    coeffs_.clear();
  } else {
    coeffs_.resize(static_cast<std::size_t>(field_->degree()), 0);
  }
}

std::vector<Rational> Cyclotomic::reduce(const CyclotomicField& f, std::vector<Rational> poly) {
  const std::size_t deg = static_cast<std::size_t>(f.degree());
  if (poly.size() <= deg) return poly;
  std::vector<Rational> out(poly.begin(), poly.begin() + static_cast<long>(deg));
  for (std::size_t k = deg; k < poly.size(); ++k) {
    if (sgn(poly[k]) == 0) continue;
    const auto& pw = f.power(static_cast<long>(k));
    for (std::size_t j = 0; j < deg; ++j) {
      if (pw[j] != 0) out[j] += poly[k] * pw[j];
    }
  }
  return out;
}

Cyclotomic Cyclotomic::from_coefficients(long conductor, const std::vector<Rational>& coeffs) {
  const auto& f = CyclotomicField::get(conductor);
  return Cyclotomic(&f, reduce(f, coeffs));
}

Cyclotomic Cyclotomic::root_of_unity(long j, long conductor) {
  const auto& f = CyclotomicField::get(conductor);
  const auto& pw = f.power(j);
  std::vector<Rational> c(pw.begin(), pw.end());
  return Cyclotomic(&f, std::move(c));
}

std::vector<Rational> Cyclotomic::coefficients() const {
  if (coeffs_.empty()) return std::vector<Rational>(static_cast<std::size_t>(field_->degree()), 0);
  return coeffs_;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t j = 1; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_one() const { return is_rational() && !coeffs_.empty() && coeffs_[0] == 1; }

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw std::domain_error("value is not rational");
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Cyclotomic Cyclotomic::coerce(long target) const {
  long n = conductor();
  if (target < 1 || target % n != 0) {
    throw conductor_error("cannot coerce conductor " + std::to_string(n) + " to " +
                          std::to_string(target));
  }
  const auto& f = CyclotomicField::get(target);
  if (target == n) return *this;
  if (is_rational()) {
    if (coeffs_.empty()) return Cyclotomic(&f, {});
    return Cyclotomic(&f, {coeffs_[0]});
  }
  long step = target / n;
  std::vector<Rational> out(static_cast<std::size_t>(f.degree()), 0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    const auto& pw = f.power(static_cast<long>(j) * step);
    for (std::size_t t = 0; t < out.size(); ++t) {
      if (pw[t] != 0) out[t] += coeffs_[j] * pw[t];
    }
  }
  return Cyclotomic(&f, std::move(out));
}

std::optional<Cyclotomic> Cyclotomic::descend(long target) const {
  long n = conductor();
  if (target < 1 || n % target != 0) {
    throw conductor_error("descend target " + std::to_string(target) + " does not divide " +
                          std::to_string(n));
  }
  const auto& small = CyclotomicField::get(target);
  if (is_rational()) {
    if (coeffs_.empty()) return Cyclotomic(&small, {});
    return Cyclotomic(&small, {coeffs_[0]});
  }
  const std::size_t rows = static_cast<std::size_t>(field_->degree());
  const std::size_t cols = static_cast<std::size_t>(small.degree());
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, 0));
  long step = n / target;
  for (std::size_t j = 0; j < cols; ++j) {
    const auto& pw = field_->power(static_cast<long>(j) * step);
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = pw[i];
  }
  auto x = solve_dense(std::move(m), coefficients());
  if (!x) return std::nullopt;
  return Cyclotomic(&small, std::move(*x));
}

Cyclotomic Cyclotomic::minimize_conductor() const {
  long n = conductor();
  for (long m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    if (auto d = descend(m)) return *d;
  }
  return *this;
}

void Cyclotomic::align(Cyclotomic& a, Cyclotomic& b) {
  if (a.field_ == b.field_) return;
  long l = lcm_long(a.conductor(), b.conductor());
  if (a.conductor() != l) a = a.coerce(l);
  if (b.conductor() != l) b = b.coerce(l);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.is_zero()) return *this;
  Cyclotomic other = o;
  align(*this, other);
  if (coeffs_.empty()) {
    coeffs_ = other.coeffs_;
    return *this;
  }
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  trim();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) {
    Cyclotomic z = o;
    align(*this, z);
    coeffs_.clear();
    return *this;
  }
  if (o.is_rational() && o.field_->conductor() <= field_->conductor() &&
      field_->conductor() % o.field_->conductor() == 0) {
    const Rational& s = o.coeffs_[0];
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  if (is_rational() && o.field_->conductor() % field_->conductor() == 0) {
    Rational s = coeffs_[0];
    field_ = o.field_;
    coeffs_ = o.coeffs_;
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Cyclotomic other = o;
  align(*this, other);
  const std::size_t deg = coeffs_.size();
  std::vector<Rational> prod(2 * deg - 1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (sgn(other.coeffs_[j]) == 0) continue;
      prod[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = reduce(*field_, std::move(prod));
  trim();
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw division_by_zero("inverse of zero");
  if (is_rational()) return Cyclotomic(field_, {1 / coeffs_[0]});
  // Column j of the multiplication matrix is this * z^j.
  const std::size_t deg = static_cast<std::size_t>(field_->degree());
  std::vector<std::vector<Rational>> m(deg, std::vector<Rational>(deg, 0));
  for (std::size_t j = 0; j < deg; ++j) {
    Cyclotomic col = *this * root_of_unity(static_cast<long>(j), conductor());
    auto cc = col.coefficients();
    for (std::size_t i = 0; i < deg; ++i) m[i][j] = cc[i];
  }
  std::vector<Rational> rhs(deg, 0);
  rhs[0] = 1;
  auto x = solve_dense(std::move(m), std::move(rhs));
  if (!x) throw division_by_zero("singular multiplication matrix");
  return Cyclotomic(field_, std::move(*x));
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) {
  if (o.is_zero()) throw division_by_zero("division by zero");
  return *this *= o.inverse();
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic base = *this;
  Cyclotomic acc = Cyclotomic(field_, {Rational(1)});
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.field_ == b.field_) return a.coeffs_ == b.coeffs_;
  Cyclotomic x = a;
  Cyclotomic y = b;
  Cyclotomic::align(x, y);
  return x.coeffs_ == y.coeffs_;
}

std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    mpz_class n;
    if (n.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    return Rational(n);
  }
  mpz_class n;
  mpz_class d;
  if (n.set_str(s.substr(0, slash), 10) != 0 || d.set_str(s.substr(slash + 1), 10) != 0) {
    throw std::invalid_argument("bad rational '" + s + "'");
  }
  if (d == 0) throw division_by_zero("rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string Cyclotomic::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const Rational& c = coeffs_[j];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      out << rational_to_string(mag);
      continue;
    }
    if (mag != 1) out << rational_to_string(mag) << "*";
    out << "z";
    if (j > 1) out << "^" << j;
  }
  return out.str();
}

std::string Cyclotomic::to_string(long target) const { return coerce(target).to_string(); }

Cyclotomic Cyclotomic::parse(std::string_view text, long conductor) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty cyclotomic literal");
  std::vector<Rational> poly;
  auto add_term = [&](const Rational& c, std::size_t e) {
    if (poly.size() <= e) poly.resize(e + 1, 0);
    poly[e] += c;
  };
  std::size_t pos = 0;
  auto fail = [&]() {
    throw std::invalid_argument("bad cyclotomic literal '" + std::string(text) + "'");
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail();
    }
    Rational coef = 1;
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    bool has_number = pos > start;
    if (has_number) coef = parse_rational(s.substr(start, pos - start));
    std::size_t e = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_number) fail();
      ++pos;
      if (pos >= s.size() || s[pos] != 'z') fail();
    }
    if (pos < s.size() && s[pos] == 'z') {
      ++pos;
      e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t es = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == es) fail();
        e = std::stoul(s.substr(es, pos - es));
      }
    } else if (!has_number) {
      fail();
    }
    add_term(sign > 0 ? coef : Rational(-coef), e);
  }
  return from_coefficients(conductor, poly);
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

}  // namespace qks
