#pragma once

#include <string>
#include <vector>

#include "qks/scalar.hpp"

namespace qks {

using Matrix = std::vector<std::vector<Cyclotomic>>;

Matrix identity_matrix(std::size_t n);
Matrix matrix_multiply(const Matrix& a, const Matrix& b);
Cyclotomic determinant(const Matrix& a);

// Polynomial in t, lowest coefficient first, no trailing zeros.
class PolynomialT {
 public:
  PolynomialT() = default;
  explicit PolynomialT(std::vector<Cyclotomic> coeffs);
  static PolynomialT constant(const Cyclotomic& c);
  // 1 - c t^k
  static PolynomialT one_minus(int k, const Cyclotomic& c = Cyclotomic(1));

  const std::vector<Cyclotomic>& coefficients() const { return coeffs_; }
  Cyclotomic coefficient(std::size_t k) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  PolynomialT& operator+=(const PolynomialT& o);
  PolynomialT scaled(const Cyclotomic& c) const;
  PolynomialT pow(int e) const;
  friend PolynomialT operator+(PolynomialT a, const PolynomialT& b) { return a += b; }
  friend PolynomialT operator-(const PolynomialT& a, const PolynomialT& b) { return a + b.scaled(Cyclotomic(-1)); }
  friend PolynomialT operator*(const PolynomialT& a, const PolynomialT& b);
  friend bool operator==(const PolynomialT& a, const PolynomialT& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Cyclotomic> coeffs_;
};

// numerator / denominator with denominator(0) != 0, kept unreduced.
class RationalFunctionSeries {
 public:
  RationalFunctionSeries(PolynomialT numerator, PolynomialT denominator);

  const PolynomialT& numerator() const { return num_; }
  const PolynomialT& denominator() const { return den_; }

  friend RationalFunctionSeries operator+(const RationalFunctionSeries& a, const RationalFunctionSeries& b);
  friend RationalFunctionSeries operator*(const RationalFunctionSeries& a, const RationalFunctionSeries& b);
  // Cross-multiplication equality.
  friend bool operator==(const RationalFunctionSeries& a, const RationalFunctionSeries& b);

  std::string to_string() const;

 private:
  PolynomialT num_;
  PolynomialT den_;
};

// det(I - alpha t), from the characteristic polynomial.
PolynomialT det_one_minus_t(const Matrix& alpha);
RationalFunctionSeries molien_series(const std::vector<Matrix>& group);
std::vector<Cyclotomic> series_expand(const RationalFunctionSeries& f, int d);
bool compare_with_counts(const RationalFunctionSeries& f, const std::vector<long>& counts);

// Dimensions of the invariants of Sym^j(k^n), j <= d, by linear algebra on monomials.
std::vector<long> invariant_dimensions(const std::vector<Matrix>& group, int d);

// prod (1 - t^k) over the listed exponents.
PolynomialT product_one_minus(const std::vector<int>& exponents);

// Representations used by the series checks; eps is a primitive m-th root of unity.
std::vector<Matrix> trivial_representation(int n);
// diag(eps^i, eps^-i)
std::vector<Matrix> cyclic_representation(int m);
// s^i = diag(eps^i, eps^-i, 1), s^i t = [[0, eps^i, 0], [eps^-i, 0, 0], [0, 0, -1]]
std::vector<Matrix> dihedral_representation(int m);

RationalFunctionSeries trivial_closed_form(int n);
// (1 - t^2m) / ((1 - t^2)(1 - t^m)^2)
RationalFunctionSeries cyclic_closed_form(int m);
// (1 - t^2(m+1)) / ((1 - t^2)^2 (1 - t^m)(1 - t^(m+1)))
RationalFunctionSeries dihedral_closed_form(int m);

}  // namespace qks
