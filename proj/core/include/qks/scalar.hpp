#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qks {

using Rational = mpq_class;

// Raised for x / 0 and for inverting zero.
class division_by_zero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a value cannot live at the requested conductor.
class conductor_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

long euler_phi(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);

// Q(zeta_N) with the power basis 1, z, ..., z^(phi-1).
// Instances are created once per conductor and never mutated afterwards.
class CyclotomicField {
 public:
  static const CyclotomicField& get(long conductor);

  long conductor() const { return conductor_; }
  int degree() const { return degree_; }
  // Coefficients of Phi_N, lowest first, length degree + 1.
  const std::vector<long>& modulus() const { return modulus_; }
  // z^k reduced modulo Phi_N for 0 <= k < N.
  const std::vector<long>& power(long k) const;

  explicit CyclotomicField(long conductor);

 private:
  long conductor_;
  int degree_;
  std::vector<long> modulus_;
  std::vector<std::vector<long>> powers_;
};

std::vector<long> cyclotomic_polynomial(long n);

// Element of Q(zeta_N) in canonical reduced form.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(long numerator, long denominator);

  // Builds sum c_j z^j at conductor N; longer inputs are reduced.
  static Cyclotomic from_coefficients(long conductor, const std::vector<Rational>& coeffs);
  static Cyclotomic root_of_unity(long j, long conductor);
  static Cyclotomic parse(std::string_view text, long conductor);

  long conductor() const { return field_->conductor(); }
  const CyclotomicField& field() const { return *field_; }
  // Padded to the field degree.
  std::vector<Rational> coefficients() const;
  const std::vector<Rational>& raw() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;  // throws unless is_rational()

  Cyclotomic coerce(long target) const;
  std::optional<Cyclotomic> descend(long target) const;
  // Representation at the smallest conductor dividing the current one.
  Cyclotomic minimize_conductor() const;

  Cyclotomic inverse() const;
  Cyclotomic pow(long e) const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // "c0 + c1*z + c2*z^2" at the value's own conductor, rationals as p/q.
  std::string to_string() const;
  // Same text at a chosen (multiple) conductor.
  std::string to_string(long conductor) const;

 private:
  Cyclotomic(const CyclotomicField* field, std::vector<Rational> coeffs);
  void trim();
  static std::vector<Rational> reduce(const CyclotomicField& f, std::vector<Rational> poly);
  static void align(Cyclotomic& a, Cyclotomic& b);

  const CyclotomicField* field_;
  std::vector<Rational> coeffs_;  // empty means zero, otherwise length degree()
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c);

std::string rational_to_string(const Rational& r);
Rational parse_rational(std::string_view text);

}  // namespace qks
