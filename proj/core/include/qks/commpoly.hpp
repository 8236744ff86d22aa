#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qks/scalar.hpp"

namespace qks {

// Commutative polynomial in a fixed number of named-by-position variables.
class CommPoly {
 public:
  using Exponents = std::vector<int>;

  explicit CommPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static CommPoly constant(std::size_t nvars, const Cyclotomic& c);
  static CommPoly variable(std::size_t nvars, std::size_t index);
  // Grammar: sums of products of rationals and names with optional ^power.
  static CommPoly parse(std::string_view text, const std::vector<std::string>& names);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int weighted_degree(const std::vector<int>& weights) const;

  CommPoly& operator+=(const CommPoly& o);
  CommPoly& operator-=(const CommPoly& o);
  CommPoly operator-() const;
  CommPoly scaled(const Cyclotomic& c) const;
  CommPoly pow(int e) const;
  friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
  friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }
  friend CommPoly operator*(const CommPoly& a, const CommPoly& b);
  friend bool operator==(const CommPoly& a, const CommPoly& b) { return a.terms_ == b.terms_; }

  Cyclotomic evaluate(const std::vector<Cyclotomic>& values) const;
  // Substitutes polynomials for the variables.
  CommPoly substitute(const std::vector<CommPoly>& images) const;

  // Evaluates in any ring given a unit, a product and a scalar action.
  template <class T, class Mul, class Scale>
  T evaluate_in(const std::vector<T>& values, const T& one, const T& zero, Mul mul, Scale scale) const {
    std::vector<std::vector<T>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(one);
    auto power = [&](std::size_t i, int e) -> const T& {
      while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(mul(powers[i].back(), values[i]));
      return powers[i][static_cast<std::size_t>(e)];
    };
    T acc = zero;
    for (const auto& [ex, c] : terms_) {
      T t = one;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (ex[i] > 0) t = mul(t, power(i, ex[i]));
      }
      acc = acc + scale(t, c);
    }
    return acc;
  }

  std::string to_string(const std::vector<std::string>& names, long conductor = 0) const;

 private:
  void add(const Exponents& e, const Cyclotomic& c);
  std::size_t nvars_;
  std::map<Exponents, Cyclotomic> terms_;
};

}  // namespace qks
