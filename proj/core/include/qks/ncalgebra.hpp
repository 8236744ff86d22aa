#pragma once

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qks/scalar.hpp"

namespace qks {

class algebra_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class action_undefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class not_invertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// u^a v^b in normal order.
struct Monomial {
  int a = 0;
  int b = 0;
  int degree() const { return a + b; }
  auto operator<=>(const Monomial&) const = default;
};

using TermMap = std::map<Monomial, Cyclotomic>;

enum class AlgebraKind { commutative, quantum_plane, jordan_plane };

class AlgebraSpec;
using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

class AlgebraSpec {
 public:
  static AlgebraPtr commutative(bool invert_u = false, bool invert_v = false);
  static AlgebraPtr quantum_plane(const Cyclotomic& q, bool invert_u = false, bool invert_v = false);
  static AlgebraPtr jordan_plane(bool invert_u = false);
  // Same algebra with central denominators adjoined; each is checked central and nonzero.
  static AlgebraPtr with_denominators(const AlgebraPtr& base, std::vector<TermMap> denominators);

  AlgebraKind kind() const { return kind_; }
  const Cyclotomic& q() const { return q_; }
  bool inverted_u() const { return inv_u_; }
  bool inverted_v() const { return inv_v_; }
  bool laurent() const { return inv_u_ || inv_v_; }
  const std::vector<TermMap>& denominators() const { return denominators_; }
  std::string describe() const;

  bool same_as(const AlgebraSpec& o) const;
  bool admits(const Monomial& m) const;

  // Normal form of (u^a v^b)(u^c v^d).
  TermMap multiply_monomials(const Monomial& x, const Monomial& y) const;
  TermMap multiply(const TermMap& x, const TermMap& y) const;
  Cyclotomic q_power(long e) const;

 private:
  AlgebraSpec() = default;
  AlgebraKind kind_ = AlgebraKind::commutative;
  Cyclotomic q_ = Cyclotomic(1);
  bool inv_u_ = false;
  bool inv_v_ = false;
  std::vector<TermMap> denominators_;
  std::vector<Cyclotomic> q_cycle_;  // q^0..q^(r-1) when q has finite order r
};

// Element N / prod D_i^{e_i} of A with N in normal form.
class NCPoly {
 public:
  explicit NCPoly(AlgebraPtr algebra);
  NCPoly(AlgebraPtr algebra, TermMap terms, std::vector<int> denominator = {});

  static NCPoly scalar(AlgebraPtr algebra, const Cyclotomic& c);
  static NCPoly monomial(AlgebraPtr algebra, int a, int b, const Cyclotomic& c = Cyclotomic(1));
  static NCPoly u(AlgebraPtr algebra) { return monomial(std::move(algebra), 1, 0); }
  static NCPoly v(AlgebraPtr algebra) { return monomial(std::move(algebra), 0, 1); }
  // 1 / D_index.
  static NCPoly denominator_inverse(AlgebraPtr algebra, std::size_t index, int power = 1);

  const AlgebraPtr& algebra() const { return algebra_; }
  const TermMap& terms() const { return terms_; }
  const std::vector<int>& denominator() const { return denominator_; }
  bool has_denominator() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  Cyclotomic coefficient(const Monomial& m) const;

  NCPoly graded_component(int d) const;
  // Numerator times the denominators needed to reach `target` exponents.
  TermMap numerator_over(const std::vector<int>& target) const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator-() const;
  NCPoly scaled(const Cyclotomic& c) const;
  NCPoly pow(int e) const;
  // Inverse of an invertible monomial (scalar times u^a v^b).
  NCPoly monomial_inverse() const;

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend bool operator==(const NCPoly& a, const NCPoly& b);
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  std::string to_string(long conductor = 0) const;

 private:
  void check_terms() const;
  AlgebraPtr algebra_;
  TermMap terms_;
  std::vector<int> denominator_;  // length = number of denominators, or empty
};

NCPoly nc_multiply(const NCPoly& x, const NCPoly& y);
NCPoly graded_component(const NCPoly& x, int d);
std::string terms_to_string(const TermMap& t, long conductor = 0);
void add_term(TermMap& t, const Monomial& m, const Cyclotomic& c);
void add_terms(TermMap& t, const TermMap& s, const Cyclotomic& scale = Cyclotomic(1));

enum class GroupKind { cyclic, symmetric2, dihedral };

// g^i h^j in normal form.
struct GroupElement {
  int i = 0;
  int j = 0;
  auto operator<=>(const GroupElement&) const = default;
};

class GroupSpec {
 public:
  static GroupSpec cyclic(int n, const Cyclotomic& omega);
  static GroupSpec symmetric2();
  static GroupSpec dihedral(int n, const Cyclotomic& omega);
  static GroupSpec trivial() { return cyclic(1, Cyclotomic(1)); }

  GroupKind kind() const { return kind_; }
  int n() const { return n_; }
  const Cyclotomic& omega() const { return omega_; }
  int order() const;
  std::vector<GroupElement> elements() const;
  std::vector<GroupElement> generators() const;
  GroupElement identity() const { return {}; }
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const;
  GroupElement inverse(const GroupElement& x) const;
  GroupElement normalize(int i, int j) const;
  bool contains(const GroupElement& x) const;
  std::string name(const GroupElement& x) const;
  std::string describe() const;
  bool operator==(const GroupSpec& o) const;

  // f.u = first.first * (u if first.second == 0 else v); likewise for v.
  struct GeneratorImage {
    Cyclotomic coef;
    int var;  // 0 = u, 1 = v
  };
  std::pair<GeneratorImage, GeneratorImage> generator_images(const GroupElement& f) const;

 private:
  GroupKind kind_ = GroupKind::cyclic;
  int n_ = 1;
  Cyclotomic omega_ = Cyclotomic(1);
  std::vector<Cyclotomic> omega_powers_;
};

GroupElement group_multiply(const GroupSpec& g, const GroupElement& x, const GroupElement& y);

// Image of x under the automorphism f.
NCPoly apply_automorphism(const GroupSpec& g, const GroupElement& f, const NCPoly& x);
TermMap apply_automorphism_terms(const AlgebraSpec& a, const GroupSpec& g, const GroupElement& f,
                                 const TermMap& x);
// f.D_i = c * D_{perm[i]} for each extra denominator; throws action_undefined otherwise.
std::vector<std::pair<std::size_t, Cyclotomic>> denominator_action(const AlgebraSpec& a, const GroupSpec& g,
                                                                   const GroupElement& f);

bool check_action_well_defined(const AlgebraPtr& a, const GroupSpec& g);
bool check_inner_by(const AlgebraPtr& a, const GroupSpec& g, const GroupElement& f, const NCPoly& c);

}  // namespace qks
