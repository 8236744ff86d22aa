#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qks/commpoly.hpp"
#include "qks/ncalgebra.hpp"

namespace qks {

class SkewRing;
using RingPtr = std::shared_ptr<const SkewRing>;

// T = A # G; construction checks that the action is well defined.
class SkewRing {
 public:
  static RingPtr make(AlgebraPtr algebra, GroupSpec group);

  const AlgebraPtr& algebra() const { return algebra_; }
  const GroupSpec& group() const { return group_; }
  std::string describe() const;

 private:
  SkewRing(AlgebraPtr a, GroupSpec g) : algebra_(std::move(a)), group_(std::move(g)) {}
  AlgebraPtr algebra_;
  GroupSpec group_;
};

class SkewElement {
 public:
  explicit SkewElement(RingPtr ring);

  static SkewElement from_algebra(RingPtr ring, const NCPoly& a);
  static SkewElement group_element(RingPtr ring, const GroupElement& f);
  static SkewElement term(RingPtr ring, const NCPoly& a, const GroupElement& f);
  static SkewElement scalar(RingPtr ring, const Cyclotomic& c);

  const RingPtr& ring() const { return ring_; }
  const std::map<GroupElement, NCPoly>& coeffs() const { return coeffs_; }
  NCPoly coefficient(const GroupElement& f) const;
  bool is_zero() const { return coeffs_.empty(); }
  bool has_denominator() const;

  SkewElement& operator+=(const SkewElement& o);
  SkewElement& operator-=(const SkewElement& o);
  SkewElement operator-() const;
  SkewElement scaled(const Cyclotomic& c) const;
  SkewElement pow(int e) const;
  friend SkewElement operator+(SkewElement a, const SkewElement& b) { return a += b; }
  friend SkewElement operator-(SkewElement a, const SkewElement& b) { return a -= b; }
  friend SkewElement operator*(const SkewElement& a, const SkewElement& b);
  friend bool operator==(const SkewElement& a, const SkewElement& b);
  friend bool operator!=(const SkewElement& a, const SkewElement& b) { return !(a == b); }

  std::string to_string(long conductor = 0) const;

 private:
  void put(const GroupElement& f, NCPoly a);
  RingPtr ring_;
  std::map<GroupElement, NCPoly> coeffs_;
};

SkewElement skew_multiply(const SkewElement& x, const SkewElement& y);
bool is_central(const SkewElement& x);

// Exponent window used by the graded solvers.
struct Window {
  int degree_bound;
  int u_min, u_max, v_min, v_max;
  bool contains(const Monomial& m) const {
    return m.a >= u_min && m.a <= u_max && m.b >= v_min && m.b <= v_max &&
           (laurent || (m.degree() >= 0 && m.degree() <= degree_bound));
  }
  bool laurent;
  std::vector<int> degrees() const;
  std::vector<Monomial> monomials(int degree) const;
};
Window make_window(const AlgebraSpec& a, int d);

struct GradedSkewPiece {
  int degree;
  std::vector<SkewElement> basis;
};
struct GradedPolyPiece {
  int degree;
  std::vector<NCPoly> basis;
};

std::vector<GradedSkewPiece> center_basis(const RingPtr& ring, int d);
std::vector<GradedPolyPiece> invariant_basis(const AlgebraPtr& a, const GroupSpec& g, int d);
// Z(A)^G: elements of A commuting with u, v and fixed by G.
std::vector<GradedPolyPiece> invariant_center_basis(const AlgebraPtr& a, const GroupSpec& g, int d);
std::size_t total_dimension(const std::vector<GradedSkewPiece>& pieces);

struct CentralGenerator {
  std::string name;
  SkewElement element;
  int degree = 0;
};

struct CentralPresentation {
  std::vector<CentralGenerator> generators;
  std::vector<CommPoly> relations;     // in the generator names, must vanish in T
  std::vector<CommPoly> localized_at;  // must be nonzero at every point
  std::vector<std::pair<std::size_t, std::size_t>> inverse_pairs;

  std::vector<std::string> names() const;
  std::size_t index_of(const std::string& name) const;
  CommPoly var(const std::string& name) const;
  void add_generator(std::string name, SkewElement element);
  // Adds name_inv and the relation name * name_inv = 1.
  void add_inverse(const std::string& name, SkewElement inverse);
  CentralPresentation without(const std::string& name) const;
};

// A point of MaxSpec given by generator values; violation text if inadmissible.
std::optional<std::string> point_violation(const CentralPresentation& p, const std::vector<Cyclotomic>& values);
std::string describe_relation(const CentralPresentation& p, const CommPoly& r);

struct DegreeComparison {
  int degree;
  std::size_t claimed;
  std::size_t computed;
};

struct GeneratingSetReport {
  bool ok = true;
  bool spans_checked = false;
  std::string failure;
  std::vector<DegreeComparison> degrees;
};

GeneratingSetReport verify_generating_set(const CentralPresentation& claimed, const RingPtr& ring, int d);
SkewElement evaluate_relation(const CentralPresentation& p, const CommPoly& r, const RingPtr& ring);

// Coordinates on Z(A) that G permutes up to scalars.
struct CoordinateSystem {
  std::vector<std::string> names;
  std::vector<NCPoly> elements;
};

struct CoordinateAction {
  std::vector<std::size_t> perm;   // f.z_i = scale_i * z_{perm_i}
  std::vector<Cyclotomic> scale;
};

CoordinateAction coordinate_action(const CoordinateSystem& c, const GroupSpec& g, const GroupElement& f);
std::vector<GroupElement> stabilizer_of_point(const CoordinateSystem& c, const GroupSpec& g,
                                              const std::vector<Cyclotomic>& values);
// Modifies seed values so that f fixes the point; cycles with scalar product != 1 become zero.
std::vector<Cyclotomic> fixed_point_of(const CoordinateSystem& c, const GroupSpec& g, const GroupElement& f,
                                       const std::vector<Cyclotomic>& seed);

}  // namespace qks
