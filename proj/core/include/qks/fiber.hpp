#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qks/linalg.hpp"
#include "qks/skewring.hpp"

namespace qks {

class inconsistent_recipe : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Associative unital algebra given by structure constants on a basis.
struct FiniteDimAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<std::vector<SparseVector>> table;  // table[i][j] = b_i b_j
  DenseVector unit;
  // Optional algebra generators; when empty the whole basis is used.
  std::vector<DenseVector> generators;

  DenseVector multiply(const DenseVector& x, const DenseVector& y) const;
  DenseVector basis_vector(std::size_t i) const { return unit_vector(dim, i); }
  std::vector<DenseVector> generating_set() const;
};

// Checks every basis triple when dim <= exhaustive_limit, otherwise `samples` seeded random triples.
bool is_associative(const FiniteDimAlgebra& f, std::size_t exhaustive_limit = 40, std::size_t samples = 2000,
                    std::uint64_t seed = 1);
bool is_unital(const FiniteDimAlgebra& f);

std::vector<DenseVector> trace_form(const FiniteDimAlgebra& f);
std::size_t trace_form_rank(const FiniteDimAlgebra& f);
std::size_t center_dimension(const FiniteDimAlgebra& f);
// Kernel of the trace form; in characteristic zero this is the Jacobson radical.
std::vector<DenseVector> jacobson_radical(const FiniteDimAlgebra& f);
std::size_t jacobson_radical_dim(const FiniteDimAlgebra& f);
// F / I for a two-sided ideal I given by a spanning set.
FiniteDimAlgebra quotient_algebra(const FiniteDimAlgebra& f, const std::vector<DenseVector>& ideal);
FiniteDimAlgebra semisimple_quotient(const FiniteDimAlgebra& f);
// Smallest two-sided ideal containing the seeds.
std::vector<DenseVector> ideal_closure(const FiniteDimAlgebra& f, const std::vector<DenseVector>& seeds);

struct MatrixCertificate {
  bool central_simple = false;
  int d = 0;
  std::string witness;
  std::size_t dim = 0;
  std::size_t trace_rank = 0;
  std::size_t center_dim = 0;
  std::string to_string() const;
};
MatrixCertificate matrix_algebra_certificate(const FiniteDimAlgebra& f);

// Reference algebras.
FiniteDimAlgebra matrix_algebra(int n);
FiniteDimAlgebra truncated_polynomial_algebra(int k);  // k[t]/t^k
FiniteDimAlgebra split_algebra(int n);                 // k^n

// Rewriting data for T/mT: u^{k_u} = sum u_rule[i] u^i and a rule for v^{k_v}.
struct FiberRecipe {
  enum class VRule { polynomial, monomial };
  int k_u = 1;
  std::vector<Cyclotomic> u_rule;
  int k_v = 1;
  VRule v_kind = VRule::polynomial;
  std::vector<Cyclotomic> v_rule;  // polynomial: v^{k_v} = sum v_rule[j] v^j
  Cyclotomic v_coef;               // monomial: v^{k_v} = v_coef u^{v_u_exponent}
  int v_u_exponent = 0;
  std::vector<SkewElement> residual_relations;  // extra elements to kill
};

struct FiberBuild {
  FiniteDimAlgebra ambient;  // T modulo the monomial reductions
  FiniteDimAlgebra fiber;    // ambient modulo the residual ideal
};

// Quotient of T by the ideal of (generator - value) and the recipe reductions.
FiberBuild build_fiber_with_ambient(const RingPtr& ring, const CentralPresentation& p,
                                    const std::vector<Cyclotomic>& values, const FiberRecipe& recipe);
FiniteDimAlgebra build_fiber(const RingPtr& ring, const CentralPresentation& p, const std::vector<Cyclotomic>& values,
                             const FiberRecipe& recipe);

}  // namespace qks
