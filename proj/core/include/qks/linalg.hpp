#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qks/scalar.hpp"

namespace qks {

using DenseVector = std::vector<Cyclotomic>;
using SparseVector = std::vector<std::pair<std::size_t, Cyclotomic>>;  // sorted by index

DenseVector zero_vector(std::size_t n);
DenseVector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const DenseVector& v);
SparseVector to_sparse(const DenseVector& v);
DenseVector to_dense(const SparseVector& v, std::size_t n);
void axpy(DenseVector& y, const Cyclotomic& a, const SparseVector& x);  // y += a x
void axpy(DenseVector& y, const Cyclotomic& a, const DenseVector& x);

// Row-echelon basis of a subspace of k^dim, grown one vector at a time.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  // Subtracts basis rows so that v has no entry at any pivot.
  void reduce(DenseVector& v) const;
  bool contains(DenseVector v) const;
  // Returns true when v was independent of the current span.
  bool insert(DenseVector v);
  // Back-substitutes so every pivot column is zero outside its row.
  void make_reduced();

  std::vector<std::size_t> pivots() const;
  std::vector<std::size_t> free_columns() const;
  const std::map<std::size_t, SparseVector>& rows() const { return rows_; }
  std::vector<DenseVector> basis() const;

 private:
  std::size_t dim_;
  std::map<std::size_t, SparseVector> rows_;  // pivot -> row with 1 at the pivot
};

std::size_t rank_of(const std::vector<DenseVector>& rows, std::size_t ncols);
// Basis of {x : r . x = 0 for every row r}.
std::vector<DenseVector> null_space(const std::vector<DenseVector>& rows, std::size_t ncols);
// Some x with A x = b, A given by rows; nullopt if inconsistent.
std::optional<DenseVector> solve_linear(const std::vector<DenseVector>& rows, const DenseVector& rhs);

}  // namespace qks
