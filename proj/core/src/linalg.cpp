#include "qks/linalg.hpp"

#include <stdexcept>

namespace qks {

DenseVector zero_vector(std::size_t n) { return DenseVector(n); }

DenseVector unit_vector(std::size_t n, std::size_t i) {
  DenseVector v(n);
  v.at(i) = Cyclotomic(1);
  return v;
}

bool is_zero(const DenseVector& v) {
  for (const auto& c : v) {
    if (!c.is_zero()) return false;
  }
  return true;
}

SparseVector to_sparse(const DenseVector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  }
  return out;
}

DenseVector to_dense(const SparseVector& v, std::size_t n) {
  DenseVector out(n);
  for (const auto& [i, c] : v) out.at(i) = c;
  return out;
}

void axpy(DenseVector& y, const Cyclotomic& a, const SparseVector& x) {
  if (a.is_zero()) return;
  for (const auto& [i, c] : x) y[i] += a * c;
}

void axpy(DenseVector& y, const Cyclotomic& a, const DenseVector& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) y[i] += a * x[i];
  }
}

void EchelonBasis::reduce(DenseVector& v) const {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: dimension mismatch");
  for (const auto& [p, row] : rows_) {
    if (v[p].is_zero()) continue;
    Cyclotomic c = -v[p];
    axpy(v, c, row);
  }
}

bool EchelonBasis::contains(DenseVector v) const {
  reduce(v);
  return is_zero(v);
}

bool EchelonBasis::insert(DenseVector v) {
  reduce(v);
  std::size_t p = 0;
  while (p < v.size() && v[p].is_zero()) ++p;
  if (p == v.size()) return false;
  Cyclotomic inv = v[p].inverse();
  SparseVector row;
  for (std::size_t i = p; i < v.size(); ++i) {
    if (!v[i].is_zero()) row.emplace_back(i, i == p ? Cyclotomic(1) : v[i] * inv);
  }
  rows_.emplace(p, std::move(row));
  return true;
}

void EchelonBasis::make_reduced() {
  // Work from the last pivot upwards, clearing that column in earlier rows.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    std::size_t p = it->first;
    const SparseVector& prow = it->second;
    for (auto jt = rows_.begin(); jt->first < p; ++jt) {
      SparseVector& r = jt->second;
      Cyclotomic c;
      for (const auto& [i, val] : r) {
        if (i == p) {
          c = val;
          break;
        }
      }
      if (c.is_zero()) continue;
      DenseVector d = to_dense(r, dim_);
      axpy(d, -c, prow);
      r = to_sparse(d);
    }
  }
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, _] : rows_) out.push_back(p);
  return out;
}

std::vector<std::size_t> EchelonBasis::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!rows_.count(i)) out.push_back(i);
  }
  return out;
}

std::vector<DenseVector> EchelonBasis::basis() const {
  std::vector<DenseVector> out;
  for (const auto& [_, r] : rows_) out.push_back(to_dense(r, dim_));
  return out;
}

std::size_t rank_of(const std::vector<DenseVector>& rows, std::size_t ncols) {
  EchelonBasis e(ncols);
  for (const auto& r : rows) {
    e.insert(r);
    if (e.rank() == ncols) break;
  }
  return e.rank();
}

std::vector<DenseVector> null_space(const std::vector<DenseVector>& rows, std::size_t ncols) {
  EchelonBasis e(ncols);
  for (const auto& r : rows) {
    e.insert(r);
    if (e.rank() == ncols) break;
  }
  e.make_reduced();
  std::vector<DenseVector> out;
  for (std::size_t f : e.free_columns()) {
    DenseVector x(ncols);
    x[f] = Cyclotomic(1);
    for (const auto& [p, row] : e.rows()) {
      for (const auto& [i, c] : row) {
        if (i == f) x[p] = -c;
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<DenseVector> solve_linear(const std::vector<DenseVector>& rows, const DenseVector& rhs) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("solve_linear: size mismatch");
  if (rows.empty()) return DenseVector{};
  const std::size_t n = rows[0].size();
  EchelonBasis e(n + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    DenseVector aug = rows[i];
    aug.push_back(rhs[i]);
    e.insert(std::move(aug));
  }
  if (e.rows().count(n)) return std::nullopt;
  e.make_reduced();
  DenseVector x(n);
  for (const auto& [p, row] : e.rows()) {
    for (const auto& [i, c] : row) {
      if (i == n) x[p] = c;
    }
  }
  return x;
}

}  // namespace qks
