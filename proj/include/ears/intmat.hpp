#pragma once

// Exact integer matrix utilities over Z: row Hermite normal form, Smith
// invariant factors, and integer span membership. Matrices are small (at most
// a dozen rows/columns) so we favor clarity over asymptotics; cpp_int keeps
// the elementary operations overflow-free.

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "ears/common.hpp"

namespace ears {

using BVec = std::vector<Int>;
using BMat = std::vector<BVec>;

inline BMat to_big(const IMat& m) {
  BMat r;
  r.reserve(m.size());
  for (const IVec& row : m) r.emplace_back(row.begin(), row.end());
  return r;
}

// Row Hermite normal form. Returns the nonzero rows in echelon order with
// positive pivots and the entries above each pivot reduced into [0, pivot).
inline BMat hnf_rows(BMat m) {
  if (m.empty()) return m;
  size_t cols = m[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < m.size(); ++col) {
    // Euclid on the entries of this column below the current rank row.
    while (true) {
      size_t piv = m.size();
      for (size_t i = rank; i < m.size(); ++i)
        if (m[i][col] != 0 && (piv == m.size() ||
                               abs(m[i][col]) < abs(m[piv][col])))
          piv = i;
      if (piv == m.size()) break;  // column is zero below rank
      std::swap(m[rank], m[piv]);
      bool reduced = true;
      for (size_t i = rank + 1; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        Int q = m[i][col] / m[rank][col];
        for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[rank][j];
        if (m[i][col] != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (m[rank][col] == 0) continue;
    if (m[rank][col] < 0)
      for (size_t j = 0; j < cols; ++j) m[rank][j] = -m[rank][j];
    // Reduce the rows above into [0, pivot).
    for (size_t i = 0; i < rank; ++i) {
      Int q = m[i][col] / m[rank][col];
      if (m[i][col] - q * m[rank][col] < 0) q -= 1;  // floor division
      if (q != 0)
        for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[rank][j];
    }
    ++rank;
  }
  m.resize(rank, BVec(cols, 0));
  return m;
}

// True if the rows span all of Z^n (the HNF is the n x n identity).
inline bool spans_full_lattice(const IMat& rows, size_t n) {
  BMat h = hnf_rows(to_big(rows));
  if (h.size() != n) return false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (h[i][j] != Int(i == j ? 1 : 0)) return false;
  return true;
}

// Reduce v modulo the row span of an HNF matrix; the result is the canonical
// residue (pivot coordinates in [0, pivot), floor reduction).
inline BVec reduce_mod_rows(const BMat& hnf, BVec v) {
  for (const BVec& row : hnf) {
    size_t col = 0;
    while (col < row.size() && row[col] == 0) ++col;
    if (col == row.size()) continue;
    Int q = v[col] / row[col];
    if (v[col] - q * row[col] < 0) q -= 1;
    if (q != 0)
      for (size_t j = 0; j < v.size(); ++j) v[j] -= q * row[j];
  }
  return v;
}

inline bool in_row_span(const BMat& hnf, const IVec& v) {
  BVec r = reduce_mod_rows(hnf, BVec(v.begin(), v.end()));
  for (const Int& x : r)
    if (x != 0) return false;
  return true;
}

// Solve x * basis = v over Z where basis is in HNF (independent rows).
// Returns false if no integer solution exists.
inline bool solve_in_basis(const BMat& basis, const IVec& v, BVec& x) {
  BVec r(v.begin(), v.end());
  x.assign(basis.size(), 0);
  for (size_t i = 0; i < basis.size(); ++i) {
    size_t col = 0;
    while (col < basis[i].size() && basis[i][col] == 0) ++col;
    if (col == basis[i].size()) continue;
    if (r[col] % basis[i][col] != 0) return false;
    Int q = r[col] / basis[i][col];
    x[i] = q;
    if (q != 0)
      for (size_t j = 0; j < r.size(); ++j) r[j] -= q * basis[i][j];
  }
  for (const Int& y : r)
    if (y != 0) return false;
  return true;
}

// Smith normal form invariant factors d_1 | d_2 | ... of an integer matrix.
inline std::vector<Int> smith_invariants(BMat m) {
  std::vector<Int> inv;
  if (m.empty() || m[0].empty()) return inv;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0, c = 0;
  while (r < rows && c < cols) {
    // Find the smallest nonzero entry in the remaining block.
    size_t pi = rows, pj = cols;
    for (size_t i = r; i < rows; ++i)
      for (size_t j = c; j < cols; ++j)
        if (m[i][j] != 0 &&
            (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    std::swap(m[r], m[pi]);
    for (size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pj]);
    bool clean = true;
    for (size_t i = r + 1; i < rows; ++i) {
      Int q = m[i][c] / m[r][c];
      if (q != 0)
        for (size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
      if (m[i][c] != 0) clean = false;
    }
    for (size_t j = c + 1; j < cols; ++j) {
      Int q = m[r][j] / m[r][c];
      if (q != 0)
        for (size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
      if (m[r][j] != 0) clean = false;
    }
    if (!clean) continue;  // repeat with a smaller pivot
    // Pivot must divide every remaining entry for the factors to chain.
    bool divides = true;
    for (size_t i = r + 1; i < rows && divides; ++i)
      for (size_t j = c + 1; j < cols && divides; ++j)
        if (m[i][j] % m[r][c] != 0) {
          for (size_t jj = c; jj < cols; ++jj) m[r][jj] += m[i][jj];
          divides = false;
        }
    if (!divides) continue;
    inv.push_back(abs(m[r][c]));
    ++r;
    ++c;
  }
  return inv;
}

}  // namespace ears
