#include "ears/lattice.hpp"

#include <algorithm>
#include <map>

namespace ears {

void semilattice_validate(const Semilattice& s) {
  require(s.rank >= 0, "IndexOutOfRange", "negative semilattice rank");
  uint32_t full = (s.rank >= 32) ? 0xffffffffu : ((1u << s.rank) - 1u);
  for (uint32_t m : s.supp)
    require((m & ~full) == 0, "IndexOutOfRange",
            "support mask exceeds semilattice rank");
  require(std::find(s.supp.begin(), s.supp.end(), 0u) != s.supp.end(),
          "MissingZero", "semilattice support lacks the zero class");
  // The masks must span F_2^rank: row reduce them as bit vectors.
  std::vector<uint32_t> rows = s.supp;
  int mrank = 0;
  for (int bit = s.rank - 1; bit >= 0; --bit) {
    size_t piv = rows.size();
    for (size_t i = mrank; i < rows.size(); ++i)
      if (rows[i] & (1u << bit)) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[mrank], rows[piv]);
    for (size_t i = 0; i < rows.size(); ++i)
      if ((int)i != mrank && (rows[i] & (1u << bit))) rows[i] ^= rows[mrank];
    ++mrank;
  }
  require(mrank == s.rank, "NotSpanning",
          "semilattice support does not span the ambient lattice");
}

Semilattice canonical_semilattice(int rank, int ind) {
  require(rank >= 0 && rank < 31, "IndexOutOfRange", "unsupported rank");
  int max_ind = (1 << rank) - 1;
  require(ind >= rank && ind <= max_ind, "IndexOutOfRange",
          "semilattice index out of the legal range for this rank");
  Semilattice s;
  s.rank = rank;
  s.supp.push_back(0);
  for (int i = 0; i < rank; ++i) s.supp.push_back(1u << i);
  int extra = ind - rank;
  for (uint32_t m = 3; extra > 0 && m <= (uint32_t)max_ind; ++m) {
    if ((m & (m - 1)) == 0) continue;  // singleton, already present
    s.supp.push_back(m);
    --extra;
  }
  std::sort(s.supp.begin(), s.supp.end());
  return s;
}

int semilattice_index(const Semilattice& s) {
  return (int)s.supp.size() - 1;
}

uint32_t mod2_mask(const IVec& v) {
  uint32_t m = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (((v[i] % 2) + 2) % 2 == 1) m |= (1u << i);
  return m;
}

bool semilattice_contains(const Semilattice& s, const IVec& v) {
  require((int)v.size() == s.rank, "DimensionMismatch",
          "vector length differs from semilattice rank");
  uint32_t m = mod2_mask(v);
  return std::binary_search(s.supp.begin(), s.supp.end(), m);
}

std::vector<uint32_t> supp_sumset(const std::vector<uint32_t>& a,
                                  const std::vector<uint32_t>& b) {
  std::set<uint32_t> out;
  for (uint32_t x : a)
    for (uint32_t y : b) out.insert(x ^ y);
  return std::vector<uint32_t>(out.begin(), out.end());
}

std::vector<Int> quotient_invariants(const IMat& big, const IMat& sub,
                                     size_t n) {
  BMat basis = hnf_rows(to_big(big));
  // Express each generator of sub in the basis of big.
  BMat coords;
  for (const IVec& v : sub) {
    BVec x;
    require(solve_in_basis(basis, v, x), "ContainmentViolation",
            "sublattice generator outside the containing lattice");
    coords.push_back(x);
  }
  std::vector<Int> inv;
  if (!basis.empty()) {
    std::vector<Int> d = smith_invariants(coords);
    for (const Int& f : d)
      if (f > 1) inv.push_back(f);
    size_t free_rank = basis.size() - d.size();
    // Invariant factors equal to 1 contribute nothing; a zero per basis
    // direction not reached by sub marks a free summand.
    for (size_t i = 0; i < free_rank; ++i) inv.push_back(0);
  }
  (void)n;
  return inv;
}

FiniteQuotient::FiniteQuotient(const IMat& sub_rows, size_t n) : n_(n) {
  hnf_ = hnf_rows(to_big(sub_rows));
  require(hnf_.size() == n, "NotSpanning",
          "sublattice does not have finite index");
}

BVec FiniteQuotient::residue(const IVec& v) const {
  require(v.size() == n_, "DimensionMismatch", "vector/quotient size mismatch");
  return reduce_mod_rows(hnf_, BVec(v.begin(), v.end()));
}

Int FiniteQuotient::order() const {
  Int o = 1;
  for (size_t i = 0; i < n_; ++i) o *= hnf_[i][i];
  return o;
}

std::vector<BVec> FiniteQuotient::all_residues() const {
  std::set<BVec> out;
  std::vector<long long> box(n_, 0);
  while (true) {
    IVec v(box.begin(), box.end());
    out.insert(residue(v));
    size_t i = 0;
    for (; i < n_; ++i) {
      if (Int(++box[i]) < hnf_[i][i]) break;
      box[i] = 0;
    }
    if (i == n_) break;
  }
  return std::vector<BVec>(out.begin(), out.end());
}

namespace {

// Row reduce a list of F_p vectors in place; returns the rank. Vectors that
// reduce to zero are left as zero rows.
int modp_rank(std::vector<std::vector<int>>& rows, int p) {
  if (rows.empty()) return 0;
  size_t cols = rows[0].size();
  int rank = 0;
  for (size_t col = 0; col < cols; ++col) {
    size_t piv = rows.size();
    for (size_t i = rank; i < rows.size(); ++i)
      if (rows[i][col] % p != 0) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    int inv = 1;
    while ((rows[rank][col] * inv) % p != 1) ++inv;  // p is 2 or 3
    for (size_t j = 0; j < cols; ++j)
      rows[rank][j] = (rows[rank][j] * inv) % p;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == (size_t)rank) continue;
      int c = rows[i][col] % p;
      if (c == 0) continue;
      for (size_t j = 0; j < cols; ++j)
        rows[i][j] = ((rows[i][j] - c * rows[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::vector<int> reduce_against(const std::vector<std::vector<int>>& reduced,
                                std::vector<int> v, int p) {
  for (const auto& row : reduced) {
    size_t col = 0;
    while (col < row.size() && row[col] == 0) ++col;
    if (col == row.size()) continue;
    int c = v[col] % p;
    if (c == 0) continue;
    for (size_t j = 0; j < v.size(); ++j)
      v[j] = ((v[j] - c * row[j]) % p + p) % p;
  }
  return v;
}

}  // namespace

BasisVerdict z2_basis_verdict(const IMat& vectors, const IMat& big,
                              const IMat& sub, int p) {
  require(p == 2 || p == 3, "IndexOutOfRange", "verdict modulus must be 2 or 3");
  BMat basis = hnf_rows(to_big(big));
  size_t nb = basis.size();
  auto coords_mod_p = [&](const IVec& v) {
    BVec x;
    require(solve_in_basis(basis, v, x), "ContainmentViolation",
            "vector outside the containing lattice");
    std::vector<int> r(nb);
    for (size_t i = 0; i < nb; ++i) r[i] = (int)(((x[i] % p) + p) % p);
    return r;
  };
  // Reduced basis of the subspace W = image of sub in <big>/p<big>.
  std::vector<std::vector<int>> w;
  for (const IVec& v : sub) w.push_back(coords_mod_p(v));
  int wrank = modp_rank(w, p);
  w.resize(wrank);
  size_t qdim = nb - wrank;

  std::vector<std::vector<int>> imgs;
  for (const IVec& v : vectors)
    imgs.push_back(reduce_against(w, coords_mod_p(v), p));
  // Reduction against the echelon form of W is canonical, so two vectors are
  // congruent modulo sub exactly when their reductions agree.
  for (size_t i = 0; i < imgs.size(); ++i)
    for (size_t j = i + 1; j < imgs.size(); ++j)
      if (imgs[i] == imgs[j]) return BasisVerdict::Duplicate;

  std::vector<std::vector<int>> all = imgs;
  int irank = modp_rank(all, p);
  if ((size_t)irank < imgs.size()) return BasisVerdict::Dependent;
  if ((size_t)irank < qdim) return BasisVerdict::NotSpanning;
  return BasisVerdict::IsBasis;
}

const char* to_string(BasisVerdict v) {
  switch (v) {
    case BasisVerdict::IsBasis: return "basis";
    case BasisVerdict::NotSpanning: return "not-spanning";
    case BasisVerdict::Dependent: return "dependent";
    case BasisVerdict::Duplicate: return "duplicate";
  }
  return "?";
}

}  // namespace ears
