#pragma once

// Semilattices and finite lattice quotients.
//
// A semilattice of rank nu is stored by its support: the set of mod-2 classes
// it occupies inside Z^nu. The set S it describes is the union of the cosets
// tau_J + 2 Z^nu over the support masks J, where tau_J is the 0/1 vector with
// bit set exactly on J. Closure under s +- 2s' is automatic for any support
// containing the zero mask, so validity is just "0 in supp" plus "the masks
// span F_2^nu". The index of S is |supp| - 1.

#include <cstdint>
#include <set>
#include <vector>

#include "ears/common.hpp"
#include "ears/intmat.hpp"

namespace ears {

struct Semilattice {
  int rank = 0;                 // may be 0 (trivial factor of a split)
  std::vector<uint32_t> supp;   // sorted, duplicate-free masks < (1 << rank)
};

// Throws MissingZero if the zero class is absent, NotSpanning if the masks do
// not span F_2^rank, IndexOutOfRange if a mask has bits outside the rank.
void semilattice_validate(const Semilattice& s);

// The canonical semilattice of the given rank and index: zero mask, all
// singleton masks, then the remaining masks in ascending numeric order until
// the support has ind + 1 elements. Throws IndexOutOfRange unless
// rank <= ind <= 2^rank - 1 (rank 0 requires ind 0).
Semilattice canonical_semilattice(int rank, int ind);

int semilattice_index(const Semilattice& s);

// Membership of an integer vector: its mod-2 mask lies in the support.
bool semilattice_contains(const Semilattice& s, const IVec& v);

uint32_t mod2_mask(const IVec& v);

// Support of S + S': all pairwise XORs.
std::vector<uint32_t> supp_sumset(const std::vector<uint32_t>& a,
                                  const std::vector<uint32_t>& b);

// Invariant factors of <big> / <sub> as abelian groups, both given by
// generating rows inside Z^n. Output: the invariant factors > 1 in ascending
// order followed by one 0 per free rank. Throws ContainmentViolation if some
// generator of sub is outside the span of big.
std::vector<Int> quotient_invariants(const IMat& big, const IMat& sub,
                                     size_t n);

// Canonical residues modulo a finite-index sublattice of Z^n.
class FiniteQuotient {
 public:
  // Rows must span a finite-index sublattice (rank n); throws NotSpanning
  // otherwise.
  FiniteQuotient(const IMat& sub_rows, size_t n);

  BVec residue(const IVec& v) const;
  Int order() const;
  std::vector<BVec> all_residues() const;
  size_t dim() const { return n_; }

 private:
  BMat hnf_;
  size_t n_;
};

// Verdict on a family of vectors viewed in the F_p-vector space <big>/<sub>,
// where p * big must be contained in sub (an elementary abelian quotient).
// Priority when several conditions fail: Duplicate, then Dependent, then
// NotSpanning. "IsBasis" means pairwise distinct images forming a basis.
enum class BasisVerdict { IsBasis, NotSpanning, Dependent, Duplicate };

BasisVerdict z2_basis_verdict(const IMat& vectors, const IMat& big,
                              const IMat& sub, int p);

const char* to_string(BasisVerdict v);

}  // namespace ears
