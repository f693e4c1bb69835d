#pragma once

// Finite irreducible reduced root systems in simple-root coordinates. The
// Gram matrix carries the bilinear form, normalized so short roots have norm
// 2; every root is an integer vector over the simple basis, so all pairings
// and Cartan integers are exact.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ears/common.hpp"

namespace ears {

struct FiniteRootSystem {
  char xtype = 'A';  // 'A'..'G'
  int rank = 0;
  IMat gram;                    // rank x rank, symmetric
  std::vector<IVec> roots;      // all nonzero roots
  std::vector<bool> root_long;  // parallel to roots
  int k = 1;                    // long norm / short norm (1 if simply laced)

  bool simply_laced() const { return k == 1; }
  long long pair(const IVec& a, const IVec& b) const;
  long long norm(const IVec& a) const { return pair(a, a); }
  // Cartan integer <b, a^vee> = 2 (b,a) / (a,a).
  long long cartan(const IVec& b, const IVec& a) const;
  IVec reflect(const IVec& a, const IVec& b) const;  // w_a(b)
  bool is_root(const IVec& v) const;
  bool is_short_root(const IVec& v) const;
  bool is_long_root(const IVec& v) const;
  IVec simple(int i) const;  // alpha_i, 1-based

  // Highest short and highest long roots (height-maximal per length class).
  // For simply laced systems both coincide with the highest root.
  IVec theta_short() const;
  IVec theta_long() const;

 private:
  mutable std::map<IVec, size_t> index_;
  void build_index() const;
};

// Throws IllegalTypeRank on an illegal (type, rank) pair. Legal: A >= 1,
// B >= 2, C >= 3, D >= 4, E in {6,7,8}, F = 4, G = 2.
FiniteRootSystem build_finite(char xtype, int rank);

// Brute-force classification of a subset of nonzero roots:
//   Base            - W_P P covers all roots and no proper subset does
//   SetNotBase      - W_P P covers all roots, some proper subset also does
//   NotReflectable  - W_P P misses some root
// An element that is not a root of the system throws NotSet.
enum class FiniteVerdict { Base, SetNotBase, NotReflectable };

FiniteVerdict finite_reflectable_oracle(const FiniteRootSystem& frs,
                                        const std::vector<IVec>& P);

const char* to_string(FiniteVerdict v);

// True iff the reflections through P generate the full finite Weyl group and
// no proper subset does. Uses full group enumeration (as permutations of the
// root set).
bool finite_min_gen_oracle(const FiniteRootSystem& frs,
                           const std::vector<IVec>& P);

// Order of the finite Weyl group by permutation enumeration.
size_t finite_weyl_order(const FiniteRootSystem& frs);

}  // namespace ears
