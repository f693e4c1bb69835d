#pragma once

// Exact matrix model of the extended affine Weyl group. The ambient space
// extends the finite root space by the nu isotropic directions sigma_i and a
// dual copy lambda_i with (sigma_i, lambda_j) = delta_ij, which makes the
// form nondegenerate; reflections, translation maps, and the central
// commutators c_ij then become exact rational matrices on the basis
// (alpha_1..alpha_l, sigma_1..sigma_nu, lambda_1..lambda_nu). On top of the
// matrix layer sit the relation machinery (c_pair products and reduced
// collections), the Z2-valued parity maps used as obstruction certificates,
// and a bounded breadth-first word search for witness production.

#include <optional>
#include <string>
#include <vector>

#include "ears/common.hpp"
#include "ears/earoot.hpp"

namespace ears {

class HyperbolicSpace {
 public:
  explicit HyperbolicSpace(ExtAffineRootSystem sys);

  const ExtAffineRootSystem& system() const { return sys_; }
  int ell() const { return sys_.rank(); }
  int nu() const { return sys_.nu(); }
  int dim() const { return sys_.rank() + 2 * sys_.nu(); }
  const QMat& gram() const { return gram_; }

  // Coordinates of a root in the extended space: finite part, isotropic
  // part, and zero dual part.
  QVec embed(const Root& r) const;
  Rat pair(const QVec& u, const QVec& v) const;

 private:
  ExtAffineRootSystem sys_;
  QMat gram_;
};

// Group elements are exact rational matrices acting on column vectors.
using WeylElement = QMat;

WeylElement weyl_identity(const HyperbolicSpace& sp);
WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);
WeylElement weyl_inverse(const WeylElement& a);
WeylElement weyl_pow(const WeylElement& a, long long n);
QVec weyl_apply(const WeylElement& a, const QVec& v);
bool is_identity(const WeylElement& a);
bool word_equal(const WeylElement& a, const WeylElement& b);
bool preserves_gram(const HyperbolicSpace& sp, const WeylElement& a);

// Reflection in a nonisotropic vector (finite part nonzero); the argument
// does not need to lie in the system.
WeylElement reflection(const HyperbolicSpace& sp, const Root& a);

// Product of the reflections in the letters, leftmost letter outermost.
// Every letter must be a nonisotropic root of the system.
WeylElement word_eval(const HyperbolicSpace& sp, const std::vector<Root>& word);

// Translation map along the i-th isotropic direction (1-based) attached to a
// vector with finite and isotropic components only. Fixes the radical and
// shears the dual coordinate lambda_i.
WeylElement translation(const HyperbolicSpace& sp, int i, const Root& a);

// Central unipotent element fixing the root space pointwise and shearing the
// dual coordinates: lambda_r picks up +sigma_j/k at r = i and -sigma_i/k at
// r = j. Equals translation(i, -sigma_j).
WeylElement c_ij(const HyperbolicSpace& sp, int i, int j);

// The canonical central element attached to a nonisotropic root alpha and an
// isotropic vector sigma = sum m_i sigma_i, evaluated as the fixed
// reflection word
//   (w_{alpha+sigma} w_alpha) (w_alpha w_{alpha+sigma_1})^{m_1} ...
//                             (w_alpha w_{alpha+sigma_nu})^{m_nu}.
// alpha and alpha+sigma must be nonisotropic roots, and alpha+sigma_i must
// be one for every i with m_i != 0.
WeylElement c_pair(const HyperbolicSpace& sp, const Root& alpha,
                   const Root& sigma);

// The letter sequence of the c_pair word, for callers that need the word
// itself (parity evaluation on relators) rather than its matrix.
std::vector<Root> c_pair_word(const HyperbolicSpace& sp, const Root& alpha,
                              const Root& sigma);

// One factor of a central relation candidate: a sign, a choice between the
// highest short and highest long root as anchor, and the translation
// coefficients m over the isotropic directions. Long anchors may only
// translate along the tail directions sigma_{t+1}..sigma_nu.
struct ReducedTriple {
  int eps = 1;           // +1 or -1
  bool use_long = false; // anchor is the highest long root when set
  IVec m;                // length nu
};
using ReducedCollection = std::vector<ReducedTriple>;

// True when the balance condition sum_p k(anchor_p) eps_p m_ip m_jp = 0
// holds for every pair i < j, where k(anchor) is the squared length ratio
// for short anchors and 1 for long ones.
bool reduced_check(const HyperbolicSpace& sp, const ReducedCollection& coll);

// Evaluates prod_p c_pair(anchor_p, eta_p)^{eps_p} as a matrix and tests it
// against the identity.
bool relation_holds(const HyperbolicSpace& sp, const ReducedCollection& coll);

// A Z2-valued assignment on reflection generators, extended to words by
// summing mod 2. Three kinds are offered:
//   LengthPsi     1 on short roots, 0 on long roots (1 everywhere when the
//                 system is simply laced);
//   OrbitPhi      1 on the orbit coset of a reference root beta, available
//                 where a coset characterization of orbits exists (type A1:
//                 congruence mod twice the root lattice; type B2: short
//                 roots mod the long-root span, long roots mod twice the
//                 short-root span);
//   ShortCosetPsi 1 on short roots whose isotropic part lies in the coset
//                 sigma_i + <L>, for a head direction 1 <= i <= t.
struct ParityKind {
  enum Kind { LengthPsi, OrbitPhi, ShortCosetPsi };
  Kind kind = LengthPsi;
  Root beta;     // OrbitPhi reference root
  int index = 0; // ShortCosetPsi direction, 1-based

  static ParityKind length_psi();
  static ParityKind orbit_phi(Root beta);
  static ParityKind short_coset_psi(int i);
};

int parity_hom(const ExtAffineRootSystem& sys, const ParityKind& kind,
               const Root& alpha);
int parity_hom_word(const ExtAffineRootSystem& sys, const ParityKind& kind,
                    const std::vector<Root>& word);

// Breadth-first enumeration of products of the generator reflections up to
// the given word length. The first time the target matrix appears, the
// witness is the lexicographically least shortest word over the sorted
// generator list. If a whole layer adds no new elements the generated
// subgroup is finite and fully enumerated, so a miss is a certificate of
// nonmembership; otherwise a miss carries no such claim.
struct SearchResult {
  std::optional<std::vector<Root>> word;
  bool exhausted = false;
  std::size_t ball_size = 0;
};

SearchResult bounded_word_search(const HyperbolicSpace& sp,
                                 const WeylElement& target,
                                 std::vector<Root> gens, int maxlen);

}  // namespace ears
