#pragma once

// Extended affine root systems R = (S+S) u (R_sh + S) u (R_lg + L) over a
// finite root system of rank l with nullity nu and twist t. Points live in
// l+nu integer coordinates: l over the finite simple roots, nu over a basis
// sigma_1..sigma_nu of the span of S. S and L are semilattices; membership
// is decided exactly from residue-class data, never from a windowed scan.
//
// Storage convention: S decomposes as S1 on the first t iso coordinates
// (classes mod 2) with a full lattice on the remaining nu-t, and
// L = k*<S1> + S2 (first t coordinates divisible by k, S2 classes mod 2 on
// the tail). Simply laced systems keep their single semilattice S in the S2
// slot with rank nu and have no L.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ears/finroot.hpp"
#include "ears/lattice.hpp"

namespace ears {

struct Root {
  IVec fin;  // length l, simple-root coordinates
  IVec iso;  // length nu, sigma coordinates
  bool operator==(const Root&) const = default;
  bool operator<(const Root& o) const {
    return fin != o.fin ? fin < o.fin : iso < o.iso;
  }
};

Root operator+(const Root& a, const Root& b);
Root operator-(const Root& a, const Root& b);
Root operator-(const Root& a);
std::string to_string(const Root& r);

enum class RootClass { Short, Long, Isotropic, NotARoot };
const char* to_string(RootClass c);

class ExtAffineRootSystem {
 public:
  ExtAffineRootSystem(FiniteRootSystem fin, int nu, int t, Semilattice S1,
                      Semilattice S2);

  const FiniteRootSystem& finite() const { return fin_; }
  char xtype() const { return fin_.xtype; }
  int rank() const { return fin_.rank; }
  int nu() const { return nu_; }
  int twist() const { return t_; }
  int k() const { return fin_.k; }
  bool simply_laced() const { return fin_.simply_laced(); }
  const Semilattice& S1() const { return S1_; }
  const Semilattice& S2() const { return S2_; }

  // Membership predicates on iso coordinate vectors (length nu).
  bool in_S(const IVec& iso) const;
  bool in_L(const IVec& iso) const;
  bool in_R0(const IVec& iso) const;  // R0 = S+S

  RootClass contains(const Root& b) const;
  long long pair(const Root& a, const Root& b) const;
  long long cartan(const Root& b, const Root& a) const;  // <b, a^vee>
  Root reflect(const Root& a, const Root& b) const;      // w_a(b)

  int ind_R() const;  // the index invariant of the whole system
  // Generator matrices (rows, nu columns) for the spans <S> and <L>.
  IMat span_S_generators() const;
  IMat span_L_generators() const;

 private:
  FiniteRootSystem fin_;
  int nu_, t_;
  Semilattice S1_, S2_;
  std::vector<uint32_t> xor_S1_;  // supp(S1+S1), head classes of R0
  std::vector<uint32_t> xor_S2_;  // supp(S2+S2) (simply laced R0 classes)
};

// Raw residue-class description of a candidate pair (S, L), used to validate
// hand-built structures. head_mod is the divisibility constraint on the
// first t coordinates of L (equal to k for genuine systems).
struct RawStructure {
  int nu = 0, t = 0, k = 1;
  bool has_L = true;
  std::vector<uint32_t> supp_S1;      // masks over Z2^t
  std::vector<uint32_t> supp_S2;      // masks over Z2^(nu-t)
  int head_mod = 1;                   // L: first t coords divisible by this
  std::vector<uint32_t> supp_L_tail;  // L: tail classes mod 2
};

// Returns the violated clause names, empty when the structure is coherent.
// Clauses: "0 in S", "S spans", "0 in L", "L subset of S", "L+S=S",
// "kS+L=L".
std::vector<std::string> validate_structure(const RawStructure& raw);

// Constructs and validates a system. S1 must have rank t (rank 0 when the
// finite type is simply laced, in which case S goes in the S2 slot with rank
// nu). Throws TwistOutOfRange, DimensionMismatch, LatticeConstraintViolated
// (message names the violated clause), or the semilattice validation errors.
ExtAffineRootSystem build_ears(char xtype, int rank, int nu, int t,
                               const Semilattice& S1, const Semilattice& S2);

// Reflectable base emission. The general form lists one translated root per
// stored semilattice class; the nullity-two table form is the same set and
// additionally insists nu == 2. Auto picks the table form exactly when
// nu == 2.
enum class BaseVariant { General, NullityTwo, Auto };
// Anchor policy: translate extension representatives against a fixed simple
// root of each length (canonical) or against the highest root of each
// length.
enum class AnchorPolicy { SimpleAnchors, HighestAnchors };

std::vector<Root> canonical_base(const ExtAffineRootSystem& ears,
                                 BaseVariant variant = BaseVariant::Auto,
                                 AnchorPolicy policy = AnchorPolicy::SimpleAnchors);

// Tabulated cardinalities (total, short part, long part) of the canonical
// base. Simply laced systems of rank > 1 are not covered by the table;
// throws TypeNotCovered there. A1 has a single length class, reported as
// total with no short/long split.
struct ExpectedCardinalities {
  int total = 0;
  std::optional<int> shorts, longs;
};
ExpectedCardinalities expected_cardinalities(const ExtAffineRootSystem& ears);

// The alpha-string through beta: returns (d, u) maximal with
// beta - d*alpha .. beta + u*alpha all in R. Throws IsotropicRoot,
// RootOutsideSystem, CapExceeded, StringBroken (when d - u fails to match
// the Cartan pairing, which signals a malformed system).
std::pair<int, int> root_string(const ExtAffineRootSystem& ears, const Root& alpha,
                                const Root& beta, int cap);

// All nonisotropic roots with every iso coordinate in [-box, box]. The
// finite part ranges over the whole finite system.
std::vector<Root> roots_box(const ExtAffineRootSystem& ears, int box);
// All isotropic roots (elements of R0) in the same window, zero included.
std::vector<Root> isotropic_box(const ExtAffineRootSystem& ears, int box);

struct AxiomCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};
struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
  const AxiomCheck& by_name(const std::string& name) const;
};

// Windowed axiom audit: pairing integrality, reflection closure (exact
// membership of images), no doubled roots, isotropic differences in both
// directions at class level, existence of a nonisotropic shift for every
// isotropic root, connectivity, and full span.
AxiomReport verify_axioms(const ExtAffineRootSystem& ears, int box);

// True iff the graph on P with edges (a,b) != 0 is connected.
bool connectivity(const ExtAffineRootSystem& ears, const std::vector<Root>& P);

struct SubsystemReport {
  std::vector<Root> roots;  // sorted closure within the box
  int rank = 0;             // rank of the nonisotropic projection
  int nullity = 0;          // rank of the isotropic difference span
  char xtype = '?';         // inferred finite type of the projection
  int frank = 0;
  bool boundary_incomplete = false;  // some reflection image left the box
};

// Reflection closure of P inside the box, with inferred invariants of the
// subsystem it generates. Throws NotConnected or RootOutsideSystem.
SubsystemReport subsystem_RP(const ExtAffineRootSystem& ears,
                             const std::vector<Root>& P, int box);

}  // namespace ears
