#include "ears/weyl.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <utility>

namespace ears {

namespace {

// A reflection letter must name a nonisotropic root of the system.
void check_letter(const ExtAffineRootSystem& sys, const Root& r) {
  RootClass c = sys.contains(r);
  if (c == RootClass::Isotropic)
    fail("IsotropicRoot", "cannot reflect in the isotropic vector " + to_string(r));
  if (c == RootClass::NotARoot)
    fail("RootOutsideSystem", to_string(r) + " is not a root of the system");
}

Root sigma_unit(const HyperbolicSpace& sp, int i, long long c) {
  Root r;
  r.fin.assign(sp.ell(), 0);
  r.iso.assign(sp.nu(), 0);
  r.iso[i - 1] = c;
  return r;
}

long long mod_pos(long long x, long long m) { return ((x % m) + m) % m; }

}  // namespace

HyperbolicSpace::HyperbolicSpace(ExtAffineRootSystem sys) : sys_(std::move(sys)) {
  int l = sys_.rank(), n = sys_.nu(), d = l + 2 * n;
  gram_.assign(d, QVec(d, Rat(0)));
  const IMat& g = sys_.finite().gram;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) gram_[i][j] = g[i][j];
  for (int i = 0; i < n; ++i) {
    gram_[l + i][l + n + i] = 1;
    gram_[l + n + i][l + i] = 1;
  }
}

QVec HyperbolicSpace::embed(const Root& r) const {
  require(static_cast<int>(r.fin.size()) == ell() &&
              static_cast<int>(r.iso.size()) == nu(),
          "DimensionMismatch", "root coordinates do not match the system");
  QVec v(dim(), Rat(0));
  for (int i = 0; i < ell(); ++i) v[i] = r.fin[i];
  for (int i = 0; i < nu(); ++i) v[ell() + i] = r.iso[i];
  return v;
}

Rat HyperbolicSpace::pair(const QVec& u, const QVec& v) const {
  require(u.size() == gram_.size() && v.size() == gram_.size(),
          "DimensionMismatch", "vector length does not match the space");
  Rat s(0);
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    Rat row(0);
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) row += gram_[i][j] * v[j];
    s += u[i] * row;
  }
  return s;
}

WeylElement weyl_identity(const HyperbolicSpace& sp) {
  int d = sp.dim();
  WeylElement m(d, QVec(d, Rat(0)));
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {
  size_t d = a.size();
  require(d > 0 && b.size() == d && a[0].size() == d && b[0].size() == d,
          "DimensionMismatch", "matrix sizes do not agree");
  WeylElement r(d, QVec(d, Rat(0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < d; ++j)
        if (b[k][j] != 0) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

WeylElement weyl_inverse(const WeylElement& a) {
  size_t d = a.size();
  // Gauss-Jordan on [a | I]; exact rational pivoting.
  QMat m(d, QVec(2 * d, Rat(0)));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) m[i][j] = a[i][j];
    m[i][d + i] = 1;
  }
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (piv < d && m[piv][col] == 0) ++piv;
    require(piv < d, "InternalError", "singular matrix has no inverse");
    std::swap(m[col], m[piv]);
    Rat p = m[col][col];
    for (size_t j = 0; j < 2 * d; ++j) m[col][j] /= p;
    for (size_t i = 0; i < d; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = 0; j < 2 * d; ++j) m[i][j] -= f * m[col][j];
    }
  }
  WeylElement r(d, QVec(d, Rat(0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) r[i][j] = m[i][d + j];
  return r;
}

WeylElement weyl_pow(const WeylElement& a, long long n) {
  size_t d = a.size();
  WeylElement base = n < 0 ? weyl_inverse(a) : a;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-n)
                               : static_cast<unsigned long long>(n);
  WeylElement r(d, QVec(d, Rat(0)));
  for (size_t i = 0; i < d; ++i) r[i][i] = 1;
  while (e) {
    if (e & 1) r = weyl_mul(r, base);
    base = weyl_mul(base, base);
    e >>= 1;
  }
  return r;
}

QVec weyl_apply(const WeylElement& a, const QVec& v) {
  size_t d = a.size();
  require(v.size() == d, "DimensionMismatch", "vector length does not match");
  QVec r(d, Rat(0));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      if (a[i][j] != 0 && v[j] != 0) r[i] += a[i][j] * v[j];
  return r;
}

bool is_identity(const WeylElement& a) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != Rat(i == j ? 1 : 0)) return false;
  return true;
}

bool word_equal(const WeylElement& a, const WeylElement& b) { return a == b; }

bool preserves_gram(const HyperbolicSpace& sp, const WeylElement& a) {
  // M^T G M == G, checked entrywise.
  const QMat& g = sp.gram();
  size_t d = g.size();
  if (a.size() != d) return false;
  QMat gm(d, QVec(d, Rat(0)));
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k)
      if (g[i][k] != 0)
        for (size_t j = 0; j < d; ++j) gm[i][j] += g[i][k] * a[k][j];
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      Rat s(0);
      for (size_t k = 0; k < d; ++k)
        if (a[k][i] != 0) s += a[k][i] * gm[k][j];
      if (s != g[i][j]) return false;
    }
  return true;
}

WeylElement reflection(const HyperbolicSpace& sp, const Root& a) {
  QVec v = sp.embed(a);
  int d = sp.dim();
  QVec gv(d, Rat(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (sp.gram()[i][j] != 0 && v[j] != 0) gv[i] += sp.gram()[i][j] * v[j];
  Rat nn(0);
  for (int i = 0; i < d; ++i) nn += v[i] * gv[i];
  require(nn != 0, "IsotropicRoot",
          "cannot reflect in the isotropic vector " + to_string(a));
  WeylElement m = weyl_identity(sp);
  for (int r = 0; r < d; ++r) {
    if (v[r] == 0) continue;
    for (int c = 0; c < d; ++c)
      if (gv[c] != 0) m[r][c] -= v[r] * 2 * gv[c] / nn;
  }
  return m;
}

WeylElement word_eval(const HyperbolicSpace& sp, const std::vector<Root>& word) {
  WeylElement m = weyl_identity(sp);
  for (const Root& r : word) {
    check_letter(sp.system(), r);
    m = weyl_mul(m, reflection(sp, r));
  }
  return m;
}

WeylElement translation(const HyperbolicSpace& sp, int i, const Root& a) {
  require(i >= 1 && i <= sp.nu(), "IndexOutOfRange",
          "translation direction out of range");
  int d = sp.dim(), l = sp.ell(), n = sp.nu();
  long long k = sp.system().k();
  QVec v = sp.embed(a);
  QVec gv(d, Rat(0));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (sp.gram()[r][c] != 0 && v[c] != 0) gv[r] += sp.gram()[r][c] * v[c];
  Rat nn(0);
  for (int r = 0; r < d; ++r) nn += v[r] * gv[r];
  // Column action: basis vectors pair with sigma_i/k only in the lambda_i
  // column, so every other column just shears by (e_c, a) sigma_i / k, and
  // the lambda_i column additionally moves by -a/k and the norm correction.
  int srow = l + i - 1, lcol = l + n + i - 1;
  WeylElement m = weyl_identity(sp);
  for (int c = 0; c < d; ++c)
    if (gv[c] != 0) m[srow][c] += gv[c] / k;
  for (int r = 0; r < d; ++r)
    if (v[r] != 0) m[r][lcol] -= v[r] / k;
  m[srow][lcol] -= nn / (2 * k * k);
  return m;
}

WeylElement c_ij(const HyperbolicSpace& sp, int i, int j) {
  require(i >= 1 && i <= sp.nu() && j >= 1 && j <= sp.nu() && i != j,
          "IndexOutOfRange", "central element indices out of range");
  int l = sp.ell(), n = sp.nu();
  long long k = sp.system().k();
  WeylElement m = weyl_identity(sp);
  m[l + j - 1][l + n + i - 1] = Rat(1, k);
  m[l + i - 1][l + n + j - 1] = Rat(-1, k);
  return m;
}

std::vector<Root> c_pair_word(const HyperbolicSpace& sp, const Root& alpha,
                              const Root& sigma) {
  const ExtAffineRootSystem& sys = sp.system();
  require(static_cast<int>(sigma.iso.size()) == sp.nu() &&
              static_cast<int>(sigma.fin.size()) == sp.ell(),
          "DimensionMismatch", "translation part does not match the system");
  require(is_zero(sigma.fin), "IsotropicRoot",
          "the translation part of a central pair must be isotropic");
  check_letter(sys, alpha);
  check_letter(sys, alpha + sigma);
  std::vector<Root> word{alpha + sigma, alpha};
  for (int i = 1; i <= sp.nu(); ++i) {
    long long mi = sigma.iso[i - 1];
    if (mi == 0) continue;
    Root ai = alpha + sigma_unit(sp, i, 1);
    if (sys.contains(ai) != RootClass::Short &&
        sys.contains(ai) != RootClass::Long)
      fail("RootOutsideSystem",
           to_string(ai) + " is not a root, so the factor with m_" +
               std::to_string(i) + " = " + std::to_string(mi) +
               " is undefined");
    // (w_a w_ai)^{m_i}; the inverse power flips the involutions.
    for (long long c = 0; c < (mi > 0 ? mi : -mi); ++c) {
      word.push_back(mi > 0 ? alpha : ai);
      word.push_back(mi > 0 ? ai : alpha);
    }
  }
  return word;
}

WeylElement c_pair(const HyperbolicSpace& sp, const Root& alpha,
                   const Root& sigma) {
  WeylElement m = weyl_identity(sp);
  for (const Root& r : c_pair_word(sp, alpha, sigma))
    m = weyl_mul(m, reflection(sp, r));
  return m;
}

namespace {

// Shared validation for reduced collections; returns the anchor root of a
// triple and enforces the tail-only constraint for long anchors.
Root triple_anchor(const HyperbolicSpace& sp, const ReducedTriple& tr) {
  const ExtAffineRootSystem& sys = sp.system();
  require(tr.eps == 1 || tr.eps == -1, "DomainConstraintViolated",
          "triple sign must be +1 or -1");
  require(static_cast<int>(tr.m.size()) == sp.nu(), "DimensionMismatch",
          "translation coefficients do not match the nullity");
  if (tr.use_long)
    for (int i = 0; i < sys.twist(); ++i)
      require(tr.m[i] == 0, "DomainConstraintViolated",
              "long anchors may only translate along the tail directions");
  Root r;
  r.fin = tr.use_long ? sys.finite().theta_long() : sys.finite().theta_short();
  r.iso.assign(sp.nu(), 0);
  return r;
}

long long anchor_weight(const ExtAffineRootSystem& sys, const ReducedTriple& tr) {
  return tr.use_long ? 1 : sys.k();
}

}  // namespace

bool reduced_check(const HyperbolicSpace& sp, const ReducedCollection& coll) {
  const ExtAffineRootSystem& sys = sp.system();
  for (const ReducedTriple& tr : coll) triple_anchor(sp, tr);
  for (int i = 0; i < sp.nu(); ++i)
    for (int j = i + 1; j < sp.nu(); ++j) {
      long long s = 0;
      for (const ReducedTriple& tr : coll)
        s += anchor_weight(sys, tr) * tr.eps * tr.m[i] * tr.m[j];
      if (s != 0) return false;
    }
  return true;
}

bool relation_holds(const HyperbolicSpace& sp, const ReducedCollection& coll) {
  WeylElement m = weyl_identity(sp);
  for (const ReducedTriple& tr : coll) {
    Root anchor = triple_anchor(sp, tr);
    Root eta;
    eta.fin.assign(sp.ell(), 0);
    eta.iso = tr.m;
    WeylElement c = c_pair(sp, anchor, eta);
    m = weyl_mul(m, tr.eps == 1 ? c : weyl_inverse(c));
  }
  return is_identity(m);
}

ParityKind ParityKind::length_psi() { return ParityKind{}; }

ParityKind ParityKind::orbit_phi(Root beta) {
  ParityKind k;
  k.kind = OrbitPhi;
  k.beta = std::move(beta);
  return k;
}

ParityKind ParityKind::short_coset_psi(int i) {
  ParityKind k;
  k.kind = ShortCosetPsi;
  k.index = i;
  return k;
}

namespace {

bool all_even(const IVec& v) {
  for (long long x : v)
    if (x % 2 != 0) return false;
  return true;
}

// Orbit membership through coset congruence. Reflection images never leave
// these cosets, so the indicator is constant on each orbit and drops to a
// Z2-valued map on words.
int orbit_parity(const ExtAffineRootSystem& sys, const Root& beta,
                 const Root& alpha) {
  bool a1 = sys.simply_laced() && sys.rank() == 1;
  bool b2 = sys.xtype() == 'B' && sys.rank() == 2;
  require(a1 || b2, "UnsupportedOrbitCriterion",
          "orbit parity needs a coset characterization of orbits; none is "
          "available for this type");
  Root d = alpha - beta;
  if (a1)  // orbits are the congruence classes mod twice the root span
    return all_even(d.fin) && all_even(d.iso) ? 1 : 0;
  RootClass ca = sys.contains(alpha), cb = sys.contains(beta);
  if (ca != cb) return 0;
  if (ca == RootClass::Long)  // twice the short span is even coordinates
    return all_even(d.fin) && all_even(d.iso) ? 1 : 0;
  // Short roots move mod the long span: the second simple coordinate stays
  // fixed mod 2, head isotropic coordinates stay fixed mod 2, tail is free.
  if (d.fin[1] % 2 != 0) return 0;
  for (int i = 0; i < sys.twist(); ++i)
    if (d.iso[i] % 2 != 0) return 0;
  return 1;
}

int short_coset_parity(const ExtAffineRootSystem& sys, int idx,
                       const Root& alpha) {
  // Distinct short roots are orthogonal exactly in type B, which is what
  // keeps this indicator constant under conjugation; for the other twisted
  // types it fails to factor through the group (at twist 3 it already
  // disagrees on w_a = w_{-a}).
  require(sys.xtype() == 'B', "UnsupportedOrbitCriterion",
          "short coset parity is only reflection stable in type B");
  require(idx >= 1 && idx <= sys.twist(), "IndexOutOfRange",
          "short coset parity direction must lie in 1..t");
  if (sys.contains(alpha) != RootClass::Short) return 0;
  long long k = sys.k();
  for (int i = 0; i < sys.twist(); ++i) {
    long long want = (i == idx - 1) ? 1 : 0;
    if (mod_pos(alpha.iso[i], k) != want) return 0;
  }
  return 1;
}

}  // namespace

int parity_hom(const ExtAffineRootSystem& sys, const ParityKind& kind,
               const Root& alpha) {
  check_letter(sys, alpha);
  switch (kind.kind) {
    case ParityKind::LengthPsi:
      return sys.contains(alpha) == RootClass::Short ? 1 : 0;
    case ParityKind::OrbitPhi:
      check_letter(sys, kind.beta);
      return orbit_parity(sys, kind.beta, alpha);
    case ParityKind::ShortCosetPsi:
      return short_coset_parity(sys, kind.index, alpha);
  }
  fail("InternalError", "unknown parity kind");
}

int parity_hom_word(const ExtAffineRootSystem& sys, const ParityKind& kind,
                    const std::vector<Root>& word) {
  int s = 0;
  for (const Root& r : word) s ^= parity_hom(sys, kind, r);
  return s;
}

namespace {

// The search works on integer matrices: every group element, scaled by the
// twist factor k, has integer entries (root columns map roots to roots and
// dual columns only ever pick up k-th fractions of integer vectors), and the
// product of two scaled matrices divides exactly by k. Integer states make
// the breadth-first enumeration dramatically cheaper than rational ones.
using FlatMat = std::vector<long long>;

constexpr long long kEntryBound = 1ll << 28;

FlatMat flatten_scaled(const WeylElement& m, long long k) {
  FlatMat f;
  f.reserve(m.size() * m.size());
  for (const QVec& row : m)
    for (const Rat& x : row) {
      Rat s = x * k;
      require(denominator(s) == 1, "InternalError",
              "matrix is not integral at scale k");
      Int num = numerator(s);
      require(abs(num) < kEntryBound, "InternalError",
              "matrix entry exceeds the search range");
      f.push_back(num.convert_to<long long>());
    }
  return f;
}

FlatMat flat_mul(const FlatMat& a, const FlatMat& b, size_t d, long long k) {
  FlatMat c(d * d, 0);
  for (size_t i = 0; i < d; ++i)
    for (size_t t = 0; t < d; ++t) {
      long long x = a[i * d + t];
      if (x == 0) continue;
      for (size_t j = 0; j < d; ++j) c[i * d + j] += x * b[t * d + j];
    }
  for (long long& x : c) {
    require(x % k == 0, "InternalError", "scaled product is not divisible");
    x /= k;
    require(x < kEntryBound && x > -kEntryBound, "InternalError",
            "matrix entry exceeds the search range");
  }
  return c;
}

struct FlatHash {
  size_t operator()(const FlatMat& v) const {
    uint64_t h = 1469598103934665603ull;
    for (long long x : v) {
      h ^= static_cast<uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

SearchResult bounded_word_search(const HyperbolicSpace& sp,
                                 const WeylElement& target,
                                 std::vector<Root> gens, int maxlen) {
  require(maxlen >= 0 && maxlen <= 32, "IndexOutOfRange",
          "word length bound out of range");
  require(target.size() == static_cast<size_t>(sp.dim()), "DimensionMismatch",
          "target matrix does not match the space");
  for (const Root& g : gens) check_letter(sp.system(), g);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  size_t d = target.size();
  long long k = sp.system().k();
  std::vector<FlatMat> gen_mats;
  gen_mats.reserve(gens.size());
  for (const Root& g : gens)
    gen_mats.push_back(flatten_scaled(reflection(sp, g), k));
  // A target outside the integral scale can never be a product of the
  // generators; keep searching so the exhaustion verdict stays meaningful.
  FlatMat flat_target;
  try {
    flat_target = flatten_scaled(target, k);
  } catch (const EarsError&) {
    flat_target.clear();
  }

  SearchResult res;
  std::unordered_set<FlatMat, FlatHash> visited;
  FlatMat id = flatten_scaled(weyl_identity(sp), k);
  visited.insert(id);
  if (id == flat_target) {
    res.word = std::vector<Root>{};
    res.ball_size = 1;
    return res;
  }
  // Parents expand in discovery order and generators in sorted order, so the
  // first production of any matrix is its lexicographically least shortest
  // word: the canonical word of a prefix never exceeds the prefix itself.
  struct Node {
    FlatMat m;
    std::vector<uint8_t> word;
  };
  std::vector<Node> frontier{{id, {}}};
  for (int len = 1; len <= maxlen && !frontier.empty(); ++len) {
    std::vector<Node> next;
    for (const Node& node : frontier)
      for (size_t g = 0; g < gen_mats.size(); ++g) {
        FlatMat child = flat_mul(node.m, gen_mats[g], d, k);
        if (!visited.insert(child).second) continue;
        std::vector<uint8_t> w = node.word;
        w.push_back(static_cast<uint8_t>(g));
        if (child == flat_target) {
          std::vector<Root> witness;
          witness.reserve(w.size());
          for (uint8_t idx : w) witness.push_back(gens[idx]);
          res.word = std::move(witness);
          res.ball_size = visited.size();
          return res;
        }
        next.push_back({std::move(child), std::move(w)});
      }
    frontier = std::move(next);
  }
  res.exhausted = frontier.empty();
  res.ball_size = visited.size();
  return res;
}

}  // namespace ears
