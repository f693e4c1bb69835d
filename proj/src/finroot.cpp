#include "ears/finroot.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace ears {

long long FiniteRootSystem::pair(const IVec& a, const IVec& b) const {
  long long s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += a[i] * gram[i][j] * b[j];
  return s;
}

long long FiniteRootSystem::cartan(const IVec& b, const IVec& a) const {
  long long num = 2 * pair(b, a);
  long long den = norm(a);
  require(den != 0, "IsotropicRoot", "cartan pairing against a norm-zero vector");
  require(num % den == 0, "InternalError", "non-integral Cartan pairing");
  return num / den;
}

IVec FiniteRootSystem::reflect(const IVec& a, const IVec& b) const {
  return b - cartan(b, a) * a;
}

void FiniteRootSystem::build_index() const {
  if (!index_.empty() || roots.empty()) return;
  for (size_t i = 0; i < roots.size(); ++i) index_[roots[i]] = i;
}

bool FiniteRootSystem::is_root(const IVec& v) const {
  build_index();
  return index_.count(v) != 0;
}

bool FiniteRootSystem::is_short_root(const IVec& v) const {
  build_index();
  auto it = index_.find(v);
  return it != index_.end() && !root_long[it->second];
}

bool FiniteRootSystem::is_long_root(const IVec& v) const {
  build_index();
  auto it = index_.find(v);
  return it != index_.end() && root_long[it->second];
}

IVec FiniteRootSystem::simple(int i) const {
  require(i >= 1 && i <= rank, "IndexOutOfRange", "simple root index");
  IVec v(rank, 0);
  v[i - 1] = 1;
  return v;
}

static long long height(const IVec& v) {
  long long h = 0;
  for (auto c : v) h += c;
  return h;
}

IVec FiniteRootSystem::theta_short() const {
  const IVec* best = nullptr;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (root_long[i]) continue;
    if (!best || height(roots[i]) > height(*best)) best = &roots[i];
  }
  require(best != nullptr, "InternalError", "no short roots");
  return *best;
}

IVec FiniteRootSystem::theta_long() const {
  if (simply_laced()) return theta_short();
  const IVec* best = nullptr;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (!root_long[i]) continue;
    if (!best || height(roots[i]) > height(*best)) best = &roots[i];
  }
  require(best != nullptr, "InternalError", "no long roots");
  return *best;
}

namespace {

IMat gram_from_edges(int n, long long diag,
                     const std::vector<std::pair<int, int>>& edges) {
  IMat g(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = diag;
  for (auto [a, b] : edges) {
    g[a - 1][b - 1] = -diag / 2;
    g[b - 1][a - 1] = -diag / 2;
  }
  return g;
}

IMat make_gram(char xtype, int n) {
  std::vector<std::pair<int, int>> edges;
  switch (xtype) {
    case 'A':
      for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
      return gram_from_edges(n, 2, edges);
    case 'B': {
      // alpha_1..alpha_{n-1} long (norm 4), alpha_n short (norm 2).
      IMat g(n, IVec(n, 0));
      for (int i = 0; i < n; ++i) g[i][i] = (i == n - 1) ? 2 : 4;
      for (int i = 0; i + 1 < n; ++i) g[i][i + 1] = g[i + 1][i] = -2;
      return g;
    }
    case 'C': {
      // alpha_1..alpha_{n-1} short (norm 2), alpha_n long (norm 4).
      IMat g(n, IVec(n, 0));
      for (int i = 0; i < n; ++i) g[i][i] = (i == n - 1) ? 4 : 2;
      for (int i = 0; i + 1 < n; ++i)
        g[i][i + 1] = g[i + 1][i] = (i + 1 == n - 1) ? -2 : -1;
      return g;
    }
    case 'D':
      // Chain alpha_1..alpha_{n-3}, then alpha_{n-1} joined to alpha_{n-3},
      // alpha_{n-2} and alpha_n.
      for (int i = 1; i <= n - 4; ++i) edges.push_back({i, i + 1});
      edges.push_back({n - 3, n - 1});
      edges.push_back({n - 2, n - 1});
      edges.push_back({n - 1, n});
      return gram_from_edges(n, 2, edges);
    case 'E':
      edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
      if (n >= 7) edges.push_back({6, 7});
      if (n == 8) edges.push_back({7, 8});
      return gram_from_edges(n, 2, edges);
    case 'F':
      return {{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
    case 'G':
      return {{6, -3}, {-3, 2}};
  }
  fail("IllegalTypeRank", "unknown type letter");
}

bool legal_type_rank(char xtype, int rank) {
  switch (xtype) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 3;
    case 'D': return rank >= 4;
    case 'E': return rank == 6 || rank == 7 || rank == 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
  }
  return false;
}

}  // namespace

FiniteRootSystem build_finite(char xtype, int rank) {
  require(legal_type_rank(xtype, rank), "IllegalTypeRank",
          std::string("no finite system ") + xtype + std::to_string(rank));
  FiniteRootSystem frs;
  frs.xtype = xtype;
  frs.rank = rank;
  frs.gram = make_gram(xtype, rank);
  frs.k = (xtype == 'G') ? 3 : (xtype == 'B' || xtype == 'C' || xtype == 'F') ? 2 : 1;

  // Orbit of the simple roots under simple reflections.
  std::set<IVec> seen;
  std::queue<IVec> work;
  for (int i = 1; i <= rank; ++i) {
    IVec v(rank, 0);
    v[i - 1] = 1;
    seen.insert(v);
    work.push(v);
  }
  while (!work.empty()) {
    IVec v = work.front();
    work.pop();
    for (int i = 1; i <= rank; ++i) {
      IVec u = frs.reflect(frs.simple(i), v);
      if (seen.insert(u).second) work.push(u);
    }
  }
  frs.roots.assign(seen.begin(), seen.end());
  frs.root_long.resize(frs.roots.size());
  for (size_t i = 0; i < frs.roots.size(); ++i) {
    long long nn = frs.norm(frs.roots[i]);
    require(nn == 2 || nn == 2 * frs.k, "InternalError", "unexpected root norm");
    frs.root_long[i] = (nn != 2);
  }
  return frs;
}

namespace {

// W_P . P for fixed reflection generators P.
std::set<IVec> reflection_orbit(const FiniteRootSystem& frs,
                                const std::vector<IVec>& P) {
  std::set<IVec> X(P.begin(), P.end());
  std::queue<IVec> work;
  for (const auto& p : P) work.push(p);
  while (!work.empty()) {
    IVec v = work.front();
    work.pop();
    for (const auto& p : P) {
      IVec u = frs.reflect(p, v);
      if (X.insert(u).second) work.push(u);
    }
  }
  return X;
}

bool covers_all(const FiniteRootSystem& frs, const std::vector<IVec>& P) {
  if (P.empty()) return frs.roots.empty();
  return reflection_orbit(frs, P).size() == frs.roots.size();
}

using Perm = std::vector<int>;

Perm reflection_perm(const FiniteRootSystem& frs, const IVec& p) {
  Perm out(frs.roots.size());
  std::map<IVec, int> idx;
  for (size_t i = 0; i < frs.roots.size(); ++i) idx[frs.roots[i]] = (int)i;
  for (size_t i = 0; i < frs.roots.size(); ++i)
    out[i] = idx.at(frs.reflect(p, frs.roots[i]));
  return out;
}

size_t group_order(const std::vector<Perm>& gens, size_t n) {
  Perm id(n);
  for (size_t i = 0; i < n; ++i) id[i] = (int)i;
  std::set<Perm> seen{id};
  std::queue<Perm> work;
  work.push(id);
  while (!work.empty()) {
    Perm g = work.front();
    work.pop();
    for (const auto& h : gens) {
      Perm gh(n);
      for (size_t i = 0; i < n; ++i) gh[i] = h[g[i]];
      if (seen.insert(gh).second) work.push(gh);
    }
  }
  return seen.size();
}

}  // namespace

FiniteVerdict finite_reflectable_oracle(const FiniteRootSystem& frs,
                                        const std::vector<IVec>& P) {
  for (const auto& p : P)
    require(frs.is_root(p), "NotSet", "element is not a root: " + to_string(p));
  std::vector<IVec> Pd(P);
  std::sort(Pd.begin(), Pd.end());
  Pd.erase(std::unique(Pd.begin(), Pd.end()), Pd.end());
  if (!covers_all(frs, Pd)) return FiniteVerdict::NotReflectable;
  if (Pd.size() < P.size()) return FiniteVerdict::SetNotBase;
  for (size_t drop = 0; drop < Pd.size(); ++drop) {
    std::vector<IVec> Q;
    for (size_t i = 0; i < Pd.size(); ++i)
      if (i != drop) Q.push_back(Pd[i]);
    if (covers_all(frs, Q)) return FiniteVerdict::SetNotBase;
  }
  return FiniteVerdict::Base;
}

const char* to_string(FiniteVerdict v) {
  switch (v) {
    case FiniteVerdict::Base: return "base";
    case FiniteVerdict::SetNotBase: return "set";
    case FiniteVerdict::NotReflectable: return "not_reflectable";
  }
  return "?";
}

size_t finite_weyl_order(const FiniteRootSystem& frs) {
  std::vector<Perm> gens;
  for (int i = 1; i <= frs.rank; ++i)
    gens.push_back(reflection_perm(frs, frs.simple(i)));
  return group_order(gens, frs.roots.size());
}

bool finite_min_gen_oracle(const FiniteRootSystem& frs,
                           const std::vector<IVec>& P) {
  for (const auto& p : P)
    require(frs.is_root(p), "NotSet", "element is not a root: " + to_string(p));
  std::vector<IVec> Pd(P);
  std::sort(Pd.begin(), Pd.end());
  Pd.erase(std::unique(Pd.begin(), Pd.end()), Pd.end());
  if (Pd.size() < P.size()) return false;  // a duplicate is never minimal
  size_t full = finite_weyl_order(frs);
  std::vector<Perm> gens;
  for (const auto& p : Pd) gens.push_back(reflection_perm(frs, p));
  if (group_order(gens, frs.roots.size()) != full) return false;
  for (size_t drop = 0; drop < gens.size(); ++drop) {
    std::vector<Perm> sub;
    for (size_t i = 0; i < gens.size(); ++i)
      if (i != drop) sub.push_back(gens[i]);
    if (group_order(sub, frs.roots.size()) == full) return false;
  }
  return true;
}

}  // namespace ears
