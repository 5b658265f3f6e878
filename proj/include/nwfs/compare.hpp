#pragma once

#include <cstdint>
#include <vector>

#include "nwfs/stage.hpp"

namespace nwfs {

struct CompareReport {
  bool equal = false;        // byte-for-byte the same triple
  bool isomorphic = false;   // joined by an invertible middle map
  BaseMorphism iso;          // witness (mid a -> mid b) when isomorphic
  std::uint64_t tried = 0;   // search nodes visited
};

namespace detail {

// Depth-first search for a bijection phi with phi . lambda_a = lambda_b
// and rho_b . phi = rho_a, elementwise backends.
inline bool iso_dfs_finset(const Factorization& a, const Factorization& b,
                           std::vector<int>& phi, std::vector<char>& used,
                           std::size_t next, std::uint64_t cap,
                           std::uint64_t& tried) {
  const std::size_t n = phi.size();
  while (next < n && phi[next] >= 0) ++next;
  if (next == n) return true;
  for (int v = 0; v < static_cast<int>(used.size()); ++v) {
    if (used[v]) continue;
    if (a.rho.map[next] != b.rho.map[v]) continue;
    if (++tried > cap) throw CapExceeded("factorization compare", tried);
    phi[next] = v;
    used[v] = 1;
    if (iso_dfs_finset(a, b, phi, used, next + 1, cap, tried)) return true;
    phi[next] = -1;
    used[v] = 0;
  }
  return false;
}

inline bool iso_seed_from_lambda(const BaseMorphism& la, const BaseMorphism& lb,
                                 std::vector<int>& phi,
                                 std::vector<char>& used) {
  for (std::size_t x = 0; x < la.map.size(); ++x) {
    int u = la.map[x], v = lb.map[x];
    if (phi[u] >= 0) {
      if (phi[u] != v) return false;
      continue;
    }
    if (used[v]) return false;
    phi[u] = v;
    used[v] = 1;
  }
  return true;
}

inline bool iso_dfs_graph_arrows(const Factorization& a, const Factorization& b,
                                 const std::vector<int>& vphi,
                                 std::vector<int>& aphi,
                                 std::vector<char>& aused, std::size_t next,
                                 std::uint64_t cap, std::uint64_t& tried) {
  const auto& ga = a.mid;
  const auto& gb = b.mid;
  const std::size_t n = aphi.size();
  while (next < n && aphi[next] >= 0) ++next;
  if (next == n) return true;
  for (int e = 0; e < static_cast<int>(aused.size()); ++e) {
    if (aused[e]) continue;
    if (gb.src[e] != vphi[ga.src[next]] || gb.tgt[e] != vphi[ga.tgt[next]])
      continue;
    if (a.rho.amap[next] != b.rho.amap[e]) continue;
    if (++tried > cap) throw CapExceeded("factorization compare", tried);
    aphi[next] = e;
    aused[e] = 1;
    if (iso_dfs_graph_arrows(a, b, vphi, aphi, aused, next + 1, cap, tried))
      return true;
    aphi[next] = -1;
    aused[e] = 0;
  }
  return false;
}

inline bool iso_dfs_graph_vertices(const Factorization& a,
                                   const Factorization& b,
                                   std::vector<int>& vphi,
                                   std::vector<char>& vused, std::size_t next,
                                   std::uint64_t cap, std::uint64_t& tried,
                                   BaseMorphism& out) {
  const std::size_t n = vphi.size();
  while (next < n && vphi[next] >= 0) ++next;
  if (next == n) {
    std::vector<int> aphi(a.mid.arrows, -1);
    std::vector<char> aused(b.mid.arrows, 0);
    bool ok = true;
    for (std::size_t x = 0; x < a.lambda.amap.size() && ok; ++x) {
      int u = a.lambda.amap[x], v = b.lambda.amap[x];
      if (aphi[u] >= 0)
        ok = aphi[u] == v;
      else if (aused[v])
        ok = false;
      else {
        aphi[u] = v;
        aused[v] = 1;
      }
    }
    if (ok &&
        iso_dfs_graph_arrows(a, b, vphi, aphi, aused, 0, cap, tried)) {
      out = fingraph_mor(a.mid, b.mid, vphi, aphi);
      return true;
    }
    return false;
  }
  for (int v = 0; v < static_cast<int>(vused.size()); ++v) {
    if (vused[v]) continue;
    if (a.rho.vmap[next] != b.rho.vmap[v]) continue;
    if (++tried > cap) throw CapExceeded("factorization compare", tried);
    vphi[next] = v;
    vused[v] = 1;
    if (iso_dfs_graph_vertices(a, b, vphi, vused, next + 1, cap, tried, out))
      return true;
    vphi[next] = -1;
    vused[v] = 0;
  }
  return false;
}

// Solve the linear constraints on phi over F_q, then walk the affine
// solution space looking for an invertible instance.
inline bool iso_linear(const Factorization& a, const Factorization& b,
                       std::uint64_t cap, std::uint64_t& tried,
                       BaseMorphism& out) {
  const int q = a.mid.q;
  const int ra = a.mid.rank, rb = b.mid.rank;
  if (ra != rb) return false;
  const int unknowns = rb * ra;
  std::vector<std::vector<int>> sys;  // rows: [coeffs | rhs]
  const int rx = a.lambda.dom.rank;
  for (int i = 0; i < rb; ++i)
    for (int c = 0; c < rx; ++c) {
      std::vector<int> row(unknowns + 1, 0);
      for (int j = 0; j < ra; ++j)
        row[i * ra + j] = modq::norm(a.lambda.matrix[j][c], q);
      row[unknowns] = modq::norm(b.lambda.matrix[i][c], q);
      sys.push_back(std::move(row));
    }
  const int ry = a.rho.cod.rank;
  for (int r = 0; r < ry; ++r)
    for (int j = 0; j < ra; ++j) {
      std::vector<int> row(unknowns + 1, 0);
      for (int i = 0; i < rb; ++i)
        row[i * ra + j] = modq::norm(b.rho.matrix[r][i], q);
      row[unknowns] = modq::norm(a.rho.matrix[r][j], q);
      sys.push_back(std::move(row));
    }
  std::vector<int> pivots = modq::rref(sys, q);
  for (int p : pivots)
    if (p == unknowns) return false;  // pivot in the constant column
  std::vector<char> is_pivot(unknowns, 0);
  for (int p : pivots)
    if (p < unknowns) is_pivot[p] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < unknowns; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  std::vector<int> vals(unknowns, 0);
  std::vector<int> counter(free_cols.size(), 0);
  for (;;) {
    if (++tried > cap) throw CapExceeded("factorization compare", tried);
    for (std::size_t i = 0; i < free_cols.size(); ++i)
      vals[free_cols[i]] = counter[i];
    for (std::size_t r = pivots.size(); r-- > 0;) {
      int acc = sys[r][unknowns];
      for (int c = pivots[r] + 1; c < unknowns; ++c)
        acc = modq::norm(acc - sys[r][c] * vals[c], q);
      vals[pivots[r]] = acc;
    }
    std::vector<std::vector<int>> m(rb, std::vector<int>(ra, 0));
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < ra; ++j) m[i][j] = vals[i * ra + j];
    BaseMorphism cand = finmod_mor(a.mid, b.mid, m);
    if (is_iso(cand)) {
      out = cand;
      return true;
    }
    std::size_t pos = 0;
    while (pos < counter.size() && ++counter[pos] == q) counter[pos++] = 0;
    if (pos == counter.size()) return false;
  }
}

}  // namespace detail

/// Matches two factorizations of the same arrow: exact equality, else a
/// search for an invertible middle map commuting with both parts.
inline CompareReport compare_factorizations(const Factorization& a,
                                            const Factorization& b,
                                            std::uint64_t cap = kDefaultCap) {
  if (!(a.lambda.dom == b.lambda.dom) || !(a.rho.cod == b.rho.cod))
    throw BackendMismatch("compare: factorizations of different arrows");
  CompareReport rep;
  if (a.lambda == b.lambda && a.mid == b.mid && a.rho == b.rho) {
    rep.equal = true;
    rep.isomorphic = true;
    rep.iso = identity(a.mid);
    return rep;
  }
  const Backend bk = a.mid.backend;
  if (bk == Backend::finset) {
    if (a.mid.size != b.mid.size) return rep;
    std::vector<int> phi(a.mid.size, -1);
    std::vector<char> used(b.mid.size, 0);
    if (!detail::iso_seed_from_lambda(a.lambda, b.lambda, phi, used))
      return rep;
    if (detail::iso_dfs_finset(a, b, phi, used, 0, cap, rep.tried)) {
      rep.isomorphic = true;
      rep.iso = finset_mor(a.mid, b.mid, phi);
    }
    return rep;
  }
  if (bk == Backend::fingraph) {
    if (a.mid.vertices != b.mid.vertices || a.mid.arrows != b.mid.arrows)
      return rep;
    std::vector<int> vphi(a.mid.vertices, -1);
    std::vector<char> vused(b.mid.vertices, 0);
    bool ok = true;
    for (std::size_t x = 0; x < a.lambda.vmap.size() && ok; ++x) {
      int u = a.lambda.vmap[x], v = b.lambda.vmap[x];
      if (vphi[u] >= 0)
        ok = vphi[u] == v;
      else if (vused[v])
        ok = false;
      else {
        vphi[u] = v;
        vused[v] = 1;
      }
    }
    if (ok && detail::iso_dfs_graph_vertices(a, b, vphi, vused, 0, cap,
                                             rep.tried, rep.iso))
      rep.isomorphic = true;
    return rep;
  }
  BaseMorphism iso;
  if (detail::iso_linear(a, b, cap, rep.tried, iso)) {
    rep.isomorphic = true;
    rep.iso = iso;
  }
  return rep;
}

}  // namespace nwfs
