#pragma once

// Shared builders and brute-force reference computations for the test
// suite.  Everything here is deliberately naive: tests compare the
// engine's answers against these slow but obviously-correct versions.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nwfs/nwfs.hpp>

namespace th {

using namespace nwfs;

// --- quick builders -------------------------------------------------------

inline Arrow set_arrow(int nx, int ny, std::vector<int> map) {
  return Arrow(finset_mor(finset_obj(nx), finset_obj(ny), std::move(map)));
}

inline Arrow graph_arrow(const BaseObject& g, const BaseObject& h,
                         std::vector<int> vmap, std::vector<int> amap) {
  return Arrow(fingraph_mor(g, h, std::move(vmap), std::move(amap)));
}

inline Arrow mod_arrow(int q, int rdom, int rcod,
                       std::vector<std::vector<int>> m) {
  return Arrow(finmod_mor(finmod_obj(q, rdom), finmod_obj(q, rcod),
                          std::move(m)));
}

// Standard small graphs.
inline BaseObject dot_graph() { return fingraph_obj(1, {}, {}); }
inline BaseObject edge_graph() { return fingraph_obj(2, {0}, {1}); }
inline BaseObject loop_graph() { return fingraph_obj(1, {0}, {0}); }
// Two composable edges: 0 -> 1 -> 2.
inline BaseObject path2_graph() { return fingraph_obj(3, {0, 1}, {1, 2}); }

// --- generating sets ------------------------------------------------------

// One point into a singleton: freely splits epimorphisms.
inline GeneratingSet gens_splitepi() {
  GeneratingSet g;
  g.entries.push_back({"point", set_arrow(0, 1, {})});
  return g;
}

// First leg of a two-point set: freely adds sections.
inline GeneratingSet gens_cosection() {
  GeneratingSet g;
  g.entries.push_back({"first", set_arrow(1, 2, {0})});
  return g;
}

inline GeneratingSet gens_both() {
  GeneratingSet g;
  g.entries.push_back({"point", set_arrow(0, 1, {})});
  g.entries.push_back({"first", set_arrow(1, 2, {0})});
  return g;
}

// Source vertex of an edge: freely grows out-paths.
inline GeneratingSet gens_graph() {
  GeneratingSet g;
  g.entries.push_back(
      {"src-vertex", graph_arrow(dot_graph(), edge_graph(), {0}, {})});
  return g;
}

// Zero module into the free rank-one module.
inline GeneratingSet gens_mod(int q) {
  GeneratingSet g;
  g.entries.push_back(
      {"unit", mod_arrow(q, 0, 1, {std::vector<int>{}})});
  return g;
}

// --- exhaustive enumeration ----------------------------------------------

// All functions {0..nx-1} -> {0..ny-1} in lexicographic order.
inline std::vector<std::vector<int>> all_maps(int nx, int ny) {
  std::vector<std::vector<int>> out;
  if (nx == 0) {
    out.push_back({});
    return out;
  }
  if (ny == 0) return out;
  std::vector<int> cur(nx, 0);
  for (;;) {
    out.push_back(cur);
    int i = nx - 1;
    while (i >= 0 && cur[i] == ny - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

// Every finset arrow with domain and codomain of size <= max_size.
inline std::vector<Arrow> all_set_arrows(int max_size) {
  std::vector<Arrow> out;
  for (int a = 0; a <= max_size; ++a)
    for (int b = 0; b <= max_size; ++b)
      for (auto& m : all_maps(a, b)) out.push_back(set_arrow(a, b, m));
  return out;
}

// Every finmod arrow over F_q with ranks <= max_rank.
inline std::vector<Arrow> all_mod_arrows(int q, int max_rank) {
  std::vector<Arrow> out;
  for (int a = 0; a <= max_rank; ++a)
    for (int b = 0; b <= max_rank; ++b) {
      const BaseObject dom = finmod_obj(q, a), cod = finmod_obj(q, b);
      for (const auto& f : hom_enumerate(dom, cod, 1u << 20))
        out.push_back(Arrow(f));
    }
  return out;
}

// --- seeded randomness ----------------------------------------------------

inline std::mt19937& rng(std::uint32_t seed) {
  static thread_local std::mt19937 eng;
  eng.seed(seed);
  return eng;
}

inline int pick(std::mt19937& eng, int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(eng);
}

inline BaseMorphism random_set_map(std::mt19937& eng, int nx, int ny) {
  std::vector<int> m(nx);
  for (int i = 0; i < nx; ++i) m[i] = pick(eng, ny);
  return finset_mor(finset_obj(nx), finset_obj(ny), m);
}

// Random injection nx -> ny (requires nx <= ny).
inline BaseMorphism random_injection(std::mt19937& eng, int nx, int ny) {
  std::vector<int> codes(ny);
  for (int i = 0; i < ny; ++i) codes[i] = i;
  std::shuffle(codes.begin(), codes.end(), eng);
  codes.resize(nx);
  return finset_mor(finset_obj(nx), finset_obj(ny), codes);
}

inline BaseMorphism random_permutation(std::mt19937& eng, int n) {
  return random_injection(eng, n, n);
}

// --- independent colimit reference ---------------------------------------

// Naive equivalence closure over 0..n-1 from a list of identified pairs,
// by repeated sweeping (no path compression, no ranking).  Returns class
// labels renumbered by first appearance.
inline std::vector<int> naive_classes(int n,
                                      const std::vector<std::pair<int, int>>& idents,
                                      int* count = nullptr) {
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : idents) {
      int lo = std::min(label[a], label[b]), hi = std::max(label[a], label[b]);
      if (lo == hi) continue;
      for (int i = 0; i < n; ++i)
        if (label[i] == hi) label[i] = lo;
      changed = true;
    }
  }
  std::vector<int> seen;
  for (int i = 0; i < n; ++i) {
    auto it = std::find(seen.begin(), seen.end(), label[i]);
    if (it == seen.end()) {
      seen.push_back(label[i]);
      label[i] = static_cast<int>(seen.size()) - 1;
    } else {
      label[i] = static_cast<int>(it - seen.begin());
    }
  }
  if (count) *count = static_cast<int>(seen.size());
  return label;
}

// --- brute-force structure search (finset only) ---------------------------

// Every algebra structure on g over st, found by enumerating candidate
// retractions p : E(g) -> dom(g) directly and keeping the ones that pass
// all structure laws.  Entries over the lambda-image are forced first so
// the scan only walks the free positions.
inline std::vector<RMapStructure> brute_rmap_structures(const StagePtr& st,
                                                        const Arrow& g) {
  const Factorization& fc = st->factor(g);
  const int e = fc.mid.size, c = g.dom().size;
  std::vector<RMapStructure> out;
  if (e > 0 && c == 0) return out;
  std::vector<int> forced(e, -1);
  for (int x = 0; x < c; ++x) {
    if (forced[fc.lambda.map[x]] != -1)
      throw InternalCheckFailure("brute rmap scan expects injective lambda");
    forced[fc.lambda.map[x]] = x;
  }
  std::vector<int> free_pos;
  for (int u = 0; u < e; ++u)
    if (forced[u] == -1) free_pos.push_back(u);
  std::vector<int> p(forced);
  std::vector<int> digits(free_pos.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < free_pos.size(); ++i)
      p[free_pos[i]] = digits[i];
    // cheap pointwise filter before the structure laws
    bool over = true;
    for (int u = 0; u < e && over; ++u)
      over = g.mor.map[p[u]] == fc.rho.map[u];
    if (over) {
      RMapStructure rm{st->token(), g, finset_mor(fc.mid, g.dom(), p)};
      if (check_rmap(st, rm).all_pass()) out.push_back(std::move(rm));
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == c) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

// Every family of fillers for g's lifting problems, aligned with the
// one-step problem order.
inline std::vector<Delta> all_filler_families(const OneStepStage& one,
                                              const Arrow& g) {
  const KData& kd = one.kdata(g);
  std::vector<std::vector<BaseMorphism>> choices;
  for (const Problem& pb : kd.problems) {
    std::vector<BaseMorphism> opts;
    const Square& sq = pb.square;
    for (auto& m : all_maps(sq.src.cod().size, g.dom().size)) {
      BaseMorphism cand = finset_mor(sq.src.cod(), g.dom(), m);
      if (compose(cand, sq.src.mor) == sq.h && compose(g.mor, cand) == sq.k)
        opts.push_back(std::move(cand));
    }
    if (opts.empty()) return {};  // some problem is unsolvable
    choices.push_back(std::move(opts));
  }
  std::vector<Delta> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    Delta d{g, {}};
    for (std::size_t i = 0; i < choices.size(); ++i)
      d.fill.push_back(choices[i][idx[i]]);
    out.push_back(std::move(d));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

// The filler-family counterpart of an algebra-structure morphism: every
// filler, transported along the square, lands on the chosen filler of the
// transported problem.
inline bool delta_morphism_ok(const OneStepStage& one, const Delta& d1,
                              const Delta& d2, const Square& sq) {
  const KData& k1 = one.kdata(d1.g);
  const KData& k2 = one.kdata(d2.g);
  for (std::size_t x = 0; x < k1.problems.size(); ++x) {
    const Problem& pb = k1.problems[x];
    Square moved(pb.square.src, d2.g, compose(sq.h, pb.square.h),
                 compose(sq.k, pb.square.k));
    std::size_t y = k2.index.at(OneStepStage::problem_key(pb.gen, moved));
    if (!(compose(sq.h, d1.fill[x]) == d2.fill[y])) return false;
  }
  return true;
}

// The unique coalgebra structure carried by an injection over the
// stabilized split-epi stage: section points stay put, everything else
// lands in the second block.
inline LMapStructure splitepi_lmap(const StagePtr& st, const Arrow& f) {
  const Factorization& fc = st->factor(f);
  const int nx = f.dom().size, ny = f.cod().size;
  std::vector<int> pre(ny, -1);
  for (int x = 0; x < nx; ++x) pre[f.mor.map[x]] = x;
  std::vector<int> s(ny);
  for (int y = 0; y < ny; ++y) s[y] = pre[y] >= 0 ? pre[y] : nx + y;
  return {st->token(), f, finset_mor(f.cod(), fc.mid, s)};
}

// --- misc -----------------------------------------------------------------

inline bool same_square(const Square& a, const Square& b) {
  return a.src == b.src && a.tgt == b.tgt && a.h == b.h && a.k == b.k;
}

inline std::uint64_t mid_size(const Stage& st, const Arrow& f) {
  return object_size(st.factor(f).mid);
}

}  // namespace th
