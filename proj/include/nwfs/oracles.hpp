#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "nwfs/hom.hpp"
#include "nwfs/stage.hpp"

namespace nwfs {

/// Closed form for the generating set {empty -> point} on finite sets:
/// middle object X + Y, left part the X block, right part f on X and the
/// identity on Y.  Carries both structure maps.
class SplitEpiOracle : public Stage {
 public:
  std::string token() const override { return "oracle:splitepi"; }
  bool has_comult() const override { return true; }
  bool has_mult() const override { return true; }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    if (f.dom().backend != Backend::finset)
      throw BackendMismatch("splitepi oracle works on finite sets");
    const int nx = f.dom().size, ny = f.cod().size;
    BaseObject mid = finset_obj(nx + ny);
    std::vector<int> lam(nx), rho(nx + ny);
    for (int x = 0; x < nx; ++x) {
      lam[x] = x;
      rho[x] = f.mor.map[x];
    }
    for (int y = 0; y < ny; ++y) rho[nx + y] = y;
    return {finset_mor(f.dom(), mid, lam), mid,
            finset_mor(mid, f.cod(), rho)};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    const Factorization& fa = factor(sq.src);
    const Factorization& fb = factor(sq.tgt);
    const int nx = sq.src.dom().size, ny = sq.src.cod().size;
    const int mx = sq.tgt.dom().size;
    std::vector<int> m(nx + ny);
    for (int x = 0; x < nx; ++x) m[x] = sq.h.map[x];
    for (int y = 0; y < ny; ++y) m[nx + y] = mx + sq.k.map[y];
    return finset_mor(fa.mid, fb.mid, m);
  }

  BaseMorphism compute_comult(const Arrow& f) const override {
    const Factorization& ff = factor(f);
    const Factorization& fl = factor(Arrow(ff.lambda));
    const int nx = f.dom().size, ny = f.cod().size;
    std::vector<int> m(nx + ny);
    for (int x = 0; x < nx; ++x) m[x] = x;
    for (int y = 0; y < ny; ++y) m[nx + y] = nx + nx + y;
    return finset_mor(ff.mid, fl.mid, m);
  }

  BaseMorphism compute_mult(const Arrow& f) const override {
    const Factorization& ff = factor(f);
    const Factorization& fr = factor(Arrow(ff.rho));
    const int nx = f.dom().size, ny = f.cod().size;
    std::vector<int> m(nx + ny + ny);
    for (int u = 0; u < nx + ny; ++u) m[u] = u;
    for (int y = 0; y < ny; ++y) m[nx + ny + y] = nx + y;
    return finset_mor(fr.mid, ff.mid, m);
  }
};

namespace detail {

/// Words of bounded length over a finite alphabet, indexed by length and
/// then lexicographically, first letter most significant.
struct Words {
  int alphabet = 0;
  int depth = 0;
  std::vector<std::uint64_t> offset;  // offset[k] = index of first k-word
  std::uint64_t total = 0;

  Words(int s, int n) : alphabet(s), depth(n) {
    std::uint64_t count = 1;
    offset.assign(static_cast<std::size_t>(n) + 2, 0);
    for (int k = 0; k <= n; ++k) {
      offset[k + 1] = offset[k] + count;
      count = sat_mul(count, static_cast<std::uint64_t>(s));
    }
    total = offset[static_cast<std::size_t>(n) + 1];
  }

  std::uint64_t encode(const std::vector<int>& w) const {
    std::uint64_t idx = offset[w.size()];
    std::uint64_t place = 1;
    for (std::size_t i = w.size(); i-- > 0;) {
      idx += static_cast<std::uint64_t>(w[i]) * place;
      place *= static_cast<std::uint64_t>(alphabet);
    }
    return idx;
  }

  std::vector<int> decode(std::uint64_t idx) const {
    int k = 0;
    while (idx >= offset[k + 1]) ++k;
    std::uint64_t rem = idx - offset[k];
    std::vector<int> w(k);
    for (int i = k; i-- > 0;) {
      w[i] = static_cast<int>(rem % alphabet);
      rem /= static_cast<std::uint64_t>(alphabet);
    }
    return w;
  }
};

}  // namespace detail

/// Closed form for the generating set {first point of a pair} on finite
/// sets, truncated at word length `depth`: middle object X x Y-words,
/// with the right part reading the last letter.  The comultiplication
/// sends a word to its prefix chain; no multiplication is available at a
/// finite truncation.
class CosectionOracle : public Stage {
 public:
  explicit CosectionOracle(int depth, std::uint64_t cap = kDefaultCap)
      : depth_(depth), cap_(cap) {}

  std::string token() const override {
    return "oracle:cosection:" + std::to_string(depth_);
  }
  bool has_comult() const override { return true; }
  int depth() const { return depth_; }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    if (f.dom().backend != Backend::finset)
      throw BackendMismatch("cosection oracle works on finite sets");
    const int nx = f.dom().size, ny = f.cod().size;
    detail::Words words(ny, depth_);
    std::uint64_t sz =
        detail::sat_mul(static_cast<std::uint64_t>(nx), words.total);
    if (sz > cap_) throw CapExceeded("cosection oracle middle object", sz);
    BaseObject mid = finset_obj(static_cast<int>(sz));
    std::vector<int> lam(nx), rho(static_cast<std::size_t>(sz));
    for (int x = 0; x < nx; ++x) lam[x] = static_cast<int>(x * words.total);
    for (int x = 0; x < nx; ++x)
      for (std::uint64_t w = 0; w < words.total; ++w) {
        std::vector<int> word = words.decode(w);
        rho[x * words.total + w] =
            word.empty() ? f.mor.map[x] : word.back();
      }
    return {finset_mor(f.dom(), mid, lam), mid,
            finset_mor(mid, f.cod(), rho)};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    const Factorization& fa = factor(sq.src);
    const Factorization& fb = factor(sq.tgt);
    detail::Words wa(sq.src.cod().size, depth_);
    detail::Words wb(sq.tgt.cod().size, depth_);
    std::vector<int> m(fa.mid.size);
    for (int x = 0; x < sq.src.dom().size; ++x)
      for (std::uint64_t w = 0; w < wa.total; ++w) {
        std::vector<int> word = wa.decode(w);
        for (int& letter : word) letter = sq.k.map[letter];
        m[x * wa.total + w] = static_cast<int>(
            sq.h.map[x] * wb.total + wb.encode(word));
      }
    return finset_mor(fa.mid, fb.mid, m);
  }

  BaseMorphism compute_comult(const Arrow& f) const override {
    const Factorization& ff = factor(f);
    const Factorization& fl = factor(Arrow(ff.lambda));
    const int nx = f.dom().size;
    detail::Words wy(f.cod().size, depth_);
    detail::Words wm(ff.mid.size, depth_);
    std::vector<int> m(ff.mid.size);
    for (int x = 0; x < nx; ++x)
      for (std::uint64_t w = 0; w < wy.total; ++w) {
        std::vector<int> word = wy.decode(w);
        std::vector<int> chain(word.size());
        std::vector<int> prefix;
        for (std::size_t i = 0; i < word.size(); ++i) {
          prefix.push_back(word[i]);
          chain[i] = static_cast<int>(x * wy.total + wy.encode(prefix));
        }
        m[x * wy.total + w] =
            static_cast<int>(x * wm.total + wm.encode(chain));
      }
    return finset_mor(ff.mid, fl.mid, m);
  }

 private:
  int depth_;
  std::uint64_t cap_;
};

/// Closed form for the two-generator set {empty -> point, first point of
/// a pair} on finite sets, truncated at word length `depth`: middle
/// object (X + Y) x Y-words.  Factorization and squares only.
class BothOracle : public Stage {
 public:
  explicit BothOracle(int depth, std::uint64_t cap = kDefaultCap)
      : depth_(depth), cap_(cap) {}

  std::string token() const override {
    return "oracle:both:" + std::to_string(depth_);
  }
  int depth() const { return depth_; }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    if (f.dom().backend != Backend::finset)
      throw BackendMismatch("combined oracle works on finite sets");
    const int nx = f.dom().size, ny = f.cod().size;
    detail::Words words(ny, depth_);
    std::uint64_t sz =
        detail::sat_mul(static_cast<std::uint64_t>(nx + ny), words.total);
    if (sz > cap_) throw CapExceeded("combined oracle middle object", sz);
    BaseObject mid = finset_obj(static_cast<int>(sz));
    std::vector<int> lam(nx), rho(static_cast<std::size_t>(sz));
    for (int x = 0; x < nx; ++x) lam[x] = static_cast<int>(x * words.total);
    for (int b = 0; b < nx + ny; ++b)
      for (std::uint64_t w = 0; w < words.total; ++w) {
        std::vector<int> word = words.decode(w);
        rho[b * words.total + w] =
            !word.empty() ? word.back()
                          : (b < nx ? f.mor.map[b] : b - nx);
      }
    return {finset_mor(f.dom(), mid, lam), mid,
            finset_mor(mid, f.cod(), rho)};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    const Factorization& fa = factor(sq.src);
    const Factorization& fb = factor(sq.tgt);
    const int nxa = sq.src.dom().size;
    const int nxb = sq.tgt.dom().size;
    detail::Words wa(sq.src.cod().size, depth_);
    detail::Words wb(sq.tgt.cod().size, depth_);
    std::vector<int> m(fa.mid.size);
    for (int b = 0; b < nxa + sq.src.cod().size; ++b) {
      int image = b < nxa ? sq.h.map[b] : nxb + sq.k.map[b - nxa];
      for (std::uint64_t w = 0; w < wa.total; ++w) {
        std::vector<int> word = wa.decode(w);
        for (int& letter : word) letter = sq.k.map[letter];
        m[b * wa.total + w] =
            static_cast<int>(image * wb.total + wb.encode(word));
      }
    }
    return finset_mor(fa.mid, fb.mid, m);
  }

 private:
  int depth_;
  std::uint64_t cap_;
};

/// Closed form for the source-vertex inclusion generator on finite
/// graphs, truncated at path length `depth`: the middle object grows a
/// whisker for every bounded path out of the image of each vertex.
/// Factorization and squares only.
class GraphOracle : public Stage {
 public:
  explicit GraphOracle(int depth, std::uint64_t cap = kDefaultCap)
      : depth_(depth), cap_(cap) {}

  std::string token() const override {
    return "oracle:graph:" + std::to_string(depth_);
  }
  int depth() const { return depth_; }

  struct PathTable {
    // per whisker node: the base vertex and the path out of its image
    std::vector<std::pair<int, std::vector<int>>> nodes;
    std::unordered_map<std::string, int> index;
    static std::string key(int c, const std::vector<int>& p) {
      std::string k = std::to_string(c);
      for (int e : p) k += "," + std::to_string(e);
      return k;
    }
  };

  const PathTable& paths(const Arrow& g) const {
    const std::string ck = arrow_key(g);
    {
      std::lock_guard<std::mutex> lock(pmu_);
      auto it = pcache_.find(ck);
      if (it != pcache_.end()) return it->second;
    }
    PathTable t = build_paths(g);
    std::lock_guard<std::mutex> lock(pmu_);
    return pcache_.emplace(ck, std::move(t)).first->second;
  }

 protected:
  Factorization compute_factor(const Arrow& g) const override {
    if (g.dom().backend != Backend::fingraph)
      throw BackendMismatch("graph oracle works on finite graphs");
    const PathTable& t = paths(g);
    const BaseObject& c = g.dom();
    const BaseObject& d = g.cod();
    const int nv = c.vertices, na = c.arrows;
    const int extra = static_cast<int>(t.nodes.size());
    std::vector<int> src(c.src), tgt(c.tgt);
    src.resize(na + extra);
    tgt.resize(na + extra);
    for (int i = 0; i < extra; ++i) {
      const auto& [base, path] = t.nodes[i];
      if (path.size() == 1) {
        src[na + i] = base;
      } else {
        std::vector<int> head(path.begin(), path.end() - 1);
        src[na + i] = nv + t.index.at(PathTable::key(base, head));
      }
      tgt[na + i] = nv + i;
    }
    BaseObject mid = fingraph_obj(nv + extra, src, tgt);
    std::vector<int> lv(nv), la(na);
    for (int v = 0; v < nv; ++v) lv[v] = v;
    for (int a = 0; a < na; ++a) la[a] = a;
    std::vector<int> rv(nv + extra), ra(na + extra);
    for (int v = 0; v < nv; ++v) rv[v] = g.mor.vmap[v];
    for (int a = 0; a < na; ++a) ra[a] = g.mor.amap[a];
    for (int i = 0; i < extra; ++i) {
      rv[nv + i] = d.tgt[t.nodes[i].second.back()];
      ra[na + i] = t.nodes[i].second.back();
    }
    return {fingraph_mor(c, mid, lv, la), mid,
            fingraph_mor(mid, d, rv, ra)};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    const Factorization& fa = factor(sq.src);
    const Factorization& fb = factor(sq.tgt);
    const PathTable& ta = paths(sq.src);
    const PathTable& tb = paths(sq.tgt);
    const int nva = sq.src.dom().vertices, naa = sq.src.dom().arrows;
    const int nvb = sq.tgt.dom().vertices, nab = sq.tgt.dom().arrows;
    std::vector<int> mv(fa.mid.vertices), ma(fa.mid.arrows);
    for (int v = 0; v < nva; ++v) mv[v] = sq.h.vmap[v];
    for (int a = 0; a < naa; ++a) ma[a] = sq.h.amap[a];
    for (std::size_t i = 0; i < ta.nodes.size(); ++i) {
      std::vector<int> mapped = ta.nodes[i].second;
      for (int& e : mapped) e = sq.k.amap[e];
      int j = tb.index.at(
          PathTable::key(sq.h.vmap[ta.nodes[i].first], mapped));
      mv[nva + i] = nvb + j;
      ma[naa + i] = nab + j;
    }
    return fingraph_mor(fa.mid, fb.mid, mv, ma);
  }

 private:
  PathTable build_paths(const Arrow& g) const {
    PathTable t;
    const BaseObject& d = g.cod();
    // arrows out of each target vertex, in id order
    std::vector<std::vector<int>> out(d.vertices);
    for (int e = 0; e < d.arrows; ++e) out[d.src[e]].push_back(e);
    for (int c = 0; c < g.dom().vertices; ++c) {
      std::vector<std::pair<int, std::vector<int>>> frontier;
      frontier.emplace_back(g.mor.vmap[c], std::vector<int>{});
      for (int len = 1; len <= depth_; ++len) {
        std::vector<std::pair<int, std::vector<int>>> next;
        for (const auto& [at, path] : frontier)
          for (int e : out[at]) {
            std::vector<int> ext = path;
            ext.push_back(e);
            if (t.nodes.size() >= cap_)
              throw CapExceeded("graph oracle middle object",
                                t.nodes.size());
            t.index.emplace(PathTable::key(c, ext),
                            static_cast<int>(t.nodes.size()));
            t.nodes.emplace_back(c, ext);
            next.emplace_back(d.tgt[e], std::move(ext));
          }
        frontier = std::move(next);
      }
    }
    return t;
  }

  int depth_;
  std::uint64_t cap_;
  mutable std::mutex pmu_;
  mutable std::unordered_map<std::string, PathTable> pcache_;
};

/// Closed form for the generating set {zero module -> free rank one} over
/// a prime field: the middle object is M plus the free module on the
/// underlying set of N.  Carries both structure maps; middle objects have
/// rank m + q^n, so keep ranks small.
class ModOracle : public Stage {
 public:
  explicit ModOracle(std::uint64_t cap = kDefaultCap) : cap_(cap) {}

  std::string token() const override { return "oracle:mod"; }
  bool has_comult() const override { return true; }
  bool has_mult() const override { return true; }

  /// Index of an element of F_q^r, first coordinate most significant.
  static std::uint64_t element_index(const std::vector<int>& v, int q) {
    std::uint64_t idx = 0;
    for (int d : v) idx = idx * static_cast<std::uint64_t>(q) +
                          static_cast<std::uint64_t>(modq::norm(d, q));
    return idx;
  }

 protected:
  Factorization compute_factor(const Arrow& g) const override {
    if (g.dom().backend != Backend::finmod)
      throw BackendMismatch("mod oracle works on prime-field modules");
    const int q = g.dom().q;
    const int m = g.dom().rank, n = g.cod().rank;
    std::uint64_t big = detail::sat_pow(static_cast<std::uint64_t>(q),
                                        static_cast<std::uint64_t>(n));
    if (big > cap_ || big + static_cast<std::uint64_t>(m) > cap_)
      throw CapExceeded("mod oracle middle object", big);
    const int bigm = static_cast<int>(big);
    BaseObject mid = finmod_obj(q, m + bigm);
    std::vector<std::vector<int>> lam(m + bigm, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i) lam[i][i] = 1;
    std::vector<std::vector<int>> rho(n, std::vector<int>(m + bigm, 0));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) rho[r][c] = g.mor.matrix[r][c];
    // basis vector for the set element v evaluates to v itself
    std::vector<int> v(n, 0);
    for (int t = 0; t < bigm; ++t) {
      for (int r = 0; r < n; ++r) rho[r][m + t] = v[r];
      for (int i = n; i-- > 0;) {
        if (++v[i] < q) break;
        v[i] = 0;
      }
    }
    return {finmod_mor(g.dom(), mid, lam), mid,
            finmod_mor(mid, g.cod(), rho)};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    const Factorization& fa = factor(sq.src);
    const Factorization& fb = factor(sq.tgt);
    const int q = sq.src.dom().q;
    const int ma = sq.src.dom().rank, na = sq.src.cod().rank;
    const int mb = sq.tgt.dom().rank;
    std::vector<std::vector<int>> mat(
        fb.mid.rank, std::vector<int>(fa.mid.rank, 0));
    for (int r = 0; r < mb; ++r)
      for (int c = 0; c < ma; ++c) mat[r][c] = sq.h.matrix[r][c];
    std::vector<int> v(na, 0);
    const int biga = fa.mid.rank - ma;
    for (int t = 0; t < biga; ++t) {
      std::vector<int> kv(sq.tgt.cod().rank, 0);
      for (int r = 0; r < sq.tgt.cod().rank; ++r) {
        int acc = 0;
        for (int c = 0; c < na; ++c) acc += sq.k.matrix[r][c] * v[c];
        kv[r] = modq::norm(acc, q);
      }
      mat[mb + static_cast<int>(element_index(kv, q))][ma + t] = 1;
      for (int i = na; i-- > 0;) {
        if (++v[i] < q) break;
        v[i] = 0;
      }
    }
    return finmod_mor(fa.mid, fb.mid, mat);
  }

  BaseMorphism compute_comult(const Arrow& g) const override {
    const Factorization& ff = factor(g);
    const Factorization& fl = factor(Arrow(ff.lambda));
    const int q = g.dom().q;
    const int m = g.dom().rank;
    const int em = ff.mid.rank;
    std::vector<std::vector<int>> mat(
        fl.mid.rank, std::vector<int>(em, 0));
    for (int i = 0; i < m; ++i) mat[i][i] = 1;
    for (int t = 0; t + m < em; ++t) {
      // basis element t lands on the basis vector of its own image
      std::vector<int> u(em, 0);
      u[m + t] = 1;
      mat[m + static_cast<int>(element_index(u, q))][m + t] = 1;
    }
    return finmod_mor(ff.mid, fl.mid, mat);
  }

  BaseMorphism compute_mult(const Arrow& g) const override {
    const Factorization& ff = factor(g);
    const Factorization& fr = factor(Arrow(ff.rho));
    const int m = g.dom().rank;
    const int em = ff.mid.rank;
    std::vector<std::vector<int>> mat(em, std::vector<int>(fr.mid.rank, 0));
    for (int i = 0; i < em; ++i) mat[i][i] = 1;
    for (int t = 0; t + em < fr.mid.rank; ++t) mat[m + t][em + t] = 1;
    return finmod_mor(fr.mid, ff.mid, mat);
  }

 private:
  std::uint64_t cap_;
};

}  // namespace nwfs
