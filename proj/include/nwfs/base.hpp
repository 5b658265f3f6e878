#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "nwfs/errors.hpp"

namespace nwfs {

enum class Backend { finset, fingraph, finmod };

inline const char* backend_name(Backend b) {
  switch (b) {
    case Backend::finset: return "finset";
    case Backend::fingraph: return "fingraph";
    case Backend::finmod: return "finmod";
  }
  return "?";
}

/// An object of one of the three base categories, tagged by backend.
///
///  - finset:   a finite set {0, ..., size-1}
///  - fingraph: a finite directed multigraph; arrows carry src/tgt vertex ids
///  - finmod:   the free module (Z/q)^rank for a prime q
struct BaseObject {
  Backend backend = Backend::finset;

  // finset
  int size = 0;

  // fingraph
  int vertices = 0;
  int arrows = 0;
  std::vector<int> src, tgt;

  // finmod
  int q = 0;
  int rank = 0;

  bool operator==(const BaseObject& o) const {
    if (backend != o.backend) return false;
    switch (backend) {
      case Backend::finset: return size == o.size;
      case Backend::fingraph:
        return vertices == o.vertices && arrows == o.arrows && src == o.src &&
               tgt == o.tgt;
      case Backend::finmod: return q == o.q && rank == o.rank;
    }
    return false;
  }
  bool operator!=(const BaseObject& o) const { return !(*this == o); }
};

inline BaseObject finset_obj(int n) {
  if (n < 0) throw Error("finset object needs size >= 0");
  BaseObject x;
  x.backend = Backend::finset;
  x.size = n;
  return x;
}

inline BaseObject fingraph_obj(int nv, std::vector<int> src,
                               std::vector<int> tgt) {
  if (src.size() != tgt.size())
    throw Error("fingraph object: src/tgt length mismatch");
  BaseObject x;
  x.backend = Backend::fingraph;
  x.vertices = nv;
  x.arrows = static_cast<int>(src.size());
  for (int v : src)
    if (v < 0 || v >= nv) throw Error("fingraph object: src out of range");
  for (int v : tgt)
    if (v < 0 || v >= nv) throw Error("fingraph object: tgt out of range");
  x.src = std::move(src);
  x.tgt = std::move(tgt);
  return x;
}

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

inline BaseObject finmod_obj(int q, int rank) {
  if (!is_prime(q)) throw Error("finmod object: q must be prime");
  if (rank < 0) throw Error("finmod object: rank must be >= 0");
  BaseObject x;
  x.backend = Backend::finmod;
  x.q = q;
  x.rank = rank;
  return x;
}

/// A size measure used by reports: element count for finset, vertex+arrow
/// count for fingraph, rank for finmod (cardinality q^rank would explode).
inline std::size_t object_size(const BaseObject& x) {
  switch (x.backend) {
    case Backend::finset: return static_cast<std::size_t>(x.size);
    case Backend::fingraph:
      return static_cast<std::size_t>(x.vertices + x.arrows);
    case Backend::finmod: return static_cast<std::size_t>(x.rank);
  }
  return 0;
}

/// A morphism between BaseObjects of the same backend.
///
///  - finset:   map[i] = image of i
///  - fingraph: vmap on vertices, amap on arrows (homomorphism condition
///              enforced by check())
///  - finmod:   matrix with cod.rank rows and dom.rank cols acting on column
///              vectors, entries reduced mod q
struct BaseMorphism {
  BaseObject dom, cod;
  std::vector<int> map;
  std::vector<int> vmap, amap;
  std::vector<std::vector<int>> matrix;

  bool operator==(const BaseMorphism& o) const {
    if (!(dom == o.dom) || !(cod == o.cod)) return false;
    switch (dom.backend) {
      case Backend::finset: return map == o.map;
      case Backend::fingraph: return vmap == o.vmap && amap == o.amap;
      case Backend::finmod: return matrix == o.matrix;
    }
    return false;
  }
  bool operator!=(const BaseMorphism& o) const { return !(*this == o); }
};

/// Validates well-formedness; throws Error with a description on failure.
inline void check_morphism(const BaseMorphism& f) {
  if (f.dom.backend != f.cod.backend)
    throw BackendMismatch("morphism mixes backends");
  switch (f.dom.backend) {
    case Backend::finset: {
      if (static_cast<int>(f.map.size()) != f.dom.size)
        throw Error("finset morphism: map length != dom size");
      for (int v : f.map)
        if (v < 0 || v >= f.cod.size)
          throw Error("finset morphism: value out of range");
      break;
    }
    case Backend::fingraph: {
      if (static_cast<int>(f.vmap.size()) != f.dom.vertices)
        throw Error("fingraph morphism: vmap length != dom vertices");
      if (static_cast<int>(f.amap.size()) != f.dom.arrows)
        throw Error("fingraph morphism: amap length != dom arrows");
      for (int v : f.vmap)
        if (v < 0 || v >= f.cod.vertices)
          throw Error("fingraph morphism: vmap value out of range");
      for (int a : f.amap)
        if (a < 0 || a >= f.cod.arrows)
          throw Error("fingraph morphism: amap value out of range");
      for (int a = 0; a < f.dom.arrows; ++a) {
        if (f.cod.src[f.amap[a]] != f.vmap[f.dom.src[a]] ||
            f.cod.tgt[f.amap[a]] != f.vmap[f.dom.tgt[a]])
          throw Error("fingraph morphism: not a graph homomorphism");
      }
      break;
    }
    case Backend::finmod: {
      if (f.dom.q != f.cod.q) throw BackendMismatch("finmod morphism: q differs");
      if (static_cast<int>(f.matrix.size()) != f.cod.rank)
        throw Error("finmod morphism: row count != cod rank");
      for (const auto& row : f.matrix) {
        if (static_cast<int>(row.size()) != f.dom.rank)
          throw Error("finmod morphism: col count != dom rank");
        for (int v : row)
          if (v < 0 || v >= f.dom.q)
            throw Error("finmod morphism: entry not reduced mod q");
      }
      break;
    }
  }
}

inline BaseMorphism finset_mor(const BaseObject& dom, const BaseObject& cod,
                               std::vector<int> map) {
  BaseMorphism f;
  f.dom = dom;
  f.cod = cod;
  f.map = std::move(map);
  check_morphism(f);
  return f;
}

inline BaseMorphism fingraph_mor(const BaseObject& dom, const BaseObject& cod,
                                 std::vector<int> vmap, std::vector<int> amap) {
  BaseMorphism f;
  f.dom = dom;
  f.cod = cod;
  f.vmap = std::move(vmap);
  f.amap = std::move(amap);
  check_morphism(f);
  return f;
}

inline BaseMorphism finmod_mor(const BaseObject& dom, const BaseObject& cod,
                               std::vector<std::vector<int>> matrix) {
  BaseMorphism f;
  f.dom = dom;
  f.cod = cod;
  f.matrix = std::move(matrix);
  check_morphism(f);
  return f;
}

inline BaseMorphism identity(const BaseObject& x) {
  BaseMorphism f;
  f.dom = f.cod = x;
  switch (x.backend) {
    case Backend::finset:
      f.map.resize(x.size);
      std::iota(f.map.begin(), f.map.end(), 0);
      break;
    case Backend::fingraph:
      f.vmap.resize(x.vertices);
      f.amap.resize(x.arrows);
      std::iota(f.vmap.begin(), f.vmap.end(), 0);
      std::iota(f.amap.begin(), f.amap.end(), 0);
      break;
    case Backend::finmod:
      f.matrix.assign(x.rank, std::vector<int>(x.rank, 0));
      for (int i = 0; i < x.rank; ++i) f.matrix[i][i] = 1;
      break;
  }
  return f;
}

/// g after f.  Throws NotComposable unless cod f == dom g.
inline BaseMorphism compose(const BaseMorphism& g, const BaseMorphism& f) {
  if (f.dom.backend != g.dom.backend)
    throw BackendMismatch("compose: backends differ");
  if (!(f.cod == g.dom)) throw NotComposable("compose: cod f != dom g");
  BaseMorphism h;
  h.dom = f.dom;
  h.cod = g.cod;
  switch (f.dom.backend) {
    case Backend::finset:
      h.map.resize(f.map.size());
      for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
      break;
    case Backend::fingraph:
      h.vmap.resize(f.vmap.size());
      h.amap.resize(f.amap.size());
      for (std::size_t i = 0; i < f.vmap.size(); ++i)
        h.vmap[i] = g.vmap[f.vmap[i]];
      for (std::size_t i = 0; i < f.amap.size(); ++i)
        h.amap[i] = g.amap[f.amap[i]];
      break;
    case Backend::finmod: {
      const int q = f.dom.q;
      h.matrix.assign(g.cod.rank, std::vector<int>(f.dom.rank, 0));
      for (int i = 0; i < g.cod.rank; ++i)
        for (int k = 0; k < g.dom.rank; ++k) {
          if (g.matrix[i][k] == 0) continue;
          for (int j = 0; j < f.dom.rank; ++j)
            h.matrix[i][j] =
                (h.matrix[i][j] + g.matrix[i][k] * f.matrix[k][j]) % q;
        }
      break;
    }
  }
  return h;
}

// --- exact linear algebra over Z/q (q prime, small) ----------------------

namespace modq {

inline int norm(int v, int q) {
  v %= q;
  return v < 0 ? v + q : v;
}

inline int inv(int a, int q) {  // inverse mod prime q
  a = norm(a, q);
  if (a == 0) throw Error("mod inverse of 0");
  int r = 1;
  for (int e = q - 2; e > 0; e >>= 1) {  // a^(q-2)
    if (e & 1) r = r * a % q;
    a = a * a % q;
  }
  return r;
}

/// In-place row reduction to reduced row echelon form.  Pivots are chosen
/// leftmost-first, which fixes the canonical representative of every row
/// space the engine ever quotients by.  Returns the pivot columns.
inline std::vector<int> rref(std::vector<std::vector<int>>& m, int q) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] % q != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    const int s = inv(m[r][c], q);
    for (int j = 0; j < cols; ++j) m[r][j] = m[r][j] * s % q;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const int t = m[i][c];
      for (int j = 0; j < cols; ++j)
        m[i][j] = norm(m[i][j] - t * m[r][j], q);
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);  // drop zero rows
  return pivots;
}

inline int rank(std::vector<std::vector<int>> m, int q) {
  return static_cast<int>(rref(m, q).size());
}

/// Solves A x = b; returns false when inconsistent.
inline bool solve(const std::vector<std::vector<int>>& a,
                  const std::vector<int>& b, std::vector<int>& x, int q) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<std::vector<int>> aug(rows, std::vector<int>(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug[i][j] = norm(a[i][j], q);
    aug[i][cols] = norm(b[i], q);
  }
  auto piv = rref(aug, q);
  x.assign(cols, 0);
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] == cols) return false;  // pivot in the constant column
    x[piv[k]] = aug[k][cols];
  }
  return true;
}

}  // namespace modq

/// True when f has a two-sided inverse; fills *inverse when given.
inline bool is_iso(const BaseMorphism& f, BaseMorphism* inverse = nullptr) {
  switch (f.dom.backend) {
    case Backend::finset: {
      if (f.dom.size != f.cod.size) return false;
      std::vector<int> inv(f.cod.size, -1);
      for (int i = 0; i < f.dom.size; ++i) {
        if (inv[f.map[i]] != -1) return false;
        inv[f.map[i]] = i;
      }
      if (inverse) *inverse = finset_mor(f.cod, f.dom, inv);
      return true;
    }
    case Backend::fingraph: {
      if (f.dom.vertices != f.cod.vertices || f.dom.arrows != f.cod.arrows)
        return false;
      std::vector<int> vinv(f.cod.vertices, -1), ainv(f.cod.arrows, -1);
      for (int i = 0; i < f.dom.vertices; ++i) {
        if (vinv[f.vmap[i]] != -1) return false;
        vinv[f.vmap[i]] = i;
      }
      for (int i = 0; i < f.dom.arrows; ++i) {
        if (ainv[f.amap[i]] != -1) return false;
        ainv[f.amap[i]] = i;
      }
      BaseMorphism g;
      g.dom = f.cod;
      g.cod = f.dom;
      g.vmap = std::move(vinv);
      g.amap = std::move(ainv);
      check_morphism(g);  // inverse of a hom between equal graphs is a hom
      if (inverse) *inverse = g;
      return true;
    }
    case Backend::finmod: {
      if (f.dom.rank != f.cod.rank) return false;
      const int n = f.dom.rank, q = f.dom.q;
      // Invert by solving M X = I column by column.
      std::vector<std::vector<int>> inv(n, std::vector<int>(n, 0));
      for (int c = 0; c < n; ++c) {
        std::vector<int> e(n, 0), x;
        e[c] = 1;
        if (!modq::solve(f.matrix, e, x, q)) return false;
        for (int r = 0; r < n; ++r) inv[r][c] = x[r];
      }
      // solve() succeeds for any rhs iff full row rank; with square M that
      // plus the explicit product check below gives a two-sided inverse.
      BaseMorphism g = finmod_mor(f.cod, f.dom, inv);
      if (!(compose(f, g) == identity(f.cod))) return false;
      if (inverse) *inverse = g;
      return true;
    }
  }
  return false;
}

inline BaseMorphism inverse_of(const BaseMorphism& f) {
  BaseMorphism inv;
  if (!is_iso(f, &inv)) throw NotIso("inverse_of: morphism is not invertible");
  return inv;
}

}  // namespace nwfs
