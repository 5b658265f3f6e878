#pragma once

#include <cstddef>
#include <vector>

#include "nwfs/base.hpp"
#include "nwfs/errors.hpp"

namespace nwfs {

enum class ColimitKind { coproduct, pushout, coequalizer, chain };

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }

  /// Class index per element.  Classes are numbered by their smallest
  /// member, ascending, which is the canonical apex element order.
  std::vector<int> classes(int* count) const {
    std::vector<int> cls(parent.size(), -1);
    UnionFind copy = *this;
    int next = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) {
      int r = copy.find(i);
      if (cls[r] < 0) cls[r] = next++;
      cls[i] = cls[r];
    }
    *count = next;
    return cls;
  }
};

}  // namespace detail

/// A computed colimit: the apex, one leg per input object, and enough
/// context (kind + the legs themselves) to build the universal map out of
/// any compatible cocone.
struct ColimitResult {
  ColimitKind kind = ColimitKind::coproduct;
  BaseObject apex;
  std::vector<BaseMorphism> legs;

  /// The unique mediating morphism apex -> Z for a cocone with components
  /// cocone[i] : dom(legs[i]) -> Z.  Verifies that the cocone actually
  /// factors through the quotient; a mismatch throws NotCommuting.
  BaseMorphism universal(const std::vector<BaseMorphism>& cocone) const;
};

// --- coproduct ------------------------------------------------------------

inline ColimitResult coproduct(const std::vector<BaseObject>& parts) {
  if (parts.empty()) throw Error("coproduct: needs at least one summand; pass the initial object explicitly for empty families");
  ColimitResult res;
  res.kind = ColimitKind::coproduct;
  const Backend bk = parts[0].backend;
  for (const auto& p : parts)
    if (p.backend != bk) throw BackendMismatch("coproduct: mixed backends");
  switch (bk) {
    case Backend::finset: {
      int total = 0;
      for (const auto& p : parts) total += p.size;
      res.apex = finset_obj(total);
      int off = 0;
      for (const auto& p : parts) {
        std::vector<int> m(p.size);
        for (int i = 0; i < p.size; ++i) m[i] = off + i;
        res.legs.push_back(finset_mor(p, res.apex, std::move(m)));
        off += p.size;
      }
      break;
    }
    case Backend::fingraph: {
      std::vector<int> src, tgt;
      int nv = 0;
      for (const auto& p : parts) {
        for (int a = 0; a < p.arrows; ++a) {
          src.push_back(p.src[a] + nv);
          tgt.push_back(p.tgt[a] + nv);
        }
        nv += p.vertices;
      }
      res.apex = fingraph_obj(nv, std::move(src), std::move(tgt));
      int voff = 0, aoff = 0;
      for (const auto& p : parts) {
        std::vector<int> vm(p.vertices), am(p.arrows);
        for (int i = 0; i < p.vertices; ++i) vm[i] = voff + i;
        for (int i = 0; i < p.arrows; ++i) am[i] = aoff + i;
        res.legs.push_back(
            fingraph_mor(p, res.apex, std::move(vm), std::move(am)));
        voff += p.vertices;
        aoff += p.arrows;
      }
      break;
    }
    case Backend::finmod: {
      const int q = parts[0].q;
      int total = 0;
      for (const auto& p : parts) {
        if (p.q != q) throw BackendMismatch("coproduct: finmod q differs");
        total += p.rank;
      }
      res.apex = finmod_obj(q, total);
      int off = 0;
      for (const auto& p : parts) {
        std::vector<std::vector<int>> m(total, std::vector<int>(p.rank, 0));
        for (int i = 0; i < p.rank; ++i) m[off + i][i] = 1;
        res.legs.push_back(finmod_mor(p, res.apex, std::move(m)));
        off += p.rank;
      }
      break;
    }
  }
  return res;
}

inline BaseObject initial_object(Backend bk, int q = 2) {
  switch (bk) {
    case Backend::finset: return finset_obj(0);
    case Backend::fingraph: return fingraph_obj(0, {}, {});
    case Backend::finmod: return finmod_obj(q, 0);
  }
  throw Error("initial_object: bad backend");
}

/// The unique morphism out of the initial object of the backend.
inline BaseMorphism from_initial(const BaseObject& init,
                                 const BaseObject& target) {
  if (!(init == initial_object(target.backend,
                               target.backend == Backend::finmod ? target.q : 2)))
    throw Error("from_initial: source is not the initial object");
  BaseMorphism f;
  f.dom = init;
  f.cod = target;
  if (target.backend == Backend::finmod)
    f.matrix.assign(target.rank, std::vector<int>{});
  check_morphism(f);
  return f;
}

// --- coequalizer ----------------------------------------------------------

/// Coequalizer of a parallel pair u, v : X -> Y.  The single leg is the
/// projection Y -> apex.  Canonical apex order: union-find classes by
/// smallest member (finset/fingraph) or the non-pivot coordinates of the
/// leftmost-pivot reduced relation space (finmod).
inline ColimitResult coequalizer(const BaseMorphism& u, const BaseMorphism& v) {
  if (!(u.dom == v.dom) || !(u.cod == v.cod))
    throw NotParallel("coequalizer: maps are not parallel");
  ColimitResult res;
  res.kind = ColimitKind::coequalizer;
  switch (u.dom.backend) {
    case Backend::finset: {
      detail::UnionFind uf(u.cod.size);
      for (int i = 0; i < u.dom.size; ++i) uf.unite(u.map[i], v.map[i]);
      int count = 0;
      std::vector<int> cls = uf.classes(&count);
      res.apex = finset_obj(count);
      res.legs.push_back(finset_mor(u.cod, res.apex, std::move(cls)));
      break;
    }
    case Backend::fingraph: {
      detail::UnionFind ufv(u.cod.vertices), ufa(u.cod.arrows);
      for (int i = 0; i < u.dom.vertices; ++i) ufv.unite(u.vmap[i], v.vmap[i]);
      for (int i = 0; i < u.dom.arrows; ++i) ufa.unite(u.amap[i], v.amap[i]);
      int nv = 0, na = 0;
      std::vector<int> vcls = ufv.classes(&nv), acls = ufa.classes(&na);
      // src/tgt on arrow classes; well defined because identified arrows
      // have identified endpoints, which we also assert below.
      std::vector<int> src(na, -1), tgt(na, -1);
      for (int a = 0; a < u.cod.arrows; ++a) {
        int c = acls[a];
        int s = vcls[u.cod.src[a]], t = vcls[u.cod.tgt[a]];
        if (src[c] == -1) {
          src[c] = s;
          tgt[c] = t;
        } else if (src[c] != s || tgt[c] != t) {
          throw InternalCheckFailure("graph coequalizer endpoints disagree");
        }
      }
      res.apex = fingraph_obj(nv, std::move(src), std::move(tgt));
      res.legs.push_back(
          fingraph_mor(u.cod, res.apex, std::move(vcls), std::move(acls)));
      break;
    }
    case Backend::finmod: {
      const int q = u.dom.q;
      const int r = u.cod.rank;
      // Relation subspace spanned by the columns of u - v.
      std::vector<std::vector<int>> rel(u.dom.rank, std::vector<int>(r, 0));
      for (int j = 0; j < u.dom.rank; ++j)
        for (int i = 0; i < r; ++i)
          rel[j][i] = modq::norm(u.matrix[i][j] - v.matrix[i][j], q);
      std::vector<int> pivots = modq::rref(rel, q);
      std::vector<bool> is_pivot(r, false);
      for (int p : pivots) is_pivot[p] = true;
      std::vector<int> free_cols;
      for (int c = 0; c < r; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
      const int qr = static_cast<int>(free_cols.size());
      res.apex = finmod_obj(q, qr);
      // Projection: reduce each basis vector by the relation rows, read off
      // the free coordinates.
      std::vector<std::vector<int>> proj(qr, std::vector<int>(r, 0));
      for (int j = 0; j < r; ++j) {
        std::vector<int> vec(r, 0);
        vec[j] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
          int t = vec[pivots[k]];
          if (t == 0) continue;
          for (int c = 0; c < r; ++c)
            vec[c] = modq::norm(vec[c] - t * rel[k][c], q);
        }
        for (int i = 0; i < qr; ++i) proj[i][j] = vec[free_cols[i]];
      }
      res.legs.push_back(finmod_mor(u.cod, res.apex, std::move(proj)));
      break;
    }
  }
  return res;
}

// --- pushout --------------------------------------------------------------

/// Pushout of f : A -> B along h : A -> C, computed as the quotient of
/// C + B by the images of A.  legs[0] : C -> apex, legs[1] : B -> apex.
inline ColimitResult pushout(const BaseMorphism& f, const BaseMorphism& h) {
  if (!(f.dom == h.dom)) throw Error("pushout: span feet disagree");
  ColimitResult cp = coproduct({h.cod, f.cod});
  ColimitResult ce =
      coequalizer(compose(cp.legs[0], h), compose(cp.legs[1], f));
  ColimitResult res;
  res.kind = ColimitKind::pushout;
  res.apex = ce.apex;
  res.legs.push_back(compose(ce.legs[0], cp.legs[0]));
  res.legs.push_back(compose(ce.legs[0], cp.legs[1]));
  return res;
}

// --- finite chain colimit -------------------------------------------------

/// Colimit of X_0 -> X_1 -> ... -> X_n (the final object with composite
/// legs).  `steps` may be empty, in which case the chain is just `start`.
inline ColimitResult chain_colimit(const BaseObject& start,
                                   const std::vector<BaseMorphism>& steps) {
  ColimitResult res;
  res.kind = ColimitKind::chain;
  BaseObject cur = start;
  for (const auto& s : steps) {
    if (!(s.dom == cur)) throw NotComposable("chain_colimit: broken chain");
    cur = s.cod;
  }
  res.apex = cur;
  // legs[i] : X_i -> X_n as the forward composite.
  std::vector<BaseMorphism> legs(steps.size() + 1);
  legs[steps.size()] = identity(cur);
  for (std::size_t i = steps.size(); i-- > 0;)
    legs[i] = compose(legs[i + 1], steps[i]);
  res.legs = std::move(legs);
  return res;
}

// --- universal maps -------------------------------------------------------

namespace detail {

// Elementwise mediating map for jointly surjective finset/fingraph legs.
inline BaseMorphism mediate_elementwise(const ColimitResult& col,
                                        const std::vector<BaseMorphism>& cocone,
                                        const BaseObject& target) {
  if (col.apex.backend == Backend::finset) {
    std::vector<int> out(col.apex.size, -1);
    for (std::size_t l = 0; l < col.legs.size(); ++l) {
      for (int x = 0; x < col.legs[l].dom.size; ++x) {
        int cls = col.legs[l].map[x];
        int val = cocone[l].map[x];
        if (out[cls] == -1) out[cls] = val;
        else if (out[cls] != val)
          throw NotCommuting("universal: cocone does not respect identifications");
      }
    }
    for (int v : out)
      if (v < 0) throw InternalCheckFailure("universal: apex element not covered");
    return finset_mor(col.apex, target, std::move(out));
  }
  // fingraph
  std::vector<int> vout(col.apex.vertices, -1), aout(col.apex.arrows, -1);
  for (std::size_t l = 0; l < col.legs.size(); ++l) {
    const auto& leg = col.legs[l];
    const auto& w = cocone[l];
    for (int x = 0; x < leg.dom.vertices; ++x) {
      int cls = leg.vmap[x], val = w.vmap[x];
      if (vout[cls] == -1) vout[cls] = val;
      else if (vout[cls] != val)
        throw NotCommuting("universal: vertex cocone mismatch");
    }
    for (int x = 0; x < leg.dom.arrows; ++x) {
      int cls = leg.amap[x], val = w.amap[x];
      if (aout[cls] == -1) aout[cls] = val;
      else if (aout[cls] != val)
        throw NotCommuting("universal: arrow cocone mismatch");
    }
  }
  for (int v : vout)
    if (v < 0) throw InternalCheckFailure("universal: apex vertex not covered");
  for (int v : aout)
    if (v < 0) throw InternalCheckFailure("universal: apex arrow not covered");
  return fingraph_mor(col.apex, target, std::move(vout), std::move(aout));
}

// Solve M . P = W for finmod, where P stacks the legs and W the cocone.
inline BaseMorphism mediate_linear(const ColimitResult& col,
                                   const std::vector<BaseMorphism>& cocone,
                                   const BaseObject& target) {
  const int q = col.apex.q;
  int total = 0;
  for (const auto& l : col.legs) total += l.dom.rank;
  const int ar = col.apex.rank, tr = target.rank;
  // P: ar x total, W: tr x total, unknown M: tr x ar with M P = W.
  std::vector<std::vector<int>> p(ar, std::vector<int>(total, 0));
  std::vector<std::vector<int>> w(tr, std::vector<int>(total, 0));
  int off = 0;
  for (std::size_t l = 0; l < col.legs.size(); ++l) {
    const int cols = col.legs[l].dom.rank;
    for (int i = 0; i < ar; ++i)
      for (int j = 0; j < cols; ++j) p[i][off + j] = col.legs[l].matrix[i][j];
    for (int i = 0; i < tr; ++i)
      for (int j = 0; j < cols; ++j) w[i][off + j] = cocone[l].matrix[i][j];
    off += cols;
  }
  // Transpose: P^T M^T = W^T, solved row of M at a time.
  std::vector<std::vector<int>> pt(total, std::vector<int>(ar));
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < total; ++j) pt[j][i] = p[i][j];
  std::vector<std::vector<int>> m(tr, std::vector<int>(ar, 0));
  for (int r = 0; r < tr; ++r) {
    std::vector<int> rhs(total), x;
    for (int j = 0; j < total; ++j) rhs[j] = w[r][j];
    if (!modq::solve(pt, rhs, x, q))
      throw NotCommuting("universal: cocone not in the image of the quotient");
    m[r] = x;
  }
  BaseMorphism med = finmod_mor(col.apex, target, std::move(m));
  return med;
}

}  // namespace detail

inline BaseMorphism ColimitResult::universal(
    const std::vector<BaseMorphism>& cocone) const {
  if (cocone.size() != legs.size())
    throw IncompleteData("universal: cocone component count mismatch");
  for (std::size_t i = 0; i < cocone.size(); ++i)
    if (!(cocone[i].dom == legs[i].dom))
      throw Error("universal: cocone component has wrong domain");
  const BaseObject& target = cocone.empty() ? apex : cocone[0].cod;
  for (const auto& c : cocone)
    if (!(c.cod == target)) throw Error("universal: cocone targets differ");

  BaseMorphism med;
  if (apex.backend == Backend::finmod)
    med = detail::mediate_linear(*this, cocone, target);
  else
    med = detail::mediate_elementwise(*this, cocone, target);
  // Exactness check: med . leg == cocone component, every leg.
  for (std::size_t i = 0; i < legs.size(); ++i)
    if (!(compose(med, legs[i]) == cocone[i]))
      throw NotCommuting("universal: mediating map fails a leg");
  return med;
}

}  // namespace nwfs
