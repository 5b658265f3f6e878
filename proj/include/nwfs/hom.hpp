#pragma once

#include <cstdint>
#include <vector>

#include "nwfs/base.hpp"
#include "nwfs/errors.hpp"

namespace nwfs {

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace detail

/// Number of morphisms X -> Y, saturated at 2^64-1.  For fingraph this
/// walks vertex assignments, so it is itself bounded by the cap argument;
/// when the walk would exceed the cap the count so far is returned saturated.
inline std::uint64_t hom_count(const BaseObject& x, const BaseObject& y,
                               std::uint64_t cap = kDefaultCap) {
  if (x.backend != y.backend) throw BackendMismatch("hom_count: backends differ");
  switch (x.backend) {
    case Backend::finset:
      return detail::sat_pow(static_cast<std::uint64_t>(y.size),
                             static_cast<std::uint64_t>(x.size));
    case Backend::finmod: {
      if (x.q != y.q) throw BackendMismatch("hom_count: finmod q differs");
      return detail::sat_pow(static_cast<std::uint64_t>(x.q),
                             detail::sat_mul(x.rank, y.rank));
    }
    case Backend::fingraph: {
      std::uint64_t vcount = detail::sat_pow(
          static_cast<std::uint64_t>(y.vertices),
          static_cast<std::uint64_t>(x.vertices));
      if (vcount > cap)
        throw CapExceeded("hom_count: fingraph vertex assignments exceed cap",
                          vcount);
      // Per vertex map, multiply per-arrow candidate counts.  A graph with
      // no vertices has no arrows either, so the empty map is the only one.
      if (x.vertices == 0) return 1;
      std::vector<int> vm(x.vertices, 0);
      std::uint64_t total = 0;
      bool done = y.vertices == 0;
      while (!done) {
        std::uint64_t prod = 1;
        for (int a = 0; a < x.arrows && prod > 0; ++a) {
          std::uint64_t c = 0;
          for (int b = 0; b < y.arrows; ++b)
            if (y.src[b] == vm[x.src[a]] && y.tgt[b] == vm[x.tgt[a]]) ++c;
          prod = detail::sat_mul(prod, c);
        }
        total += prod;
        if (total > cap) return total;  // caller compares against cap
        int i = x.vertices - 1;
        while (i >= 0 && vm[i] == y.vertices - 1) vm[i--] = 0;
        if (i < 0) done = true;
        else ++vm[i];
      }
      return total;
    }
  }
  return 0;
}

/// All morphisms X -> Y in a fixed lexicographic order (finset: on the map
/// vector; finmod: on the row-major matrix entries; fingraph: on the vertex
/// map, then per-arrow candidates ascending).  Throws CapExceeded when the
/// count exceeds `cap`.
inline std::vector<BaseMorphism> hom_enumerate(const BaseObject& x,
                                               const BaseObject& y,
                                               std::uint64_t cap = kDefaultCap) {
  std::uint64_t n = hom_count(x, y, cap);
  if (n > cap) throw CapExceeded("hom_enumerate: hom set exceeds cap", n);
  std::vector<BaseMorphism> out;
  out.reserve(static_cast<std::size_t>(n));
  switch (x.backend) {
    case Backend::finset: {
      if (x.size == 0) {
        out.push_back(finset_mor(x, y, {}));
        break;
      }
      if (y.size == 0) break;
      std::vector<int> m(x.size, 0);
      while (true) {
        out.push_back(finset_mor(x, y, m));
        int i = x.size - 1;
        while (i >= 0 && m[i] == y.size - 1) m[i--] = 0;
        if (i < 0) break;
        ++m[i];
      }
      break;
    }
    case Backend::finmod: {
      const int cells = x.rank * y.rank;
      std::vector<int> flat(cells, 0);
      while (true) {
        std::vector<std::vector<int>> mat(y.rank, std::vector<int>(x.rank));
        for (int i = 0; i < y.rank; ++i)
          for (int j = 0; j < x.rank; ++j) mat[i][j] = flat[i * x.rank + j];
        out.push_back(finmod_mor(x, y, std::move(mat)));
        int i = cells - 1;
        while (i >= 0 && flat[i] == x.q - 1) flat[i--] = 0;
        if (i < 0) break;
        ++flat[i];
      }
      break;
    }
    case Backend::fingraph: {
      std::vector<int> vm(x.vertices, 0);
      bool more = !(x.vertices > 0 && y.vertices == 0);
      while (more) {
        // candidate arrows per domain arrow under this vertex map
        std::vector<std::vector<int>> cand(x.arrows);
        bool ok = true;
        for (int a = 0; a < x.arrows && ok; ++a) {
          for (int b = 0; b < y.arrows; ++b)
            if (y.src[b] == vm[x.src[a]] && y.tgt[b] == vm[x.tgt[a]])
              cand[a].push_back(b);
          ok = !cand[a].empty();
        }
        if (ok) {
          std::vector<int> pick(x.arrows, 0);
          while (true) {
            std::vector<int> am(x.arrows);
            for (int a = 0; a < x.arrows; ++a) am[a] = cand[a][pick[a]];
            out.push_back(fingraph_mor(x, y, vm, std::move(am)));
            int i = x.arrows - 1;
            while (i >= 0 &&
                   pick[i] == static_cast<int>(cand[i].size()) - 1)
              pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
          }
        }
        if (x.vertices == 0) break;
        int i = x.vertices - 1;
        while (i >= 0 && vm[i] == y.vertices - 1) vm[i--] = 0;
        if (i < 0) more = false;
        else ++vm[i];
      }
      break;
    }
  }
  return out;
}

}  // namespace nwfs
