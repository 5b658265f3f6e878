#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nwfs/base.hpp"
#include "nwfs/hom.hpp"

namespace nwfs {

/// An object of the arrow category: a single morphism of the base category.
struct Arrow {
  BaseMorphism mor;

  Arrow() = default;
  explicit Arrow(BaseMorphism m) : mor(std::move(m)) {}

  const BaseObject& dom() const { return mor.dom; }
  const BaseObject& cod() const { return mor.cod; }

  bool operator==(const Arrow& o) const { return mor == o.mor; }
  bool operator!=(const Arrow& o) const { return !(mor == o.mor); }
};

/// A morphism of the arrow category: a commuting square
///
///     dom src --h--> dom tgt
///        |              |
///       src            tgt
///        |              |
///     cod src --k--> cod tgt
///
/// Commutation (tgt . h == k . src) is enforced at construction.
struct Square {
  Arrow src, tgt;
  BaseMorphism h, k;

  Square() = default;
  Square(Arrow s, Arrow t, BaseMorphism h_, BaseMorphism k_)
      : src(std::move(s)), tgt(std::move(t)), h(std::move(h_)),
        k(std::move(k_)) {
    if (!(h.dom == src.dom()) || !(h.cod == tgt.dom()) ||
        !(k.dom == src.cod()) || !(k.cod == tgt.cod()))
      throw Error("square: component boundaries do not match the arrows");
    if (!(compose(tgt.mor, h) == compose(k, src.mor)))
      throw NotCommuting("square: tgt . h != k . src");
  }
};

inline Square identity_square(const Arrow& f) {
  return Square(f, f, identity(f.dom()), identity(f.cod()));
}

/// Vertical composition: (m2: b -> c) after (m1: a -> b).
inline Square compose_squares(const Square& m2, const Square& m1) {
  if (!(m1.tgt == m2.src))
    throw NotComposable("compose_squares: middle arrows differ");
  return Square(m1.src, m2.tgt, compose(m2.h, m1.h), compose(m2.k, m1.k));
}

/// A named family of generating arrows.
struct GeneratingSet {
  struct Entry {
    std::string name;
    Arrow arrow;
  };
  std::vector<Entry> entries;

  Backend backend() const {
    if (entries.empty()) throw IncompleteData("generating set is empty");
    return entries[0].arrow.dom().backend;
  }
};

/// All squares f -> g, ordered lexicographically by (h, k) in hom
/// enumeration order.  Throws CapExceeded when |hom| * |hom| would pass cap.
inline std::vector<Square> enumerate_squares(const Arrow& f, const Arrow& g,
                                             std::uint64_t cap = kDefaultCap) {
  std::uint64_t bound = detail::sat_mul(hom_count(f.dom(), g.dom(), cap),
                                        hom_count(f.cod(), g.cod(), cap));
  if (bound > cap)
    throw CapExceeded("enumerate_squares: candidate pairs exceed cap", bound);
  std::vector<Square> out;
  auto hs = hom_enumerate(f.dom(), g.dom(), cap);
  auto ks = hom_enumerate(f.cod(), g.cod(), cap);
  for (const auto& h : hs)
    for (const auto& k : ks)
      if (compose(g.mor, h) == compose(k, f.mor))
        out.emplace_back(f, g, h, k);
  return out;
}

/// One lifting problem: a generator index and a square generator -> target.
struct Problem {
  std::size_t gen = 0;
  Square square;
};

/// Every lifting problem from the generating set into g, generator-major,
/// squares in enumerate_squares order.  This is the index set S_g that the
/// one-step construction glues cells over.
inline std::vector<Problem> full_problem_set(const GeneratingSet& gens,
                                             const Arrow& g,
                                             std::uint64_t cap = kDefaultCap) {
  std::vector<Problem> out;
  for (std::size_t j = 0; j < gens.entries.size(); ++j)
    for (auto& sq : enumerate_squares(gens.entries[j].arrow, g, cap))
      out.push_back(Problem{j, std::move(sq)});
  return out;
}

}  // namespace nwfs
