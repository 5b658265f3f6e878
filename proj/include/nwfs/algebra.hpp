#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nwfs/check.hpp"
#include "nwfs/freeseq.hpp"

namespace nwfs {

/// Coalgebra-style structure on an arrow over a fixed stage: a section
/// s: cod f -> mid f of the right part lying over the left part.
struct LMapStructure {
  std::string stage_token;
  Arrow f;
  BaseMorphism s;
};

/// Algebra-style structure on an arrow over a fixed stage: a retraction
/// p: mid g -> dom g of the left part lying over the right part.
struct RMapStructure {
  std::string stage_token;
  Arrow g;
  BaseMorphism p;
};

inline LawReport check_lmap(const StagePtr& st, const LMapStructure& lm) {
  LawReport rep;
  auto law = [&](const std::string& name, auto cond) {
    detail::run_law(rep, name, [&](LawResult& r) {
      r.checked = 1;
      if (!cond()) {
        r.pass = false;
        r.witness = arrow_key(lm.f);
      }
    });
  };
  law("lmap-stage-token", [&] { return lm.stage_token == st->token(); });
  law("lmap-over-left-part", [&] {
    return compose(lm.s, lm.f.mor) == st->factor(lm.f).lambda;
  });
  law("lmap-splits-right-part", [&] {
    return compose(st->factor(lm.f).rho, lm.s) == identity(lm.f.cod());
  });
  if (st->has_comult())
    law("lmap-coaction", [&] {
      Square expand(lm.f, st->left_arrow(lm.f), identity(lm.f.dom()), lm.s);
      return compose(st->comult(lm.f), lm.s) ==
             compose(st->map_square(expand), lm.s);
    });
  return rep;
}

inline LawReport check_rmap(const StagePtr& st, const RMapStructure& rm) {
  LawReport rep;
  auto law = [&](const std::string& name, auto cond) {
    detail::run_law(rep, name, [&](LawResult& r) {
      r.checked = 1;
      if (!cond()) {
        r.pass = false;
        r.witness = arrow_key(rm.g);
      }
    });
  };
  law("rmap-stage-token", [&] { return rm.stage_token == st->token(); });
  law("rmap-over-right-part", [&] {
    return compose(rm.g.mor, rm.p) == st->factor(rm.g).rho;
  });
  law("rmap-splits-left-part", [&] {
    return compose(rm.p, st->factor(rm.g).lambda) == identity(rm.g.dom());
  });
  if (st->has_mult())
    law("rmap-action", [&] {
      Square fold(st->right_arrow(rm.g), rm.g, rm.p, identity(rm.g.cod()));
      return compose(rm.p, st->mult(rm.g)) ==
             compose(rm.p, st->map_square(fold));
    });
  return rep;
}

/// Does the square carry (lm1, lm2) as a map of structured arrows?
inline bool lmap_morphism_ok(const StagePtr& st, const LMapStructure& lm1,
                             const LMapStructure& lm2, const Square& sq) {
  return compose(lm2.s, sq.k) == compose(st->map_square(sq), lm1.s);
}

inline bool rmap_morphism_ok(const StagePtr& st, const RMapStructure& rm1,
                             const RMapStructure& rm2, const Square& sq) {
  return compose(sq.h, rm1.p) == compose(rm2.p, st->map_square(sq));
}

/// Canonical filler of a square from a structured-left arrow to a
/// structured-right arrow over the same stage.
inline BaseMorphism solve_lifting(const StagePtr& st, const LMapStructure& lm,
                                  const RMapStructure& rm, const Square& sq) {
  if (lm.stage_token != st->token() || rm.stage_token != st->token())
    throw StageMismatch("lifting: structures bound to different stages");
  if (!(sq.src == lm.f) || !(sq.tgt == rm.g))
    throw StageMismatch("lifting: square does not join the given arrows");
  BaseMorphism j = compose(rm.p, compose(st->map_square(sq), lm.s));
  if (!(compose(j, lm.f.mor) == sq.h) || !(compose(rm.g.mor, j) == sq.k))
    throw NotCommuting("lifting: computed filler does not fill the square");
  return j;
}

/// Cofree structure carried by the left part of any arrow.
inline LMapStructure cofree_lmap(const StagePtr& st, const Arrow& f) {
  return {st->token(), st->left_arrow(f), st->comult(f)};
}

/// Free structure carried by the right part (stages with multiplication).
inline RMapStructure free_rmap(const StagePtr& st, const Arrow& f) {
  return {st->token(), st->right_arrow(f), st->mult(f)};
}

// ---------------------------------------------------------------------------
// Problem-indexed filler families and their equivalence with one-step
// algebra structures.

/// A chosen filler for every lifting problem of g against the generators,
/// aligned with the problem order of the one-step construction.
struct Delta {
  Arrow g;
  std::vector<BaseMorphism> fill;
};

/// Do the fillers actually solve their problems?
inline bool delta_valid(const OneStepStage& one, const Delta& d) {
  const KData& kd = one.kdata(d.g);
  if (d.fill.size() != kd.problems.size()) return false;
  for (std::size_t x = 0; x < kd.problems.size(); ++x) {
    const Square& sq = kd.problems[x].square;
    if (!(compose(d.fill[x], sq.src.mor) == sq.h)) return false;
    if (!(compose(d.g.mor, d.fill[x]) == sq.k)) return false;
  }
  return true;
}

inline Delta delta_from_rmap(const OneStepStage& one, const RMapStructure& rm) {
  if (rm.stage_token != one.token())
    throw StageMismatch("delta: structure not bound to this one-step stage");
  const KData& kd = one.kdata(rm.g);
  Delta d{rm.g, {}};
  d.fill.reserve(kd.problems.size());
  for (std::size_t x = 0; x < kd.problems.size(); ++x)
    d.fill.push_back(
        compose(rm.p, compose(kd.po.legs[1], kd.cod_cp.legs[x])));
  return d;
}

inline RMapStructure rmap_from_delta(const OneStepStage& one, const Delta& d) {
  const KData& kd = one.kdata(d.g);
  if (d.fill.size() != kd.problems.size())
    throw IncompleteData("delta: one filler per problem required");
  BaseMorphism p = kd.po.universal(
      {identity(d.g.dom()),
       one.cod_cotuple(kd, d.fill, d.g.dom())});
  return {one.token(), d.g, p};
}

inline Delta delta_from_rmap(const ConvergedStage& conv,
                             const RMapStructure& rm) {
  if (rm.stage_token != conv.token())
    throw StageMismatch("delta: structure not bound to this stage");
  const OneStepStage& one = *conv.sequence()->one_step();
  const KData& kd = one.kdata(rm.g);
  Delta d{rm.g, {}};
  d.fill.reserve(kd.problems.size());
  for (const Problem& pb : kd.problems) {
    const Arrow& gen = pb.square.src;
    BaseMorphism s = compose(conv.chi(gen), one.generator_structure(pb.gen));
    d.fill.push_back(
        compose(rm.p, compose(conv.map_square(pb.square), s)));
  }
  return d;
}

/// Promote a one-step algebra structure to one over the stabilized stage
/// by folding it up through the sequence.
inline RMapStructure promote_rmap(const ConvergedStage& conv,
                                  const RMapStructure& rm) {
  const FreeSequence& seq = *conv.sequence();
  if (rm.stage_token != seq.one_step()->token())
    throw StageMismatch("promote: structure not bound to the one-step stage");
  return {conv.token(), rm.g, fold_algebra(seq, conv.alpha(), rm.g, rm.p)};
}

/// Restrict a stabilized algebra structure to a one-step one.
inline RMapStructure restrict_rmap(const ConvergedStage& conv,
                                   const RMapStructure& rm) {
  if (rm.stage_token != conv.token())
    throw StageMismatch("restrict: structure not bound to this stage");
  return {conv.sequence()->one_step()->token(), rm.g,
          compose(rm.p, conv.chi(rm.g))};
}

inline RMapStructure rmap_from_delta(const ConvergedStage& conv,
                                     const Delta& d) {
  return promote_rmap(conv,
                      rmap_from_delta(*conv.sequence()->one_step(), d));
}

/// Promote a one-step coalgebra structure along the sequence inclusion.
inline LMapStructure promote_lmap(const ConvergedStage& conv,
                                  const LMapStructure& lm) {
  if (lm.stage_token != conv.sequence()->one_step()->token())
    throw StageMismatch("promote: structure not bound to the one-step stage");
  return {conv.token(), lm.f, compose(conv.chi(lm.f), lm.s)};
}

// ---------------------------------------------------------------------------
// Closure operations on structured-left arrows.

namespace detail {
inline void require_lmap_stage(const StagePtr& st, const LMapStructure& lm,
                               const char* op) {
  if (lm.stage_token != st->token())
    throw StageMismatch(std::string(op) +
                        ": structure bound to a different stage");
}
}  // namespace detail

/// Composite structure on g . f from structures on f and g; needs a stage
/// with both comultiplication and multiplication.
inline LMapStructure compose_lmaps(const StagePtr& st, const LMapStructure& lf,
                                   const LMapStructure& lg) {
  detail::require_lmap_stage(st, lf, "compose");
  detail::require_lmap_stage(st, lg, "compose");
  if (!(lg.f.dom() == lf.f.cod()))
    throw NotComposable("compose: structured arrows do not chain");
  Arrow gf(compose(lg.f.mor, lf.f.mor));
  Arrow over(compose(lg.f.mor, st->factor(lf.f).rho));
  Square up(lg.f, over, lf.s, identity(lg.f.cod()));
  Square shift(lf.f, gf, identity(lf.f.dom()), lg.f.mor);
  Square down(over, st->right_arrow(gf), st->map_square(shift),
              identity(gf.cod()));
  BaseMorphism s =
      compose(st->mult(gf),
              compose(st->map_square(down),
                      compose(st->map_square(up), lg.s)));
  return {st->token(), gf, s};
}

inline LMapStructure compose_lmap_chain(const StagePtr& st,
                                        std::vector<LMapStructure> chain) {
  if (chain.empty())
    throw IncompleteData("compose: empty chain");
  LMapStructure acc = std::move(chain.front());
  for (std::size_t i = 1; i < chain.size(); ++i)
    acc = compose_lmaps(st, acc, chain[i]);
  return acc;
}

/// Invertible arrows carry a canonical structure.
inline LMapStructure iso_lmap(const StagePtr& st, const Arrow& f) {
  BaseMorphism inv = inverse_of(f.mor);
  return {st->token(), f, compose(st->factor(f).lambda, inv)};
}

/// Coproduct structure, problem-aligned: blocks in the given order.
inline LMapStructure coproduct_lmaps(const StagePtr& st,
                                     const std::vector<LMapStructure>& parts) {
  if (parts.empty())
    throw IncompleteData("coproduct: empty family");
  std::vector<BaseObject> doms, cods;
  for (const auto& lm : parts) {
    detail::require_lmap_stage(st, lm, "coproduct");
    doms.push_back(lm.f.dom());
    cods.push_back(lm.f.cod());
  }
  ColimitResult dcp = coproduct(doms);
  ColimitResult ccp = coproduct(cods);
  std::vector<BaseMorphism> sum_comps;
  for (std::size_t x = 0; x < parts.size(); ++x)
    sum_comps.push_back(compose(ccp.legs[x], parts[x].f.mor));
  Arrow total(dcp.universal(sum_comps));
  std::vector<BaseMorphism> s_comps;
  for (std::size_t x = 0; x < parts.size(); ++x) {
    Square in(parts[x].f, total, dcp.legs[x], ccp.legs[x]);
    s_comps.push_back(compose(st->map_square(in), parts[x].s));
  }
  return {st->token(), total, ccp.universal(s_comps)};
}

/// Pushed-out structure along an attachment of the domain.
inline LMapStructure pushout_lmap(const StagePtr& st, const LMapStructure& lm,
                                  const BaseMorphism& attach) {
  detail::require_lmap_stage(st, lm, "pushout");
  if (!(attach.dom == lm.f.dom()))
    throw NotComposable("pushout: attachment must start at the domain");
  ColimitResult po = pushout(lm.f.mor, attach);
  Arrow g(po.legs[0]);
  Square in(lm.f, g, attach, po.legs[1]);
  BaseMorphism t = po.universal(
      {st->factor(g).lambda, compose(st->map_square(in), lm.s)});
  return {st->token(), g, t};
}

/// Split-equalizer presentation of an arrow between structured arrows.
/// i embeds f into mid, p retracts; j and k are the contracted pair into
/// far, split by q.
struct SplitEqualizerData {
  LMapStructure mid;
  LMapStructure far;
  Square i, p, j, k, q;
};

/// Structure inherited along a split equalizer of structured arrows.
inline LMapStructure split_equalizer_lmap(const StagePtr& st, const Arrow& f,
                                          const SplitEqualizerData& d) {
  detail::require_lmap_stage(st, d.mid, "split-equalizer");
  detail::require_lmap_stage(st, d.far, "split-equalizer");
  auto same = [](const Square& a, const Square& b) {
    return a.src == b.src && a.tgt == b.tgt && a.h == b.h && a.k == b.k;
  };
  if (!(d.i.src == f) || !(d.i.tgt == d.mid.f) || !(d.p.src == d.mid.f) ||
      !(d.p.tgt == f) || !(d.j.src == d.mid.f) || !(d.j.tgt == d.far.f) ||
      !(d.k.src == d.mid.f) || !(d.k.tgt == d.far.f) ||
      !(d.q.src == d.far.f) || !(d.q.tgt == d.mid.f))
    throw NotContractible("split-equalizer: squares do not join as a fork");
  if (!same(compose_squares(d.p, d.i), identity_square(f)))
    throw NotContractible("split-equalizer: p . i is not the identity");
  if (!same(compose_squares(d.q, d.j), identity_square(d.mid.f)))
    throw NotContractible("split-equalizer: q . j is not the identity");
  if (!same(compose_squares(d.j, d.i), compose_squares(d.k, d.i)))
    throw NotContractible("split-equalizer: the pair does not agree on f");
  if (!same(compose_squares(d.q, d.k), compose_squares(d.i, d.p)))
    throw NotContractible("split-equalizer: q . k != i . p");
  if (!lmap_morphism_ok(st, d.mid, d.far, d.j) ||
      !lmap_morphism_ok(st, d.mid, d.far, d.k))
    throw NotContractible("split-equalizer: pair is not structure-preserving");
  BaseMorphism s =
      compose(st->map_square(d.p), compose(d.mid.s, d.i.k));
  LMapStructure out{st->token(), f, s};
  if (!check_lmap(st, out).all_pass())
    throw InternalCheckFailure("split-equalizer: inherited structure broken");
  return out;
}

/// The canonical split-equalizer presentation induced by a filler r
/// exhibiting f as a retract of its own left part, over the cofree
/// structures.  NotContractible when r is not structure-compatible.
inline LMapStructure retract_lmap(const StagePtr& st, const Arrow& f,
                                  const BaseMorphism& r) {
  const Factorization& fc = st->factor(f);
  if (!(compose(r, f.mor) == fc.lambda) ||
      !(compose(fc.rho, r) == identity(f.cod())))
    throw NotContractible("retract: r does not split the factorization");
  Arrow lf = st->left_arrow(f);
  Arrow llf = st->left_arrow(lf);
  SplitEqualizerData d{
      cofree_lmap(st, f),
      cofree_lmap(st, lf),
      Square(f, lf, identity(f.dom()), r),
      Square(lf, f, identity(f.dom()), fc.rho),
      Square(lf, llf, identity(f.dom()), st->comult(f)),
      Square(lf, llf, identity(f.dom()),
             st->map_square(Square(f, lf, identity(f.dom()), r))),
      Square(llf, lf, identity(f.dom()), st->factor(lf).rho)};
  return split_equalizer_lmap(st, f, d);
}

}  // namespace nwfs
