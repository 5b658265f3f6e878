#pragma once

#include <memory>
#include <string>
#include <utility>

#include "nwfs/stage.hpp"

namespace nwfs {

/// Composite factorization dual to the tensor one: let `outer` factor the
/// left part produced by `inner`.  The right parts compose.  Carries a
/// multiplication when both factors have one.
class OdotStage : public Stage {
 public:
  OdotStage(StagePtr outer, StagePtr inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}

  std::string token() const override {
    return "odot(" + outer_->token() + "," + inner_->token() + ")";
  }
  bool has_mult() const override {
    return outer_->has_mult() && inner_->has_mult();
  }

  const StagePtr& outer() const { return outer_; }
  const StagePtr& inner() const { return inner_; }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    const Factorization& fi = inner_->factor(f);
    const Factorization& fo = outer_->factor(Arrow(fi.lambda));
    return {fo.lambda, fo.mid, compose(fi.rho, fo.rho)};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    return outer_->map_square(inner_->left_square(sq));
  }

  BaseMorphism compute_mult(const Arrow& f) const override {
    if (!has_mult())
      throw MissingMult("odot: a factor lacks multiplication");
    const Factorization& fi = inner_->factor(f);
    Arrow li(fi.lambda);
    const Factorization& fo = outer_->factor(li);
    Arrow r2(fo.rho);                          // outer right part of li
    Arrow rself = right_arrow(f);              // composite right part
    // inner's action on the square (outer right part, 1) : rself -> R1 f
    Arrow r1 = inner_->right_arrow(f);
    Square drop(rself, r1, fo.rho, identity(f.cod()));
    BaseMorphism e1 = inner_->map_square(drop);
    Arrow lr = inner_->left_arrow(rself);
    Arrow m(compose(e1, lr.mor));
    Square sq1(lr, m, identity(m.dom()), e1);
    Square sq2(m, r2, identity(m.dom()), inner_->mult(f));
    return compose(outer_->mult(li),
                   compose(outer_->map_square(sq2),
                           outer_->map_square(sq1)));
  }

 private:
  StagePtr outer_;
  StagePtr inner_;
};

inline StagePtr odot_stage(StagePtr outer, StagePtr inner) {
  return std::make_shared<OdotStage>(std::move(outer), std::move(inner));
}

/// The distributivity component at f between the two four-fold composites
/// (s2 after s4 on the right, s3 before s4 on the left), as a map carried
/// by s1.  Throws NotCommuting when the underlying square does not
/// commute, which is the precondition for the component to exist.
inline BaseMorphism z_component(const StagePtr& s1, const StagePtr& s2,
                                const StagePtr& s3, const StagePtr& s4,
                                const Arrow& f) {
  Arrow l4 = s4->left_arrow(f);
  Arrow r4 = s4->right_arrow(f);
  const Factorization& f3 = s3->factor(l4);
  Arrow rodot(compose(r4.mor, f3.rho));       // right part of the odot pair
  Arrow l2r4 = s2->left_arrow(r4);
  Arrow ltens(compose(l2r4.mor, l4.mor));     // left part of the tensor pair
  BaseMorphism top =
      s3->map_square(Square(l4, ltens, identity(f.dom()), l2r4.mor));
  BaseMorphism bot =
      s2->map_square(Square(rodot, r4, f3.rho, identity(f.cod())));
  Arrow src = s2->left_arrow(rodot);
  Arrow tgt = s3->right_arrow(ltens);
  BaseMorphism mixed = compose(l2r4.mor, f3.rho);
  if (!(compose(tgt.mor, top) == mixed) || !(compose(bot, src.mor) == mixed))
    throw NotCommuting("z: routes disagree with the mixed composite");
  return s1->map_square(Square(src, tgt, top, bot));
}

struct BialgebraReport {
  bool interchange = false;   // comult . mult equals the three-step route
  bool pentagon = false;      // comult . mult equals the z-factored route
  bool routes_agree = false;  // the two right-hand routes coincide
  bool all() const { return interchange && pentagon && routes_agree; }
};

/// Compares comult(f) . mult(f) against the interchange route and against
/// its factorization through the distributivity component.
inline BialgebraReport bialgebra_check(const StagePtr& st, const Arrow& f) {
  Arrow lf = st->left_arrow(f);
  Arrow rf = st->right_arrow(f);
  BaseMorphism lhs = compose(st->comult(f), st->mult(f));

  Square inter(st->left_arrow(rf), st->right_arrow(lf), st->comult(f),
               st->mult(f));
  BaseMorphism rhs1 = compose(
      st->mult(lf), compose(st->map_square(inter), st->comult(rf)));

  const Factorization& ff = st->factor(f);
  const Factorization& fl = st->factor(lf);
  Arrow rodot(compose(ff.rho, fl.rho));
  Square squeeze(rf, rodot, st->comult(f), identity(f.cod()));
  Square step2(st->left_arrow(rf), st->left_arrow(rodot), st->comult(f),
               st->map_square(squeeze));
  BaseMorphism z = z_component(st, st, st, st, f);
  Arrow ltens(compose(st->factor(rf).lambda, ff.lambda));
  Square widen(ltens, lf, identity(f.dom()), st->mult(f));
  Square step4(st->right_arrow(ltens), st->right_arrow(lf),
               st->map_square(widen), st->mult(f));
  BaseMorphism rhs2 = compose(
      st->mult(lf),
      compose(st->map_square(step4),
              compose(z, compose(st->map_square(step2), st->comult(rf)))));

  BialgebraReport rep;
  rep.interchange = lhs == rhs1;
  rep.pentagon = lhs == rhs2;
  rep.routes_agree = rhs1 == rhs2;
  return rep;
}

}  // namespace nwfs
