#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nwfs/onestep.hpp"

namespace nwfs {

/// Composite factorization: factor with `inner` first, then let `outer`
/// factor the right part.  The middle object is outer's middle object of
/// inner's right part.  Comultiplication exists when both factors have one.
class TensorStage : public Stage {
 public:
  TensorStage(StagePtr outer, StagePtr inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}

  std::string token() const override {
    return "tensor(" + outer_->token() + "," + inner_->token() + ")";
  }
  bool has_comult() const override {
    return outer_->has_comult() && inner_->has_comult();
  }

  const StagePtr& outer() const { return outer_; }
  const StagePtr& inner() const { return inner_; }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    const Factorization& fi = inner_->factor(f);
    const Factorization& fo = outer_->factor(Arrow(fi.rho));
    return {compose(fo.lambda, fi.lambda), fo.mid, fo.rho};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    return outer_->map_square(inner_->right_square(sq));
  }

  BaseMorphism compute_comult(const Arrow& f) const override {
    if (!has_comult())
      throw MissingComult("tensor: a factor lacks comultiplication");
    const Factorization& fi = inner_->factor(f);
    Arrow rif(fi.rho);
    BaseMorphism sigma2 = outer_->comult(rif);
    Arrow l2 = outer_->left_arrow(rif);       // mid1 -> mid of composite
    Arrow l1 = inner_->left_arrow(f);
    const Factorization& fl1 = inner_->factor(l1);
    // both squares below collapse onto the composite middle object
    Arrow m(compose(l2.mor, fl1.rho));
    Square sq1(l2, m, inner_->comult(f), identity(m.cod()));
    Arrow tleft(compose(l2.mor, fi.lambda));  // left part of the composite
    Square lift(l1, tleft, identity(f.dom()), l2.mor);
    Arrow rt = inner_->right_arrow(tleft);
    Square sq2(m, rt, inner_->map_square(lift), identity(m.cod()));
    return compose(outer_->map_square(sq2),
                   compose(outer_->map_square(sq1), sigma2));
  }

 private:
  StagePtr outer_;
  StagePtr inner_;
};

inline StagePtr tensor_stage(StagePtr outer, StagePtr inner) {
  return std::make_shared<TensorStage>(std::move(outer), std::move(inner));
}

class SuccessorStage;

/// Lazily built tower of factorization stages over one generating set:
/// stage 0 leaves arrows alone, stage 1 is the one-step gluing, and each
/// later stage coequalizes the two ways the previous step re-enters itself.
/// Stage objects hold pointers back into the sequence; keep it alive while
/// any of them are in use.
class FreeSequence {
 public:
  FreeSequence(GeneratingSet gens, std::size_t max_stage,
               std::uint64_t cap = kDefaultCap)
      : max_stage_(max_stage),
        one_(std::make_shared<OneStepStage>(std::move(gens), cap)),
        zero_(std::make_shared<IdentityStage>()) {}

  FreeSequence(const FreeSequence&) = delete;
  FreeSequence& operator=(const FreeSequence&) = delete;

  const std::shared_ptr<OneStepStage>& one_step() const { return one_; }
  const GeneratingSet& generators() const { return one_->generators(); }
  std::uint64_t cap() const { return one_->cap(); }
  std::size_t max_stage() const { return max_stage_; }

  StagePtr stage(std::size_t n) const;
  std::shared_ptr<const SuccessorStage> succ(std::size_t m) const;

  /// The one-step construction applied after stage n.
  StagePtr tensor(std::size_t n) const;

  /// Comparison map from tensor(n) onto stage n+1 at f.
  BaseMorphism theta(std::size_t n, const Arrow& f) const;

  /// Middle-object map of the inclusion of stage a into stage a+1 at f.
  BaseMorphism step_connector(std::size_t a, const Arrow& f) const {
    Arrow ra = stage(a)->right_arrow(f);
    return compose(theta(a, f), one_->factor(ra).lambda);
  }

  /// Composite connector from stage a to stage b at f (a <= b).
  BaseMorphism conn(std::size_t a, std::size_t b, const Arrow& f) const {
    if (a > b) throw StageMismatch("connector runs backwards");
    BaseMorphism m = identity(stage(a)->factor(f).mid);
    for (std::size_t g = a; g < b; ++g) m = compose(step_connector(g, f), m);
    return m;
  }

 private:
  std::size_t max_stage_;
  std::shared_ptr<OneStepStage> one_;
  std::shared_ptr<IdentityStage> zero_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::size_t, std::shared_ptr<const SuccessorStage>>
      succs_;
  mutable std::unordered_map<std::size_t, StagePtr> tensors_;
};

/// Stage m >= 2 of a free sequence.  Its middle object is the coequalizer
/// of the two maps from one step after stage m-2 into one step after stage
/// m-1: re-entering via the comparison map versus via the stage connector.
class SuccessorStage : public Stage {
 public:
  SuccessorStage(const FreeSequence* seq, std::size_t m)
      : seq_(seq), m_(m),
        token_("stage:" + std::to_string(m) + ":" +
               seq->one_step()->genset_key()) {}

  std::string token() const override { return token_; }
  bool has_comult() const override { return true; }
  std::size_t index() const { return m_; }

  const ColimitResult& cell(const Arrow& f) const {
    const std::string key = arrow_key(f);
    {
      std::lock_guard<std::mutex> lock(cmu_);
      auto it = cells_.find(key);
      if (it != cells_.end()) return it->second;
    }
    ColimitResult c = build_cell(f);
    std::lock_guard<std::mutex> lock(cmu_);
    return cells_.emplace(key, std::move(c)).first->second;
  }

  BaseMorphism projection(const Arrow& f) const { return cell(f).legs[0]; }

  /// Induce a map off the quotient middle object from one off the tensor
  /// middle object; rejects maps that do not respect the identifications.
  BaseMorphism induce(const Arrow& f, const BaseMorphism& r) const {
    return cell(f).universal({r});
  }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    const ColimitResult& c = cell(f);
    const Factorization& fp = seq_->tensor(m_ - 1)->factor(f);
    return {compose(c.legs[0], fp.lambda), c.apex, c.universal({fp.rho})};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    BaseMorphism mp = seq_->tensor(m_ - 1)->map_square(sq);
    return cell(sq.src).universal({compose(projection(sq.tgt), mp)});
  }

  BaseMorphism compute_comult(const Arrow& f) const override {
    StagePtr p = seq_->tensor(m_ - 1);
    Arrow lq = left_arrow(f);
    Square drop(p->left_arrow(f), lq, identity(f.dom()), projection(f));
    BaseMorphism r = compose(projection(lq),
                             compose(p->map_square(drop), p->comult(f)));
    return cell(f).universal({r});
  }

 private:
  ColimitResult build_cell(const Arrow& f) const {
    Arrow rp = seq_->stage(m_ - 1)->right_arrow(f);
    BaseMorphism u =
        compose(seq_->one_step()->factor(rp).lambda, seq_->theta(m_ - 2, f));
    Arrow rpp = seq_->stage(m_ - 2)->right_arrow(f);
    Square step(rpp, rp, seq_->conn(m_ - 2, m_ - 1, f), identity(f.cod()));
    return coequalizer(u, seq_->one_step()->map_square(step));
  }

  const FreeSequence* seq_;
  std::size_t m_;
  std::string token_;
  mutable std::mutex cmu_;
  mutable std::unordered_map<std::string, ColimitResult> cells_;
};

inline StagePtr FreeSequence::stage(std::size_t n) const {
  if (n == 0) return zero_;
  if (n == 1) return one_;
  return succ(n);
}

inline std::shared_ptr<const SuccessorStage> FreeSequence::succ(
    std::size_t m) const {
  if (m < 2) throw StageMismatch("successor stages start at 2");
  if (m > max_stage_)
    throw StageMismatch("stage " + std::to_string(m) +
                        " beyond cap " + std::to_string(max_stage_));
  std::lock_guard<std::mutex> lock(mu_);
  auto it = succs_.find(m);
  if (it == succs_.end())
    it = succs_.emplace(m, std::make_shared<SuccessorStage>(this, m)).first;
  return it->second;
}

inline StagePtr FreeSequence::tensor(std::size_t n) const {
  StagePtr base = stage(n);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = tensors_.find(n);
  if (it == tensors_.end())
    it = tensors_.emplace(n, tensor_stage(one_, std::move(base))).first;
  return it->second;
}

inline BaseMorphism FreeSequence::theta(std::size_t n, const Arrow& f) const {
  if (n == 0) return identity(one_->factor(f).mid);
  return succ(n + 1)->projection(f);
}

/// Fold a one-step action act: mid1(g) -> dom g up the sequence: the
/// unique stagewise extension along the comparison maps, landing at
/// stage alpha.  Used both for the stabilized multiplication and for
/// promoting one-step algebra structures.
inline BaseMorphism fold_algebra(const FreeSequence& seq, std::size_t alpha,
                                 const Arrow& g, const BaseMorphism& act) {
  BaseMorphism e = identity(g.dom());
  for (std::size_t b = 0; b < alpha; ++b) {
    Arrow rb = seq.stage(b)->right_arrow(g);
    Square fold(rb, g, e, identity(g.cod()));
    BaseMorphism rhs = compose(act, seq.one_step()->map_square(fold));
    e = (b == 0) ? rhs : seq.succ(b + 1)->induce(g, rhs);
  }
  return e;
}

/// Smallest stage a (up to the sequence cap) whose connector into stage
/// a+1 is invertible on every corpus arrow; empty when none qualifies.
inline std::optional<std::size_t> converged_at(
    const FreeSequence& seq, const std::vector<Arrow>& corpus) {
  for (std::size_t a = 0; a + 1 <= seq.max_stage(); ++a) {
    bool ok = true;
    for (const Arrow& f : corpus)
      if (!is_iso(seq.step_connector(a, f))) { ok = false; break; }
    if (ok) return a;
  }
  return std::nullopt;
}

/// A stage of a stabilized sequence.  Reuses the stage-alpha factorization
/// and comultiplication and adds the multiplication, folded up stage by
/// stage through the inverted connector.
class ConvergedStage : public Stage {
 public:
  ConvergedStage(std::shared_ptr<const FreeSequence> seq, std::size_t alpha)
      : seq_(std::move(seq)), alpha_(alpha),
        token_("converged:" + std::to_string(alpha) + ":" +
               seq_->one_step()->genset_key()) {}

  std::string token() const override { return token_; }
  bool has_comult() const override { return true; }
  bool has_mult() const override { return true; }

  std::size_t alpha() const { return alpha_; }
  const std::shared_ptr<const FreeSequence>& sequence() const { return seq_; }

  /// Retraction of the one-step middle object onto the stabilized one.
  BaseMorphism action(const Arrow& f) const {
    BaseMorphism step = seq_->step_connector(alpha_, f);
    BaseMorphism inv;
    if (!is_iso(step, &inv))
      throw NotConverged("connector not invertible at " + arrow_key(f));
    return compose(inv, seq_->theta(alpha_, f));
  }

  /// Map from the one-step middle object to this stage's middle object.
  BaseMorphism chi(const Arrow& f) const {
    if (alpha_ >= 1) return seq_->conn(1, alpha_, f);
    BaseMorphism inv;
    if (!is_iso(seq_->step_connector(0, f), &inv))
      throw NotConverged("connector not invertible at " + arrow_key(f));
    return inv;
  }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    return seq_->stage(alpha_)->factor(f);
  }
  BaseMorphism compute_square(const Square& sq) const override {
    return seq_->stage(alpha_)->map_square(sq);
  }
  BaseMorphism compute_comult(const Arrow& f) const override {
    return seq_->stage(alpha_)->comult(f);
  }

  BaseMorphism compute_mult(const Arrow& f) const override {
    Arrow g = right_arrow(f);
    return fold_algebra(*seq_, alpha_, g, action(f));
  }

 private:
  std::shared_ptr<const FreeSequence> seq_;
  std::size_t alpha_;
  std::string token_;
};

struct ConvergedResult {
  std::shared_ptr<const FreeSequence> seq;
  std::size_t alpha = 0;
  std::shared_ptr<const ConvergedStage> stage;
};

/// Build the free sequence on `gens`, find where it stabilizes over
/// `corpus`, and wrap that stage; NotConverged when the cap is hit first.
inline ConvergedResult make_converged(GeneratingSet gens,
                                      const std::vector<Arrow>& corpus,
                                      std::size_t max_stage,
                                      std::uint64_t cap = kDefaultCap) {
  auto seq = std::make_shared<const FreeSequence>(std::move(gens), max_stage,
                                                  cap);
  std::optional<std::size_t> a = converged_at(*seq, corpus);
  if (!a)
    throw NotConverged("no stabilization up to stage " +
                       std::to_string(max_stage));
  return {seq, *a, std::make_shared<const ConvergedStage>(seq, *a)};
}

/// Middle-object sizes of naive re-application of the one-step
/// construction (never coequalizing), for stages 1..upto.
inline std::vector<std::uint64_t> naive_stage_sizes(const OneStepStage& one,
                                                    const Arrow& f,
                                                    std::size_t upto) {
  std::vector<std::uint64_t> out;
  Arrow cur = f;
  for (std::size_t n = 1; n <= upto; ++n) {
    const Factorization& fc = one.factor(cur);
    out.push_back(object_size(fc.mid));
    cur = Arrow(fc.rho);
  }
  return out;
}

}  // namespace nwfs
