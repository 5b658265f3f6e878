#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nwfs/colimit.hpp"
#include "nwfs/stage.hpp"

namespace nwfs {

/// Everything the one-step construction computes at one target arrow g:
/// the problem set, the two coproducts over it, the summed generator arrow
/// with its evaluation square into g, and the gluing pushout.
struct KData {
  std::vector<Problem> problems;
  ColimitResult dom_cp;  // coproduct over generator domains (legs empty when no problems)
  ColimitResult cod_cp;  // coproduct over generator codomains
  Arrow k_arrow;         // the summed generator
  Square phi;            // evaluation k_arrow -> g
  ColimitResult po;      // pushout; legs[0]: dom g -> E, legs[1]: cod_cp apex -> E
  std::unordered_map<std::string, std::size_t> index;  // (gen, square) -> problem slot
};

/// The one-step factorization generated by a set of arrows: glue one cell
/// onto the domain-side object for every lifting problem, via the pushout
/// of the summed generator along the summed problem tops.  Carries a
/// comultiplication but no multiplication.
class OneStepStage : public Stage {
 public:
  OneStepStage(GeneratingSet gens, std::uint64_t cap = kDefaultCap)
      : gens_(std::move(gens)), cap_(cap),
        genset_key_(to_json(gens_).dump()) {}

  std::string token() const override { return "onestep:" + genset_key_; }
  bool has_comult() const override { return true; }

  const GeneratingSet& generators() const { return gens_; }
  std::uint64_t cap() const { return cap_; }
  const std::string& genset_key() const { return genset_key_; }

  static std::string problem_key(std::size_t gen, const Square& sq) {
    return std::to_string(gen) + "|" + square_key(sq);
  }

  const KData& kdata(const Arrow& g) const {
    const std::string key = arrow_key(g);
    {
      std::lock_guard<std::mutex> lock(kmu_);
      auto it = kcache_.find(key);
      if (it != kcache_.end()) return it->second;
    }
    KData kd = build_kdata(g);
    std::lock_guard<std::mutex> lock(kmu_);
    return kcache_.emplace(key, std::move(kd)).first->second;
  }

  /// Cotuple over the problem-domain coproduct (components per problem).
  BaseMorphism dom_cotuple(const KData& kd,
                           const std::vector<BaseMorphism>& comps,
                           const BaseObject& target) const {
    if (kd.problems.empty()) return from_initial(kd.dom_cp.apex, target);
    return kd.dom_cp.universal(comps);
  }
  BaseMorphism cod_cotuple(const KData& kd,
                           const std::vector<BaseMorphism>& comps,
                           const BaseObject& target) const {
    if (kd.problems.empty()) return from_initial(kd.cod_cp.apex, target);
    return kd.cod_cp.universal(comps);
  }

  /// The square k_arrow(g) -> left_arrow(g) whose top is the summed problem
  /// tops and whose bottom is the pushout leg gluing the cells in.
  Square counit(const Arrow& g) const {
    const KData& kd = kdata(g);
    return Square(kd.k_arrow, left_arrow(g), kd.phi.h, kd.po.legs[1]);
  }

  /// Where a problem of g lands among the problems of left_arrow(g): the
  /// composite of its coproduct injection with the counit square.
  std::size_t problem_into_left(const Arrow& g, std::size_t x) const {
    const KData& kd = kdata(g);
    Arrow lg = left_arrow(g);
    const KData& kl = kdata(lg);
    const Problem& pb = kd.problems[x];
    Square shifted(pb.square.src, lg, pb.square.h,
                   compose(kd.po.legs[1], kd.cod_cp.legs[x]));
    auto it = kl.index.find(problem_key(pb.gen, shifted));
    if (it == kl.index.end())
      throw InternalCheckFailure("one-step: shifted problem not found");
    return it->second;
  }

  /// The coalgebra-structure map of generator j over this stage: the cell
  /// glued in for the identity problem of the generator.  The three
  /// coalgebra identities are verified eagerly; a violation is a bug.
  BaseMorphism generator_structure(std::size_t j) const {
    if (j >= gens_.entries.size())
      throw IncompleteData("generator index out of range");
    const Arrow& f = gens_.entries[j].arrow;
    const KData& kd = kdata(f);
    auto it = kd.index.find(problem_key(j, identity_square(f)));
    if (it == kd.index.end())
      throw InternalCheckFailure("one-step: identity problem missing");
    BaseMorphism alpha =
        compose(kd.po.legs[1], kd.cod_cp.legs[it->second]);
    const Factorization& ff = factor(f);
    if (!(compose(alpha, f.mor) == ff.lambda))
      throw InternalCheckFailure("generator structure: section law fails");
    if (!(compose(ff.rho, alpha) == identity(f.cod())))
      throw InternalCheckFailure("generator structure: retraction law fails");
    Square expand(f, left_arrow(f), identity(f.dom()), alpha);
    if (!(compose(comult(f), alpha) ==
          compose(map_square(expand), alpha)))
      throw InternalCheckFailure("generator structure: coaction law fails");
    return alpha;
  }

 protected:
  Factorization compute_factor(const Arrow& g) const override {
    const KData& kd = kdata(g);
    std::vector<BaseMorphism> ks;
    for (const auto& p : kd.problems) ks.push_back(p.square.k);
    BaseMorphism rho = kd.po.universal(
        {g.mor, cod_cotuple(kd, ks, g.cod())});
    return {kd.po.legs[0], kd.po.apex, rho};
  }

  BaseMorphism compute_square(const Square& sq) const override {
    const KData& kd = kdata(sq.src);
    const KData& kd2 = kdata(sq.tgt);
    // cells follow their problems: x goes to the slot of sq . x
    std::vector<BaseMorphism> comps;
    comps.reserve(kd.problems.size());
    for (const auto& p : kd.problems) {
      Square moved(p.square.src, sq.tgt, compose(sq.h, p.square.h),
                   compose(sq.k, p.square.k));
      auto it = kd2.index.find(problem_key(p.gen, moved));
      if (it == kd2.index.end())
        throw InternalCheckFailure("one-step: moved problem not found");
      comps.push_back(compose(kd2.po.legs[1], kd2.cod_cp.legs[it->second]));
    }
    const Factorization& f2 = factor(sq.tgt);
    return kd.po.universal(
        {compose(f2.lambda, sq.h),
         cod_cotuple(kd, comps, f2.mid)});
  }

  BaseMorphism compute_comult(const Arrow& g) const override {
    const KData& kd = kdata(g);
    Arrow lg = left_arrow(g);
    const KData& kl = kdata(lg);
    std::vector<BaseMorphism> comps;
    comps.reserve(kd.problems.size());
    for (std::size_t x = 0; x < kd.problems.size(); ++x) {
      std::size_t y = problem_into_left(g, x);
      comps.push_back(compose(kl.po.legs[1], kl.cod_cp.legs[y]));
    }
    const Factorization& fl = factor(lg);
    return kd.po.universal(
        {fl.lambda, cod_cotuple(kd, comps, fl.mid)});
  }

 private:
  KData build_kdata(const Arrow& g) const {
    KData kd;
    kd.problems = full_problem_set(gens_, g, cap_);
    const Backend bk = g.dom().backend;
    const int q = bk == Backend::finmod ? g.dom().q : 2;
    if (kd.problems.empty()) {
      BaseObject init = initial_object(bk, q);
      kd.dom_cp.apex = init;
      kd.cod_cp.apex = init;
      kd.k_arrow = Arrow(identity(init));
      kd.phi = Square(kd.k_arrow, g, from_initial(init, g.dom()),
                      from_initial(init, g.cod()));
      kd.po = pushout(kd.k_arrow.mor, from_initial(init, g.dom()));
      return kd;
    }
    std::vector<BaseObject> doms, cods;
    for (const auto& p : kd.problems) {
      doms.push_back(p.square.src.dom());
      cods.push_back(p.square.src.cod());
      kd.index.emplace(problem_key(p.gen, p.square), kd.index.size());
    }
    kd.dom_cp = coproduct(doms);
    kd.cod_cp = coproduct(cods);
    std::vector<BaseMorphism> fs, hs, ks;
    for (std::size_t x = 0; x < kd.problems.size(); ++x) {
      fs.push_back(
          compose(kd.cod_cp.legs[x], kd.problems[x].square.src.mor));
      hs.push_back(kd.problems[x].square.h);
      ks.push_back(kd.problems[x].square.k);
    }
    kd.k_arrow = Arrow(kd.dom_cp.universal(fs));
    kd.phi = Square(kd.k_arrow, g, kd.dom_cp.universal(hs),
                    kd.cod_cp.universal(ks));
    kd.po = pushout(kd.k_arrow.mor, kd.phi.h);
    return kd;
  }

  GeneratingSet gens_;
  std::uint64_t cap_;
  std::string genset_key_;
  mutable std::mutex kmu_;
  mutable std::unordered_map<std::string, KData> kcache_;
};

using OneStepPtr = std::shared_ptr<OneStepStage>;

}  // namespace nwfs
