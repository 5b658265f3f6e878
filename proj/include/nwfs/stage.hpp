#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "nwfs/arrows.hpp"
#include "nwfs/json_io.hpp"

namespace nwfs {

/// The data a stage assigns to one arrow f : X -> Y: a factorization
/// X --lambda--> mid --rho--> f's codomain with rho . lambda == f.
struct Factorization {
  BaseMorphism lambda;
  BaseObject mid;
  BaseMorphism rho;
};

/// A functorial factorization stage.  Computes, per arrow, the (lambda, E,
/// rho) triple; per square, the induced map between the middle objects; and
/// optionally a comultiplication (into the middle object of the left part)
/// and a multiplication (out of the middle object of the right part).
///
/// All results are memoized under the canonical arrow/square encoding; the
/// caches tolerate concurrent readers.
class Stage : public std::enable_shared_from_this<Stage> {
 public:
  virtual ~Stage() = default;

  /// A token identifying the stage for structure binding: two structures
  /// may interact only when their stages carry equal tokens.
  virtual std::string token() const = 0;

  virtual bool has_comult() const { return false; }
  virtual bool has_mult() const { return false; }

  const Factorization& factor(const Arrow& f) const {
    const std::string key = arrow_key(f);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = fact_.find(key);
      if (it != fact_.end()) return it->second;
    }
    Factorization v = compute_factor(f);
    if (!(compose(v.rho, v.lambda) == f.mor))
      throw InternalCheckFailure("stage factorization does not compose to f");
    std::lock_guard<std::mutex> lock(mu_);
    return fact_.emplace(key, std::move(v)).first->second;
  }

  /// The middle-object map E(h,k) induced by a square f -> g.
  BaseMorphism map_square(const Square& sq) const {
    return cached(sq_, square_key(sq), [&] {
      BaseMorphism m = compute_square(sq);
      // naturality of lambda and rho in the square
      const auto& ff = factor(sq.src);
      const auto& fg = factor(sq.tgt);
      if (!(compose(m, ff.lambda) == compose(fg.lambda, sq.h)) ||
          !(compose(fg.rho, m) == compose(sq.k, ff.rho)))
        throw InternalCheckFailure("stage square action breaks naturality");
      return m;
    });
  }

  /// Comultiplication at f: mid(f) -> mid(left_arrow(f)).
  BaseMorphism comult(const Arrow& f) const {
    if (!has_comult())
      throw MissingComult("stage '" + token() + "' has no comultiplication");
    return cached(sig_, arrow_key(f), [&] { return compute_comult(f); });
  }

  /// Multiplication at f: mid(right_arrow(f)) -> mid(f).
  BaseMorphism mult(const Arrow& f) const {
    if (!has_mult())
      throw MissingMult("stage '" + token() + "' has no multiplication");
    return cached(pi_, arrow_key(f), [&] { return compute_mult(f); });
  }

  /// The left part of f as an arrow (X -> mid f).
  Arrow left_arrow(const Arrow& f) const { return Arrow(factor(f).lambda); }
  /// The right part of f as an arrow (mid f -> Y).
  Arrow right_arrow(const Arrow& f) const { return Arrow(factor(f).rho); }

  /// The square left_arrow(f) -> left_arrow(g) induced by (h, k), i.e. the
  /// left functor's action (h, E(h,k)).
  Square left_square(const Square& sq) const {
    return Square(left_arrow(sq.src), left_arrow(sq.tgt), sq.h,
                  map_square(sq));
  }
  /// The square right_arrow(f) -> right_arrow(g): (E(h,k), k).
  Square right_square(const Square& sq) const {
    return Square(right_arrow(sq.src), right_arrow(sq.tgt), map_square(sq),
                  sq.k);
  }

 protected:
  virtual Factorization compute_factor(const Arrow& f) const = 0;
  virtual BaseMorphism compute_square(const Square& sq) const = 0;
  virtual BaseMorphism compute_comult(const Arrow&) const {
    throw MissingComult("stage '" + token() + "' has no comultiplication");
  }
  virtual BaseMorphism compute_mult(const Arrow&) const {
    throw MissingMult("stage '" + token() + "' has no multiplication");
  }

 private:
  template <typename F>
  BaseMorphism cached(std::unordered_map<std::string, BaseMorphism>& cache,
                      const std::string& key, F&& make) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
    }
    BaseMorphism v = make();
    std::lock_guard<std::mutex> lock(mu_);
    return cache.emplace(key, std::move(v)).first->second;
  }

  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, Factorization> fact_;
  mutable std::unordered_map<std::string, BaseMorphism> sq_, sig_, pi_;
};

using StagePtr = std::shared_ptr<const Stage>;

/// Unit for the sequential-composition product: f factors as id . f, the
/// middle object is the domain.  Carries trivial comultiplication and
/// multiplication.
class IdentityStage : public Stage {
 public:
  std::string token() const override { return "identity"; }
  bool has_comult() const override { return true; }
  bool has_mult() const override { return true; }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    return {identity(f.dom()), f.dom(), f.mor};
  }
  BaseMorphism compute_square(const Square& sq) const override {
    return sq.h;
  }
  BaseMorphism compute_comult(const Arrow& f) const override {
    return identity(f.dom());
  }
  BaseMorphism compute_mult(const Arrow& f) const override {
    return identity(f.dom());
  }
};

/// Dual unit: f factors as f . id, the middle object is the codomain.
class TerminalStage : public Stage {
 public:
  std::string token() const override { return "terminal"; }
  bool has_comult() const override { return true; }
  bool has_mult() const override { return true; }

 protected:
  Factorization compute_factor(const Arrow& f) const override {
    return {f.mor, f.cod(), identity(f.cod())};
  }
  BaseMorphism compute_square(const Square& sq) const override {
    return sq.k;
  }
  BaseMorphism compute_comult(const Arrow& f) const override {
    return identity(f.cod());
  }
  BaseMorphism compute_mult(const Arrow& f) const override {
    return identity(f.cod());
  }
};

}  // namespace nwfs
