#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nwfs {

/// Base class for every error the engine raises on purpose.  Anything not
/// derived from Error escaping a public entry point is a bug.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two morphisms (or an object and a morphism) live over different backends.
struct BackendMismatch : Error {
  explicit BackendMismatch(const std::string& what) : Error(what) {}
};

// compose(g, f) with cod f != dom g.
struct NotComposable : Error {
  explicit NotComposable(const std::string& what) : Error(what) {}
};

// Parallel pair expected (shared dom and cod), e.g. for a coequalizer.
struct NotParallel : Error {
  explicit NotParallel(const std::string& what) : Error(what) {}
};

// An enumeration would exceed the configured cap; carries the size that
// tripped the check (saturated at 2^64-1 when it overflows).
struct CapExceeded : Error {
  std::uint64_t cardinality;
  CapExceeded(const std::string& what, std::uint64_t card)
      : Error(what + " (cardinality " + std::to_string(card) + ")"),
        cardinality(card) {}
};

// Square constructor: the two composites around the square differ.
struct NotCommuting : Error {
  explicit NotCommuting(const std::string& what) : Error(what) {}
};

// A stage was asked for structure it does not carry.
struct MissingComult : Error {
  explicit MissingComult(const std::string& what) : Error(what) {}
};
struct MissingMult : Error {
  explicit MissingMult(const std::string& what) : Error(what) {}
};

// The free sequence did not stabilize within the stage bound.
struct NotConverged : Error {
  explicit NotConverged(const std::string& what) : Error(what) {}
};

// Algebraic structures bound to different stages were mixed.
struct StageMismatch : Error {
  explicit StageMismatch(const std::string& what) : Error(what) {}
};

// identity_lmap on a non-invertible arrow.
struct NotIso : Error {
  explicit NotIso(const std::string& what) : Error(what) {}
};

// Contractible-pair input violating one of its identities; the message
// names the first identity that failed.
struct NotContractible : Error {
  explicit NotContractible(const std::string& what) : Error(what) {}
};

// A structure file or argument set missing a required component.
struct IncompleteData : Error {
  explicit IncompleteData(const std::string& what) : Error(what) {}
};

// Truncated oracle asked to produce an element beyond its truncation bound.
struct TruncationExceeded : Error {
  explicit TruncationExceeded(const std::string& what) : Error(what) {}
};

// Malformed JSON input.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Raised when a law the construction guarantees fails on concrete data;
/// always indicates an implementation bug, never bad user input.
struct InternalCheckFailure : std::logic_error {
  explicit InternalCheckFailure(const std::string& what)
      : std::logic_error("internal check failed: " + what) {}
};

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

}  // namespace nwfs
