#pragma once

// Representations over a numbered subbasis and the operations that move names
// between them: the identity realizers between comparable families, point-set
// restriction, and the fuel-bounded membership monitor that makes basic-open
// membership semi-decidable from strong-neighborhood-basis names.

#include <functional>
#include <memory>
#include <optional>

#include "respace/basis.hpp"
#include "respace/kernel.hpp"

namespace respace {

struct RepresentationKind {
  ReprFamily family = ReprFamily::Min;
  // Engaged exactly for the SI family: the relation names are measured against.
  std::optional<StrongInclusion> strong_inclusion;

  static RepresentationKind Min() { return {ReprFamily::Min, std::nullopt}; }
  static RepresentationKind Max() { return {ReprFamily::Max, std::nullopt}; }
  static RepresentationKind SI(StrongInclusion si) {
    return {ReprFamily::SI, std::move(si)};
  }
};

struct Representation {
  RepresentationKind kind;
  NumberedSubbasis subbasis;
};

// Validates the pairing of kind and subbasis. An SI representation needs a
// guarantee that every point has a strong neighborhood basis: either the
// relation is reflexive or the caller certifies the property for this world
// (metric worlds do, via arbitrarily small balls strictly inside any ball).
Representation make_representation(RepresentationKind kind, NumberedSubbasis subbasis,
                                   bool snb_certificate = false);

// A name transformer realized incrementally: emitting output position k reads
// only finitely many input positions.
struct Translator {
  std::function<Name(const Name&)> transform;
};

// The identity-realizer translations between families over one subbasis:
// Max names are SI names after wrapping each code as a singleton induced
// code; SI names over the induced subbasis are Min names there verbatim; Max
// names are Min names verbatim. Other pairs are rejected.
Translator id_translation(const Representation& src, const Representation& dst);

// Restriction of a representation to a subset of the space: same codes, same
// relation, membership conjoined with the subset filter.
Representation restrict_to(const Representation& rep,
                           std::function<Tri(const PointWitness&)> subset_member);

// Semi-decides "the named point lies in the target basic set" by scanning an
// SI name for an entry strongly below the target. Accept is final and sound
// at every fuel; one step is charged per name-cell read and per poll of the
// underlying relation.
class MembershipMonitor {
 public:
  MembershipMonitor(StrongInclusion extended, Nat wrapped_target);

  SemiResult poll(const Name& name, Fuel fuel);
  std::uint64_t last_fuel_used() const { return last_used_; }

 private:
  StrongInclusion extended_;
  Nat wrapped_target_;
  bool accepted_ = false;
  std::uint64_t last_used_ = 0;
};

// Builds the monitor for a target subbasis code over an SI representation.
// Requires the representation's relation to carry a bounded procedure;
// worlds whose relation has none (singleton-style bases with undecidable
// equality) are rejected here.
MembershipMonitor member_monitor(const Representation& rep, const Nat& target_code);

}  // namespace respace
