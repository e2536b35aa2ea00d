#pragma once

// Numbered subbases and strong inclusion relations: the combinatorial layer
// between raw codes and representations. Induced codes name finite
// intersections of subbasic sets through the bit-set coding, and a strong
// inclusion on subbasis codes extends mechanically to induced codes and to
// finite code sequences.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "respace/kernel.hpp"

namespace respace {

// Three-valued verdicts for fuel-bounded point/set questions. Unknown is
// never evidence of anything; procedures may only upgrade it.
enum class Tri { In, Out, Unknown };

enum class PrefixCheck { ConsistentSoFar, Violation, Unknown };

// The three representation families over a numbered subbasis: names listing
// sufficiently many basic sets (Min), all containing codes (Max), or a strong
// neighborhood basis of induced codes (SI).
enum class ReprFamily { Min, Max, SI };

// An abstract point a world can answer membership questions about. The
// payload is either an exact rational or a world-interpreted code (registry
// slot, program index); the label identifies the point in reports.
struct PointWitness {
  std::string label;
  std::variant<mpq_class, Nat> payload;

  bool is_rational() const { return std::holds_alternative<mpq_class>(payload); }
  const mpq_class& rational() const { return std::get<mpq_class>(payload); }
  const Nat& code() const { return std::get<Nat>(payload); }
};

PointWitness rational_point(const mpq_class& q);
PointWitness coded_point(std::string label, Nat code);

// A partial numbering of some carrier. Membership of a code in the domain is
// semi-decidable at best: domain_check may confirm, never refute. Codes never
// accepted at any tested fuel are unresolved, not rejected. domain_oracle is
// an exact test-only hook and may be absent.
struct Numbering {
  std::string id;
  std::function<SemiResult(const Nat&, Fuel)> domain_check;
  std::function<bool(const Nat&)> domain_oracle;
};

// A numbering of subbasic sets together with a fuel-free membership probe.
// member_test answers exactly when the world can and Unknown otherwise.
struct NumberedSubbasis {
  Numbering numbering;
  std::function<Tri(const PointWitness&, const Nat&)> member_test;
};

// A transitive relation on subbasis codes refining set inclusion. holds is
// the exact oracle used by checks; semi is the bounded procedure used by
// realizers and is absent when the relation is not semi-decidable.
struct StrongInclusion {
  bool reflexive = false;
  std::function<bool(const Nat&, const Nat&)> holds;
  std::function<SemiResult(const Nat&, const Nat&, Fuel)> semi;
};

// Code equality as a strong inclusion (the relation under which every point's
// set of all containing codes is a strong neighborhood basis).
StrongInclusion equality_strong_inclusion();

// Δ-code of a finite intersection: the bit-set code of the given subbasis
// codes. Set semantics; the empty set codes the whole space as 0.
Nat induced_code(const std::vector<Nat>& subcodes);

// The subbasis of finite intersections, numbered by Δ-codes over the base.
// Domain: every listed code lies in the base domain. Membership: in every
// listed set (Out of one resolves Out; any Unknown blocks an In verdict).
NumberedSubbasis induced_subbasis(const NumberedSubbasis& base);

// Lifts a strong inclusion to induced codes: n1 below n2 iff every factor of
// n2 is refined by some factor of n1. Transitivity and reflexivity carry
// over; the bounded procedure exists iff the base one does.
StrongInclusion extend_strong_inclusion(const StrongInclusion& si);

// Sequence extension: fine below coarse iff every entry of coarse is refined
// by some entry of fine. Empty coarse holds vacuously; empty fine only
// against empty coarse.
bool seq_strong_included(const StrongInclusion& si, const std::vector<Nat>& fine,
                         const std::vector<Nat>& coarse);

// --- reports -----------------------------------------------------------------

struct ViolationEntry {
  std::string kind;
  Nat a;
  Nat b;
  std::optional<Nat> c;
  std::string point;  // empty when no point is involved
};

struct CheckReport {
  std::vector<ViolationEntry> violations;
  std::uint64_t skipped = 0;  // comparisons unresolved at the given fuel

  bool pass() const { return violations.empty(); }
  // One line per entry: "VIOLATION <kind> a=<n> b=<n> [c=<n>] [point=<id>]".
  std::string to_text() const;
};

struct AxiomSampleOptions {
  std::size_t pairs = 400;
  std::size_t triples = 400;
  std::uint64_t seed = 1;
};

// Samples transitivity, refinement-of-inclusion, and (when flagged)
// reflexivity over the given codes and points using the exact oracles.
CheckReport check_axioms(const StrongInclusion& si, const NumberedSubbasis& sb,
                         const std::vector<Nat>& codes,
                         const std::vector<PointWitness>& points,
                         const AxiomSampleOptions& opts = {});

// Checks a name prefix against a claimed point: every entry must denote a
// basic set containing it. Min/Max prefixes list subbasis codes, SI prefixes
// list induced codes. Violation only on resolved evidence (a code confirmed
// outside the domain by the oracle, or the point confirmed Out); unresolved
// questions at this fuel yield Unknown.
PrefixCheck validate_prefix(ReprFamily family, const NumberedSubbasis& sb,
                            const std::vector<Nat>& prefix, const PointWitness& point,
                            Fuel fuel);

}  // namespace respace
