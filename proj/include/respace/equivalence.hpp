#pragma once

// Equivalences between numbered bases: totalization of a partial numbering,
// sequence adapters with the translation they induce on strong-basis names,
// and sampled checks for the adapter conditions and the classic cover
// (Lacombe) and pointed-refinement (Nogina) presentations.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <tuple>
#include <utility>
#include <vector>

#include "respace/basis.hpp"
#include "respace/kernel.hpp"
#include "respace/metric.hpp"
#include "respace/repr.hpp"

namespace respace {

// Extends a partial numbering to a total one (unlisted codes denote the empty
// set) and widens the relation with the diagonal:
//   n below' m  iff  (n, m both listed and n below m)  or  n = m.
// The widened relation is reflexive and transitive, and names over the base
// stay valid verbatim. No bounded procedure is attached: one would have to
// semi-decide listedness of arbitrary codes, and none exists in general.
std::pair<Numbering, StrongInclusion> totalize(const StrongInclusion& si,
                                               const Numbering& base);

// A computable map between code sequences of two bases, contravariant: it
// consumes sequences over the finer-named basis and produces sequences over
// the coarser one. Defined at least on sequences with nonempty intersection;
// empty outputs are legal (they wrap to the whole-space code).
struct Adapter {
  std::function<std::vector<Nat>(const std::vector<Nat>&)> map;
};

// The name translation an adapter induces: feed every initial segment of the
// input name (flattened to its subbasis codes) through the map and wrap each
// image sequence as one induced code.
Translator translation_from_adapter(const Adapter& adapter);

// Sample for the two adapter conditions. witness_seq supplies, for a point x
// in the target set d, a source-basis sequence containing x whose refinements
// must map strongly below d; refinements samples such refining sequences.
// Either hook may signal "unavailable" by returning an empty container, which
// counts as skipped.
struct AdapterCheckSample {
  std::vector<std::vector<Nat>> source_seqs;
  std::vector<PointWitness> points;
  std::vector<std::pair<PointWitness, Nat>> targets;
  std::function<std::vector<Nat>(const PointWitness&, const Nat&)> witness_seq;
  std::function<std::vector<std::vector<Nat>>(const PointWitness&, const std::vector<Nat>&)>
      refinements;
};

// Checks, by sampling, that the adapter images overcover (every sampled point
// in the intersection of a source sequence lies in every image set) and that
// the uniform refinement condition holds at every sampled (point, target)
// pair. Violations use kinds "overset" and "uniform-refinement".
CheckReport check_adapter(const Adapter& adapter, const NumberedSubbasis& target_sb,
                          const NumberedSubbasis& source_sb, const StrongInclusion& target_si,
                          const StrongInclusion& source_si, const AdapterCheckSample& sample);

// Cover presentation: cover(b1) enumerates codes of the other basis whose
// union is the set named b1. Checked two-sided on samples: every sampled
// point of b1 is caught by some enumerated set within the budget, and no
// enumerated set leaks a sampled point outside b1.
CheckReport lacombe_adapter_check(const std::function<Name(const Nat&)>& cover,
                                  const NumberedSubbasis& sb1, const NumberedSubbasis& sb2,
                                  const std::vector<Nat>& b1_codes,
                                  const std::vector<PointWitness>& points,
                                  std::uint64_t enum_budget);

// Pointed refinement: selector(b1, name prefix of x) returns a code b2 with
// x in B2 and B2 inside B1. Each case carries the point, a name prefix for
// it, and the target code.
CheckReport nogina_adapter_check(
    const std::function<Nat(const Nat&, const std::vector<Nat>&)>& selector,
    const NumberedSubbasis& sb1, const NumberedSubbasis& sb2,
    const std::vector<std::tuple<PointWitness, std::vector<Nat>, Nat>>& cases);

// Access to computable-real ball centers, as provided by a registry-backed
// world: certified approximants and the canonical embedding of rationals.
struct CrealAccess {
  std::function<mpq_class(const Nat& slot, std::uint64_t k)> approx;
  std::function<Nat(const mpq_class&)> embed_slot;
};

struct RationalCrealAdapters {
  Adapter rational_to_creal;  // rational-ball codes -> computable-endpoint codes
  Adapter creal_to_rational;  // computable-endpoint codes -> rational oversets
};

// The canonical adapter pair between the rational-interval basis of ℝ and the
// computable-endpoint one. rational_to_creal embeds codes; creal_to_rational
// approximates each center to a precision bounded both by the sequence length
// and by the ball's own radius, emitting rational oversets whose radii shrink
// as the input refines.
RationalCrealAdapters rational_vs_creal_adapters(const CrealAccess& creal);

}  // namespace respace
