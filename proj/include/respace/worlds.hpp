#pragma once

// Concrete spaces the CLI and the test suites run against. Each world bundles
// a numbered ball (or set) subbasis, optional metric structure, point parsing
// and name generators, plus the test-only oracles the checkers need. Worlds
// are honest by default: hooks answer Unknown or burn fuel rather than guess,
// and the deliberately unsound variants are separate, clearly named handles.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "respace/basis.hpp"
#include "respace/equivalence.hpp"
#include "respace/kernel.hpp"
#include "respace/metric.hpp"

namespace respace {

class RegistryState;

struct World {
  std::string id;
  NumberedSubbasis subbasis;
  std::optional<MetricWorld> metric;
  // True when member_test is total over parsed points: required by the
  // max-name enumerator, which must filter candidate codes exactly.
  bool exact_membership = false;

  std::function<PointWitness(const std::string&)> parse_point;
  // Point code for a rational value under this world's numbering; null when
  // the carrier has no rational embedding.
  std::function<Nat(const mpq_class&)> point_code;

  // Name generators; a null entry means the world cannot produce that kind.
  std::function<Name(const PointWitness&)> cauchy_name;
  std::function<Name(const PointWitness&)> si_name;
  std::function<Name(const PointWitness&)> min_name;

  // The relation SI names are measured against here: strict metric inclusion
  // for metric worlds, code equality for the discrete ones, extensional
  // equality for the hidden-slot world.
  StrongInclusion canonical_si;

  std::shared_ptr<RegistryState> registry;  // engaged for the registry world only
  // Hidden-slot world only: the tempting but unsound bounded equality test
  // that accepts whatever it failed to refute in time.
  std::function<StrongInclusion()> naive_equality;
};

// Builds a world from a spec string: a world name, optionally followed by
// options.
//   "R-rational"                         exact rational line
//   "R-registry [--with pi,e,sqrt2,divergent:3]"
//   "K-space [--fuel 1000]"              halting-interval subspace of the line
//   "N-discrete"                         naturals, discrete sets
//   "N-kc"                               naturals filtered to never-halting codes
//   "singleton [--fuel 1000]"            hidden two-valued slots
World make_world(const std::string& spec);

World make_rational_real_world();
World make_registry_real_world(bool pi_on = true, bool e_on = true, bool sqrt2_on = true,
                               unsigned divergent_slots = 3);
World make_kspace_world(std::uint64_t observe_fuel = 1000);
World make_discrete_nat_world(bool complement_filter = false);
World make_singleton_world(std::uint64_t reveal_fuel = 1000);

// The constant name listing only the radius-1/4 ball around integer point n.
// For a point whose surrounding interval is unresolved at the world's
// observation budget this is the best neighborhood-basis name the world can
// emit, and it is exactly the kind of name the Cauchy translators cannot use.
// Refused for points the world has already resolved as interval-interior.
Name kspace_min_name(const World& w, unsigned long n);

// Dovetailed enumeration of every subbasis code whose set contains the point:
// an exhaustive code scan filtered by the exact membership test, interleaved
// (in metric worlds) with shrinking balls around truncated approximants so
// that small radii appear early. Demands exact_membership.
Name enumerate_max_name(const World& w, const PointWitness& x);

// Strict metric inclusion whose exact oracle is replaced by a bounded
// certification sweep: true only when some approximant at precision up to
// max_precision certifies d + r1 < r2, false otherwise. Sound for positive
// answers, may under-approve hairline margins; for worlds without an exact
// distance this is the strongest oracle available.
StrongInclusion approx_strict_inclusion(const MetricWorld& m, std::uint64_t max_precision);

// Certified approximant access to registry slots, and the canonical rational
// embedding. The honest version burns the ambient meter on divergent slots.
CrealAccess creal_access(const World& registry_world);
// Test-only: reports 0 for divergent slots instead of diverging, to
// demonstrate what goes wrong when a totalized numbering is given a
// fabricated bounded procedure.
CrealAccess forced_creal_access(const World& registry_world);
MetricWorld forced_registry_metric(const World& registry_world);

// Rational-ball subbasis whose membership test also understands registry slot
// points, certifying through approximants where exact comparison is
// impossible.
NumberedSubbasis rational_balls_over(const World& registry_world);

// Deterministic samples for the axiom and adapter checks. Ball samples mix
// independent draws with pairs constructed to satisfy strict inclusion, so
// relation sampling sees positives.
std::vector<Nat> sample_ball_codes(const World& w, std::size_t count, std::uint64_t seed);
std::vector<PointWitness> sample_rational_points(std::size_t count, std::uint64_t seed);

AdapterCheckSample rational_to_creal_sample(const World& registry_world, std::size_t n,
                                            std::uint64_t seed);
AdapterCheckSample creal_to_rational_sample(const World& registry_world, std::size_t n,
                                            std::uint64_t seed);

}  // namespace respace
