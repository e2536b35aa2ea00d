#pragma once

// Metric-space instantiation: balls as paired (point code, rational radius
// code), the strict and non-strict metric strong inclusions, and the
// constructive translations between Cauchy names and the subbasis-code
// representations.

#include <gmpxx.h>

#include <cstdint>
#include <functional>

#include "respace/basis.hpp"
#include "respace/kernel.hpp"

namespace respace {

// A metric space presented through a partial numbering of a dense sequence
// and rational distance approximants: |distance_approx(n, m, k) - d| <= 2^-k.
// exact_distance is a test oracle and may be absent; approximants on codes
// outside the numbering's domain burn the ambient fuel meter.
struct MetricWorld {
  Numbering point_numbering;
  std::function<mpq_class(const Nat&, const Nat&, std::uint64_t)> distance_approx;
  std::function<mpq_class(const Nat&, const Nat&)> exact_distance;
};

// 2^k as an exact rational, k of either sign.
mpq_class pow2q(long k);

// Total bijective coding of ℚ onto canonical codes: sign, |numerator| and
// denominator-1 packed by iterated pairing. Decoding interprets arbitrary
// codes (non-canonical triples reduce), so rational_value is total.
Nat rational_code(const mpq_class& q);
mpq_class rational_value(const Nat& code);

struct Ball {
  Nat center_code;
  Nat radius_code;
  mpq_class radius;
};

// Ball codes pair the center's point code with a rational radius code. Codes
// whose radius part decodes to a non-positive rational are outside the
// subbasis domain.
Nat ball_code(const Nat& center_code, const mpq_class& radius);
Ball decode_ball(const Nat& code);

// The two canonical strong inclusions on metric balls:
//   strict      d(c1,c2) + r1 <  r2   (semi-decidable, irreflexive)
//   non-strict  d(c1,c2) + r1 <= r2   (reflexive, no bounded procedure here)
// holds uses the exact oracle and treats codes outside the domain as
// unrelated.
StrongInclusion strong_incl_metric(const MetricWorld& world, bool strict);

// Cauchy names list point codes with pairwise modulus d(p(i), p(j)) < 2^-j
// for i > j. The translations below are the identity-flavored realizers
// between that representation and the ball-code ones; each reads only
// finitely many input cells per output cell and diverges (rather than lie)
// on inputs violating the preconditions.

// n-th output: ball around p(n) of radius 2^-n.
Name cauchy_to_min(const Name& p);
// n-th output: the singleton induced code of that ball.
Name cauchy_to_si(const Name& p);
// Scans induced codes for a factor of explicit radius < 2^-(n+1), emits its
// center.
Name si_to_cauchy(const Name& q);
// Blind search through a stream of ball codes for radius <= 2^-(n+1).
Name max_to_cauchy(const Name& f);

// Pairwise modulus check over a finite prefix. Violation needs certified
// evidence: the exact oracle when the world has one, otherwise an approximant
// at distance visibly at or above the bound.
PrefixCheck validate_cauchy_prefix(const std::vector<Nat>& prefix, const MetricWorld& world,
                                   Fuel fuel);

}  // namespace respace
