#include "respace/metric.hpp"

#include <algorithm>
#include <stdexcept>

namespace respace {

mpq_class pow2q(long k) {
  mpz_class num = 1, den = 1;
  if (k >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-k));
  }
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

Nat rational_code(const mpq_class& q) {
  mpq_class canon = q;
  canon.canonicalize();
  unsigned long sign = canon < 0 ? 1 : 0;
  mpz_class num = abs(canon.get_num());
  mpz_class den = canon.get_den();  // canonical form keeps den >= 1
  return pair(pair(Nat(sign), Nat(num)), Nat(mpz_class(den - 1)));
}

mpq_class rational_value(const Nat& code) {
  auto [head, den_part] = unpair(code);
  auto [sign, num] = unpair(head);
  mpq_class out(num.dense(), den_part.dense() + 1);
  out.canonicalize();
  // Any natural decodes: odd sign slots mean negative, everything reduces.
  if (sign.dense() % 2 == 1) out = -out;
  return out;
}

Nat ball_code(const Nat& center_code, const mpq_class& radius) {
  return pair(center_code, rational_code(radius));
}

Ball decode_ball(const Nat& code) {
  auto [center, radius_code] = unpair(code);
  mpq_class radius = rational_value(radius_code);
  return Ball{std::move(center), std::move(radius_code), std::move(radius)};
}

StrongInclusion strong_incl_metric(const MetricWorld& world, bool strict) {
  StrongInclusion si;
  si.reflexive = !strict;
  auto exact = world.exact_distance;
  auto oracle = world.point_numbering.domain_oracle;
  si.holds = [exact, oracle, strict](const Nat& a, const Nat& b) {
    if (a.is_spiky() || b.is_spiky()) return false;
    Ball A = decode_ball(a);
    Ball B = decode_ball(b);
    if (A.radius <= 0 || B.radius <= 0) return false;
    if (oracle && (!oracle(A.center_code) || !oracle(B.center_code))) return false;
    if (!exact)
      throw std::logic_error("strong_incl_metric: world has no exact distance oracle");
    mpq_class d = exact(A.center_code, B.center_code);
    return strict ? d + A.radius < B.radius : d + A.radius <= B.radius;
  };
  if (strict) {
    auto approx = world.distance_approx;
    si.semi = [approx](const Nat& a, const Nat& b, Fuel fuel) {
      return bounded_semi(fuel, [&] {
        if (a.is_spiky() || b.is_spiky())
          for (;;) charge_poll();  // not ball codes; never confirmed
        Ball A = decode_ball(a);
        Ball B = decode_ball(b);
        if (A.radius <= 0 || B.radius <= 0)
          for (;;) charge_poll();  // outside the subbasis domain
        for (std::uint64_t k = 0;; ++k) {
          charge_poll();
          mpq_class q = approx(A.center_code, B.center_code, k);
          if (q + pow2q(-static_cast<long>(k)) + A.radius < B.radius)
            return SemiResult::Accept;
        }
      });
    };
  }
  return si;
}

Name cauchy_to_min(const Name& p) {
  return Name([p](std::uint64_t n) {
    return ball_code(p.at(n), pow2q(-static_cast<long>(n)));
  });
}

Name cauchy_to_si(const Name& p) {
  return Name([p](std::uint64_t n) {
    return finset_encode({ball_code(p.at(n), pow2q(-static_cast<long>(n)))});
  });
}

Name si_to_cauchy(const Name& q) {
  return Name([q](std::uint64_t n) {
    mpq_class bound = pow2q(-static_cast<long>(n) - 1);
    for (std::uint64_t i = 0;; ++i) {
      for (const Nat& element : finset_decode(q.at(i))) {
        if (element.is_spiky()) continue;  // cannot be a ball code
        Ball b = decode_ball(element);
        if (b.radius > 0 && b.radius < bound) return b.center_code;
      }
    }
  });
}

Name max_to_cauchy(const Name& f) {
  return Name([f](std::uint64_t n) {
    mpq_class bound = pow2q(-static_cast<long>(n) - 1);
    for (std::uint64_t i = 0;; ++i) {
      Nat entry = f.at(i);
      if (entry.is_spiky()) continue;
      Ball b = decode_ball(entry);
      if (b.radius > 0 && b.radius <= bound) return b.center_code;
    }
  });
}

PrefixCheck validate_cauchy_prefix(const std::vector<Nat>& prefix, const MetricWorld& world,
                                   Fuel fuel) {
  if (prefix.size() < 2) return PrefixCheck::ConsistentSoFar;
  std::size_t pairs = prefix.size() * (prefix.size() - 1) / 2;
  Fuel slice{std::max<std::uint64_t>(1, fuel.steps / pairs)};
  bool unknown = false;
  for (std::size_t j = 0; j < prefix.size(); ++j) {
    for (std::size_t i = j + 1; i < prefix.size(); ++i) {
      mpq_class bound = pow2q(-static_cast<long>(j));
      if (world.exact_distance) {
        mpq_class d = world.exact_distance(prefix[i], prefix[j]);
        if (d >= bound) return PrefixCheck::Violation;
        continue;
      }
      // Bounded refinement: certify d >= bound or d < bound, else leave open.
      FuelMeter meter(slice.steps);
      bool settled = false;
      try {
        FuelScope scope(meter);
        for (std::uint64_t k = 0;; ++k) {
          charge_poll();
          mpq_class approx = world.distance_approx(prefix[i], prefix[j], k);
          mpq_class err = pow2q(-static_cast<long>(k));
          if (approx - err >= bound) return PrefixCheck::Violation;
          if (approx + err < bound) {
            settled = true;
            break;
          }
        }
      } catch (const Exhausted&) {
      }
      if (!settled) unknown = true;
    }
  }
  return unknown ? PrefixCheck::Unknown : PrefixCheck::ConsistentSoFar;
}

}  // namespace respace
