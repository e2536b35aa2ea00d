#include "respace/worlds.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace respace {

namespace {

[[noreturn]] void burn_forever() {
  for (;;) charge_poll();
}

// floor(x * 4^i) / 4^i, the truncated base-4 approximant every generated
// Cauchy name is built from. The error lies in [0, 4^-i).
mpq_class trunc4(const mpq_class& x, unsigned long i) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 4, i);
  mpz_class num = x.get_num() * scale;
  mpz_class t;
  mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
  mpq_class out(t, scale);
  out.canonicalize();
  return out;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  try {
    q = s.c_str();
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational literal: " + s);
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// Lowest bit of the code, total across dense and sparse forms.
bool nat_is_odd(const Nat& n) {
  auto bits = finset_decode(n);
  return !bits.empty() && bits.front() == Nat(0);
}

// --- registry slots ----------------------------------------------------------

constexpr unsigned long kTagRational = 0;
constexpr unsigned long kTagNamed = 1;
constexpr unsigned long kTagDivergent = 2;
constexpr unsigned long kTagInvalid = 3;

// (tag, payload) of a slot code; tag kTagInvalid when the code is not
// structurally a slot.
std::pair<unsigned long, Nat> slot_parts(const Nat& code) {
  if (code.is_spiky()) return {kTagInvalid, Nat(0)};
  auto [t, p] = unpair(code);
  if (t.is_spiky() || !(t < Nat(3))) return {kTagInvalid, Nat(0)};
  return {t.to_ulong(), p};
}

Nat rational_slot(const mpq_class& q) { return pair(Nat(0), rational_code(q)); }

// arctan(1/x) by the alternating series; the truncation error is bounded by
// the first omitted term.
mpq_class arctan_reciprocal(unsigned long x, const mpq_class& bound) {
  mpq_class sum = 0;
  mpq_class power(1, x);
  mpq_class inv_x2(1, x * x);
  bool add = true;
  for (unsigned long j = 0;; ++j) {
    mpq_class term = power / (2 * j + 1);
    if (term <= bound) break;
    if (add)
      sum += term;
    else
      sum -= term;
    add = !add;
    power *= inv_x2;
  }
  return sum;
}

mpq_class pi_series(std::uint64_t k) {
  // 16 atan(1/5) - 4 atan(1/239), error budget split so the total stays
  // within 2^-(k+1).
  mpq_class b1 = pow2q(-static_cast<long>(k) - 6);
  mpq_class b2 = pow2q(-static_cast<long>(k) - 4);
  return 16 * arctan_reciprocal(5, b1) - 4 * arctan_reciprocal(239, b2);
}

mpq_class e_series(std::uint64_t k) {
  mpq_class sum = 0;
  mpz_class fact = 1;
  mpq_class bound = pow2q(-static_cast<long>(k));
  for (unsigned long j = 0;; ++j) {
    sum += 1 / mpq_class(fact);
    fact *= j + 1;
    // tail past term j is at most 2/(j+1)!
    if (2 / mpq_class(fact) <= bound) break;
  }
  return sum;
}

mpq_class sqrt2_series(std::uint64_t k) {
  unsigned long m = static_cast<unsigned long>(k) + 1;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, m);
  mpz_class target = 2 * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), target.get_mpz_t());
  mpq_class out(root, scale);
  out.canonicalize();
  return out;
}

}  // namespace

// Shared mutable state of the registry world: which named constants exist,
// how many divergent slots are parseable, and a cache of computed
// approximants (|named_approx(i, k) - value| <= 2^-k).
class RegistryState {
 public:
  RegistryState(bool pi_on, bool e_on, bool sqrt2_on, unsigned divergent)
      : on_{pi_on, e_on, sqrt2_on}, divergent_(divergent) {}

  bool named_enabled(unsigned long idx) const { return idx < 3 && on_[idx]; }
  unsigned divergent_count() const { return divergent_; }

  mpq_class named_approx(unsigned long idx, std::uint64_t k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(idx, k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    mpq_class v;
    switch (idx) {
      case 0: v = pi_series(k); break;
      case 1: v = e_series(k); break;
      case 2: v = sqrt2_series(k); break;
      default: throw std::invalid_argument("no such named constant");
    }
    cache_.emplace(key, v);
    return v;
  }

 private:
  bool on_[3];
  unsigned divergent_;
  std::map<std::pair<unsigned long, std::uint64_t>, mpq_class> cache_;
  std::mutex mu_;
};

namespace {

// Certified approximant of the slot's value; diverges (burning the ambient
// meter) on anything outside the slot numbering's domain.
mpq_class slot_value_approx(const std::shared_ptr<RegistryState>& st, const Nat& slot,
                            std::uint64_t k) {
  auto [tag, payload] = slot_parts(slot);
  if (tag == kTagRational) return rational_value(payload);
  if (tag == kTagNamed && payload < Nat(3) && st->named_enabled(payload.to_ulong()))
    return st->named_approx(payload.to_ulong(), k);
  burn_forever();
}

}  // namespace

// --- rational line -----------------------------------------------------------

World make_rational_real_world() {
  World w;
  w.id = "R-rational";

  Numbering points;
  points.id = "rationals";
  points.domain_check = [](const Nat&, Fuel fuel) {
    return bounded_semi(fuel, [] {
      charge_poll();
      return SemiResult::Accept;
    });
  };
  points.domain_oracle = [](const Nat&) { return true; };

  MetricWorld m;
  m.point_numbering = points;
  m.distance_approx = [](const Nat& a, const Nat& b, std::uint64_t) -> mpq_class {
    if (a.is_spiky() || b.is_spiky()) burn_forever();
    return abs(rational_value(a) - rational_value(b));
  };
  m.exact_distance = [](const Nat& a, const Nat& b) -> mpq_class {
    return abs(rational_value(a) - rational_value(b));
  };
  w.metric = m;

  NumberedSubbasis sb;
  sb.numbering.id = "rational-balls";
  sb.numbering.domain_check = [](const Nat& code, Fuel fuel) {
    return bounded_semi(fuel, [&]() -> SemiResult {
      charge_poll();
      if (!code.is_spiky() && decode_ball(code).radius > 0) return SemiResult::Accept;
      burn_forever();
    });
  };
  sb.numbering.domain_oracle = [](const Nat& code) {
    return !code.is_spiky() && decode_ball(code).radius > 0;
  };
  sb.member_test = [](const PointWitness& p, const Nat& code) {
    if (!p.is_rational() || code.is_spiky()) return Tri::Out;
    Ball b = decode_ball(code);
    if (!(b.radius > 0)) return Tri::Out;
    return abs(p.rational() - rational_value(b.center_code)) < b.radius ? Tri::In : Tri::Out;
  };
  w.subbasis = sb;
  w.exact_membership = true;

  w.point_code = [](const mpq_class& q) { return rational_code(q); };
  w.parse_point = [](const std::string& s) { return rational_point(parse_rational(s)); };

  w.cauchy_name = [](const PointWitness& p) {
    mpq_class x = p.rational();
    return name_from_function([x](std::uint64_t i) { return rational_code(trunc4(x, i)); });
  };
  w.si_name = [cn = w.cauchy_name](const PointWitness& p) { return cauchy_to_si(cn(p)); };
  w.min_name = [cn = w.cauchy_name](const PointWitness& p) { return cauchy_to_min(cn(p)); };

  w.canonical_si = strong_incl_metric(m, true);
  return w;
}

// --- registry reals ----------------------------------------------------------

World make_registry_real_world(bool pi_on, bool e_on, bool sqrt2_on, unsigned divergent_slots) {
  World w;
  w.id = "R-registry";
  auto st = std::make_shared<RegistryState>(pi_on, e_on, sqrt2_on, divergent_slots);
  w.registry = st;

  Numbering points;
  points.id = "creal-slots";
  points.domain_check = [st](const Nat& code, Fuel fuel) {
    return bounded_semi(fuel, [&]() -> SemiResult {
      charge_poll();
      auto [tag, payload] = slot_parts(code);
      if (tag == kTagRational) return SemiResult::Accept;
      if (tag == kTagNamed && payload < Nat(3) && st->named_enabled(payload.to_ulong()))
        return SemiResult::Accept;
      burn_forever();
    });
  };
  points.domain_oracle = [st](const Nat& code) {
    auto [tag, payload] = slot_parts(code);
    if (tag == kTagRational) return true;
    return tag == kTagNamed && payload < Nat(3) && st->named_enabled(payload.to_ulong());
  };

  MetricWorld m;
  m.point_numbering = points;
  m.distance_approx = [st](const Nat& a, const Nat& b, std::uint64_t k) {
    mpq_class va = slot_value_approx(st, a, k + 1);
    mpq_class vb = slot_value_approx(st, b, k + 1);
    return mpq_class(abs(va - vb));
  };
  w.metric = m;

  NumberedSubbasis sb;
  sb.numbering.id = "creal-balls";
  sb.numbering.domain_check = [points](const Nat& code, Fuel fuel) {
    return bounded_semi(fuel, [&]() -> SemiResult {
      charge_poll();
      if (code.is_spiky()) burn_forever();
      Ball b = decode_ball(code);
      if (!(b.radius > 0)) burn_forever();
      FuelMeter* meter = FuelScope::current();
      Fuel rest{meter ? meter->remaining() : 0};
      return points.domain_check(b.center_code, rest);
    });
  };
  sb.numbering.domain_oracle = [points](const Nat& code) {
    if (code.is_spiky()) return false;
    Ball b = decode_ball(code);
    return b.radius > 0 && points.domain_oracle(b.center_code);
  };
  sb.member_test = [st](const PointWitness& p, const Nat& code) {
    if (code.is_spiky()) return Tri::Unknown;
    Ball b = decode_ball(code);
    if (!(b.radius > 0)) return Tri::Out;
    auto [ctag, cpay] = slot_parts(b.center_code);
    if (ctag == kTagInvalid) return Tri::Out;
    if (ctag == kTagNamed && !(cpay < Nat(3) && st->named_enabled(cpay.to_ulong())))
      return Tri::Out;
    if (ctag == kTagDivergent) return Tri::Unknown;

    unsigned long ptag = kTagRational;
    Nat ppay;
    if (!p.is_rational()) {
      auto parts = slot_parts(p.code());
      ptag = parts.first;
      ppay = parts.second;
      if (ptag == kTagInvalid || ptag == kTagDivergent) return Tri::Unknown;
      if (ptag == kTagNamed && !(ppay < Nat(3) && st->named_enabled(ppay.to_ulong())))
        return Tri::Unknown;
      if (p.code() == b.center_code) return Tri::In;
    }

    bool point_exact = p.is_rational() || ptag == kTagRational;
    bool center_exact = ctag == kTagRational;
    mpq_class pv_exact = p.is_rational() ? p.rational()
                        : ptag == kTagRational ? rational_value(ppay)
                                               : mpq_class(0);
    mpq_class cv_exact = center_exact ? rational_value(cpay) : mpq_class(0);
    if (point_exact && center_exact)
      return abs(pv_exact - cv_exact) < b.radius ? Tri::In : Tri::Out;

    for (std::uint64_t k = 2; k <= 64; ++k) {
      mpq_class pv = point_exact ? pv_exact : st->named_approx(ppay.to_ulong(), k);
      mpq_class cv = center_exact ? cv_exact : st->named_approx(cpay.to_ulong(), k);
      mpq_class d = abs(pv - cv);
      mpq_class slack = pow2q(1 - static_cast<long>(k));
      if (d + slack < b.radius) return Tri::In;
      if (d - slack >= b.radius) return Tri::Out;
    }
    return Tri::Unknown;
  };
  w.subbasis = sb;
  w.exact_membership = false;

  w.point_code = [](const mpq_class& q) { return rational_slot(q); };
  w.parse_point = [st](const std::string& s) -> PointWitness {
    if (s == "pi" || s == "e" || s == "sqrt2") {
      unsigned long idx = s == "pi" ? 0 : s == "e" ? 1 : 2;
      if (!st->named_enabled(idx))
        throw std::invalid_argument("named constant not present in this registry: " + s);
      return coded_point(s, pair(Nat(1), Nat(idx)));
    }
    if (s.rfind("div:", 0) == 0) {
      unsigned long idx = std::stoul(s.substr(4));
      if (idx >= st->divergent_count())
        throw std::invalid_argument("no such divergent slot: " + s);
      return coded_point(s, pair(Nat(2), Nat(idx)));
    }
    return rational_point(parse_rational(s));
  };

  w.cauchy_name = [st](const PointWitness& p) -> Name {
    if (p.is_rational()) return constant_name(rational_slot(p.rational()));
    auto [tag, payload] = slot_parts(p.code());
    if (tag == kTagNamed && payload < Nat(3) && st->named_enabled(payload.to_ulong())) {
      unsigned long idx = payload.to_ulong();
      return name_from_function([st, idx](std::uint64_t i) {
        return rational_slot(st->named_approx(idx, i + 2));
      });
    }
    if (tag == kTagDivergent)
      return name_from_function([](std::uint64_t) -> Nat { burn_forever(); });
    throw std::invalid_argument("no name derivable for a code outside the slot numbering");
  };
  w.si_name = [st](const PointWitness& p) -> Name {
    Nat slot = p.is_rational() ? rational_slot(p.rational()) : p.code();
    auto [tag, payload] = slot_parts(slot);
    if (tag == kTagDivergent)
      return name_from_function([](std::uint64_t) -> Nat { burn_forever(); });
    if (tag == kTagInvalid ||
        (tag == kTagNamed && !(payload < Nat(3) && st->named_enabled(payload.to_ulong()))))
      throw std::invalid_argument("no name derivable for a code outside the slot numbering");
    return name_from_function([slot](std::uint64_t i) {
      return finset_encode({ball_code(slot, pow2q(-static_cast<long>(i) - 2))});
    });
  };
  w.min_name = [cn = w.cauchy_name](const PointWitness& p) { return cauchy_to_min(cn(p)); };

  w.canonical_si = approx_strict_inclusion(m, 96);
  return w;
}

// --- halting-interval subspace -------------------------------------------------

namespace {

// Ground truth of the halting table: even indices halt, at step (n+2)^2; odd
// indices never do. The worlds only ever observe it through step simulation.
bool machine_halts(unsigned long n) { return n % 2 == 0; }
std::uint64_t machine_halt_step(unsigned long n) {
  return (static_cast<std::uint64_t>(n) + 2) * (static_cast<std::uint64_t>(n) + 2);
}

bool is_integer(const mpq_class& x) { return x.get_den() == 1; }

// Integer candidates n with |x - n| <= 1/2 (zero, one, or two of them).
std::vector<unsigned long> interval_candidates(const mpq_class& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<unsigned long> out;
  for (int d = 0; d <= 1; ++d) {
    mpz_class c = fl + d;
    if (c < 0 || !c.fits_ulong_p()) continue;
    if (abs(x - mpq_class(c)) <= mpq_class(1, 2)) out.push_back(c.get_ui());
  }
  return out;
}

// The world's knowledge at observation budget F: engaged true/false when the
// question "is x a point of the space" is settled, empty while the relevant
// halting fact is unobserved.
std::optional<bool> observed_in_space(const mpq_class& x, std::uint64_t F) {
  if (is_integer(x)) return x >= 0;
  auto cands = interval_candidates(x);
  if (cands.empty()) return false;
  for (unsigned long n : cands)
    if (machine_halts(n) && machine_halt_step(n) <= F) return true;
  return std::nullopt;
}

bool truly_in_space(const mpq_class& x) {
  if (is_integer(x)) return x >= 0;
  for (unsigned long n : interval_candidates(x))
    if (machine_halts(n)) return true;
  return false;
}

}  // namespace

World make_kspace_world(std::uint64_t observe_fuel) {
  World w;
  w.id = "K-space";
  const std::uint64_t F = observe_fuel;

  Numbering points;
  points.id = "kspace-points";
  points.domain_check = [](const Nat& code, Fuel fuel) {
    return bounded_semi(fuel, [&]() -> SemiResult {
      if (code.is_spiky()) burn_forever();
      mpq_class x = rational_value(code);
      if (is_integer(x) && x >= 0) {
        charge_poll();
        return SemiResult::Accept;
      }
      auto cands = interval_candidates(x);
      for (std::uint64_t t = 1;; ++t) {
        charge_poll();
        for (unsigned long n : cands)
          if (machine_halts(n) && machine_halt_step(n) == t) return SemiResult::Accept;
      }
    });
  };
  points.domain_oracle = [](const Nat& code) {
    return !code.is_spiky() && truly_in_space(rational_value(code));
  };

  MetricWorld m;
  m.point_numbering = points;
  m.distance_approx = [](const Nat& a, const Nat& b, std::uint64_t) -> mpq_class {
    if (a.is_spiky() || b.is_spiky()) burn_forever();
    return abs(rational_value(a) - rational_value(b));
  };
  m.exact_distance = [](const Nat& a, const Nat& b) -> mpq_class {
    return abs(rational_value(a) - rational_value(b));
  };
  w.metric = m;

  NumberedSubbasis sb;
  sb.numbering.id = "kspace-balls";
  sb.numbering.domain_check = [points](const Nat& code, Fuel fuel) {
    return bounded_semi(fuel, [&]() -> SemiResult {
      charge_poll();
      if (code.is_spiky()) burn_forever();
      Ball b = decode_ball(code);
      if (!(b.radius > 0)) burn_forever();
      FuelMeter* meter = FuelScope::current();
      Fuel rest{meter ? meter->remaining() : 0};
      return points.domain_check(b.center_code, rest);
    });
  };
  sb.numbering.domain_oracle = [points](const Nat& code) {
    if (code.is_spiky()) return false;
    Ball b = decode_ball(code);
    return b.radius > 0 && points.domain_oracle(b.center_code);
  };
  sb.member_test = [F](const PointWitness& p, const Nat& code) {
    if (!p.is_rational() || code.is_spiky()) return Tri::Out;
    Ball b = decode_ball(code);
    if (!(b.radius > 0)) return Tri::Out;
    mpq_class c = rational_value(b.center_code);
    auto obs = observed_in_space(c, F);
    if (!obs) return Tri::Unknown;
    if (!*obs) return Tri::Out;
    return abs(p.rational() - c) < b.radius ? Tri::In : Tri::Out;
  };
  w.subbasis = sb;
  w.exact_membership = false;

  w.point_code = [](const mpq_class& q) { return rational_code(q); };
  w.parse_point = [F](const std::string& s) {
    mpq_class q = parse_rational(s);
    auto obs = observed_in_space(q, F);
    if (!obs || !*obs)
      throw std::invalid_argument("not a certified point of the space: " + s);
    return rational_point(q);
  };

  // Truncated approximants clamped into the certified interval, so every
  // listed code stays inside the point numbering's domain.
  auto interval_floor = [F](const mpq_class& x) {
    for (unsigned long n : interval_candidates(x))
      if (machine_halts(n) && machine_halt_step(n) <= F)
        return mpq_class(n) - mpq_class(1, 2);
    throw std::invalid_argument("point's interval is not certified at this budget");
  };

  w.cauchy_name = [interval_floor](const PointWitness& p) -> Name {
    mpq_class x = p.rational();
    if (is_integer(x)) return constant_name(rational_code(x));
    mpq_class lo = interval_floor(x);
    return name_from_function([x, lo](std::uint64_t i) {
      return rational_code(std::max(trunc4(x, i), lo));
    });
  };
  w.si_name = [interval_floor](const PointWitness& p) -> Name {
    mpq_class x = p.rational();
    if (is_integer(x)) {
      Nat cc = rational_code(x);
      return name_from_function([cc](std::uint64_t i) {
        return finset_encode({ball_code(cc, pow2q(-static_cast<long>(i) - 2))});
      });
    }
    mpq_class lo = interval_floor(x);
    return name_from_function([x, lo](std::uint64_t i) {
      mpq_class a = std::max(trunc4(x, i + 2), lo);
      return finset_encode({ball_code(rational_code(a), pow2q(-static_cast<long>(i) - 2))});
    });
  };
  w.min_name = [F, cn = w.cauchy_name](const PointWitness& p) -> Name {
    mpq_class x = p.rational();
    if (is_integer(x) && x >= 0) {
      unsigned long n = static_cast<unsigned long>(x.get_num().get_ui());
      if (!(machine_halts(n) && machine_halt_step(n) <= F)) {
        // Unresolved integer: as far as the world knows the point may be
        // isolated, and this single ball is then a full neighborhood basis.
        return constant_name(ball_code(rational_code(x), mpq_class(1, 4)));
      }
    }
    return cauchy_to_min(cn(p));
  };

  w.canonical_si = strong_incl_metric(m, true);
  return w;
}

Name kspace_min_name(const World& w, unsigned long n) {
  // Probe a ball centered just off the integer: Unknown means the interval
  // around n is unresolved and the constant name is the honest answer.
  mpq_class probe_center = mpq_class(n) - mpq_class(1, 4);
  Nat probe = ball_code(rational_code(probe_center), mpq_class(1, 8));
  if (w.subbasis.member_test(rational_point(mpq_class(n)), probe) != Tri::Unknown)
    throw std::invalid_argument(
        "interval around the point is resolved; a constant name would be wrong");
  return constant_name(ball_code(rational_code(mpq_class(n)), mpq_class(1, 4)));
}

// --- discrete naturals ---------------------------------------------------------

World make_discrete_nat_world(bool complement_filter) {
  World w;
  w.id = complement_filter ? "N-kc" : "N-discrete";

  NumberedSubbasis sb;
  sb.numbering.id = complement_filter ? "never-halting-codes" : "discrete-sets";
  if (complement_filter) {
    // Domain is the complement of the halting set: no finite simulation can
    // confirm membership, so the bounded check never accepts.
    sb.numbering.domain_check = [](const Nat&, Fuel fuel) {
      return bounded_semi(fuel, []() -> SemiResult { burn_forever(); });
    };
    sb.numbering.domain_oracle = [](const Nat& code) { return nat_is_odd(code); };
  } else {
    sb.numbering.domain_check = [](const Nat&, Fuel fuel) {
      return bounded_semi(fuel, [] {
        charge_poll();
        return SemiResult::Accept;
      });
    };
    sb.numbering.domain_oracle = [](const Nat&) { return true; };
  }
  sb.member_test = [complement_filter](const PointWitness& p, const Nat& code) {
    if (p.is_rational()) return Tri::Out;
    if (complement_filter && !nat_is_odd(code)) return Tri::Unknown;
    return p.code() == code ? Tri::In : Tri::Out;
  };
  w.subbasis = sb;
  w.exact_membership = !complement_filter;

  w.parse_point = [complement_filter](const std::string& s) {
    Nat n = Nat::from_decimal(s);
    if (complement_filter && !nat_is_odd(n))
      throw std::invalid_argument("code resolves to a halting machine; not a carrier point");
    return coded_point(s, n);
  };
  w.si_name = [](const PointWitness& p) { return constant_name(finset_encode({p.code()})); };
  w.min_name = [](const PointWitness& p) { return constant_name(p.code()); };
  w.canonical_si = equality_strong_inclusion();
  return w;
}

// --- hidden two-valued slots ----------------------------------------------------

namespace {

unsigned long slot_value(const Nat& c) { return nat_is_odd(c) ? 1 : 0; }

// Step at which the code's hidden value becomes observable; huge codes
// effectively never reveal.
std::optional<std::uint64_t> reveal_step(const Nat& c) {
  if (c.is_spiky() || !c.dense().fits_ulong_p()) return std::nullopt;
  return c.to_ulong() / 2;
}

}  // namespace

World make_singleton_world(std::uint64_t reveal_fuel) {
  World w;
  w.id = "singleton";
  const std::uint64_t F = reveal_fuel;

  NumberedSubbasis sb;
  sb.numbering.id = "hidden-slots";
  sb.numbering.domain_check = [](const Nat&, Fuel fuel) {
    return bounded_semi(fuel, [] {
      charge_poll();
      return SemiResult::Accept;
    });
  };
  sb.numbering.domain_oracle = [](const Nat&) { return true; };
  sb.member_test = [F](const PointWitness& p, const Nat& code) {
    if (p.is_rational()) return Tri::Out;
    auto rs = reveal_step(code);
    if (!rs || *rs > F) return Tri::Unknown;
    return slot_value(code) == p.code().to_ulong() ? Tri::In : Tri::Out;
  };
  w.subbasis = sb;
  w.exact_membership = false;

  w.parse_point = [](const std::string& s) {
    if (s != "0" && s != "1") throw std::invalid_argument("hidden-slot points are 0 or 1");
    return coded_point("value-" + s, Nat(s == "1" ? 1ul : 0ul));
  };
  w.si_name = [](const PointWitness& p) { return constant_name(finset_encode({p.code()})); };
  w.min_name = [](const PointWitness& p) { return constant_name(p.code()); };

  StrongInclusion ext;
  ext.reflexive = true;
  ext.holds = [](const Nat& a, const Nat& b) { return slot_value(a) == slot_value(b); };
  // Extensional equality of hidden values has no bounded procedure: refuting
  // needs both values revealed, confirming needs unboundedly many of them.
  ext.semi = nullptr;
  w.canonical_si = ext;

  w.naive_equality = []() {
    StrongInclusion si;
    si.reflexive = true;
    si.holds = [](const Nat& a, const Nat& b) { return slot_value(a) == slot_value(b); };
    si.semi = [](const Nat& a, const Nat& b, Fuel fuel) {
      return bounded_semi(fuel, [&]() -> SemiResult {
        auto ra = reveal_step(a);
        auto rb = reveal_step(b);
        for (std::uint64_t t = 0;; ++t) {
          FuelMeter* meter = FuelScope::current();
          // The bug under demonstration: when refutation hasn't arrived in
          // time, give up and accept.
          if (meter && meter->remaining() <= 1) return SemiResult::Accept;
          charge_poll();
          if (ra && rb && t >= *ra && t >= *rb) {
            if (slot_value(a) == slot_value(b)) return SemiResult::Accept;
            burn_forever();
          }
        }
      });
    };
    return si;
  };
  return w;
}

// --- spec parsing ---------------------------------------------------------------

World make_world(const std::string& spec) {
  std::istringstream in(spec);
  std::string name;
  if (!(in >> name)) throw std::invalid_argument("empty world spec");

  std::uint64_t fuel = 1000;
  bool pi = true, e = true, sqrt2 = true;
  unsigned divergent = 3;

  std::string tok;
  while (in >> tok) {
    if (tok == "--fuel") {
      if (!(in >> fuel)) throw std::invalid_argument("--fuel needs a number");
    } else if (tok == "--with") {
      std::string list;
      if (!(in >> list)) throw std::invalid_argument("--with needs a slot list");
      pi = e = sqrt2 = false;
      divergent = 0;
      std::stringstream ls(list);
      std::string item;
      while (std::getline(ls, item, ',')) {
        if (item == "pi")
          pi = true;
        else if (item == "e")
          e = true;
        else if (item == "sqrt2")
          sqrt2 = true;
        else if (item.rfind("divergent:", 0) == 0)
          divergent = static_cast<unsigned>(std::stoul(item.substr(10)));
        else
          throw std::invalid_argument("unknown registry slot kind: " + item);
      }
    } else {
      throw std::invalid_argument("unknown world option: " + tok);
    }
  }

  if (name == "R-rational") return make_rational_real_world();
  if (name == "R-registry") return make_registry_real_world(pi, e, sqrt2, divergent);
  if (name == "K-space") return make_kspace_world(fuel);
  if (name == "N-discrete") return make_discrete_nat_world(false);
  if (name == "N-kc") return make_discrete_nat_world(true);
  if (name == "singleton") return make_singleton_world(fuel);
  throw std::invalid_argument("unknown world: " + name);
}

// --- cross-world utilities ------------------------------------------------------

Name enumerate_max_name(const World& w, const PointWitness& x) {
  if (!w.exact_membership)
    throw std::invalid_argument(
        "world cannot answer membership exactly; a complete enumeration would have to guess");
  struct Scan {
    mpz_class next = 0;
    std::vector<Nat> found;
  };
  auto scan = std::make_shared<Scan>();
  auto member = w.subbasis.member_test;
  auto oracle = w.subbasis.numbering.domain_oracle;
  auto lane_a = [scan, member, oracle, x](std::uint64_t i) {
    while (scan->found.size() <= i) {
      charge_poll();
      Nat k{mpz_class(scan->next)};
      ++scan->next;
      if (oracle && !oracle(k)) continue;
      if (member(x, k) == Tri::In) scan->found.push_back(k);
    }
    return scan->found[i];
  };
  if (!w.metric || !x.is_rational() || !w.point_code) {
    return name_from_function(lane_a);
  }
  mpq_class v = x.rational();
  auto pc = w.point_code;
  return name_from_function([lane_a, v, pc](std::uint64_t j) -> Nat {
    if (j % 2 == 0) return lane_a(j / 2);
    unsigned long i = static_cast<unsigned long>(j / 2);
    return ball_code(pc(trunc4(v, i)), pow2q(-static_cast<long>(i)));
  });
}

StrongInclusion approx_strict_inclusion(const MetricWorld& m, std::uint64_t max_precision) {
  StrongInclusion si = strong_incl_metric(m, true);
  auto dist = m.distance_approx;
  auto oracle = m.point_numbering.domain_oracle;
  si.holds = [dist, oracle, max_precision](const Nat& a, const Nat& b) {
    if (a.is_spiky() || b.is_spiky()) return false;
    Ball ba = decode_ball(a);
    Ball bb = decode_ball(b);
    if (!(ba.radius > 0) || !(bb.radius > 0)) return false;
    if (oracle && (!oracle(ba.center_code) || !oracle(bb.center_code))) return false;
    for (std::uint64_t k = 2; k <= max_precision; ++k) {
      mpq_class d = dist(ba.center_code, bb.center_code, k);
      mpq_class slack = pow2q(-static_cast<long>(k));
      if (d + slack + ba.radius < bb.radius) return true;
      if (d - slack + ba.radius >= bb.radius) return false;
    }
    return false;
  };
  return si;
}

CrealAccess creal_access(const World& registry_world) {
  if (!registry_world.registry)
    throw std::invalid_argument("not a registry world");
  auto st = registry_world.registry;
  CrealAccess c;
  c.approx = [st](const Nat& slot, std::uint64_t k) { return slot_value_approx(st, slot, k); };
  c.embed_slot = [](const mpq_class& q) { return rational_slot(q); };
  return c;
}

CrealAccess forced_creal_access(const World& registry_world) {
  if (!registry_world.registry)
    throw std::invalid_argument("not a registry world");
  auto st = registry_world.registry;
  CrealAccess c;
  c.approx = [st](const Nat& slot, std::uint64_t k) -> mpq_class {
    auto [tag, payload] = slot_parts(slot);
    if (tag == kTagDivergent) return mpq_class(0);
    return slot_value_approx(st, slot, k);
  };
  c.embed_slot = [](const mpq_class& q) { return rational_slot(q); };
  return c;
}

MetricWorld forced_registry_metric(const World& registry_world) {
  if (!registry_world.metric || !registry_world.registry)
    throw std::invalid_argument("not a registry world");
  MetricWorld m = *registry_world.metric;
  auto approx = forced_creal_access(registry_world).approx;
  m.distance_approx = [approx](const Nat& a, const Nat& b, std::uint64_t k) {
    return mpq_class(abs(approx(a, k + 1) - approx(b, k + 1)));
  };
  return m;
}

NumberedSubbasis rational_balls_over(const World& registry_world) {
  if (!registry_world.registry)
    throw std::invalid_argument("not a registry world");
  auto st = registry_world.registry;
  NumberedSubbasis sb;
  sb.numbering.id = "rational-balls";
  sb.numbering.domain_check = [](const Nat& code, Fuel fuel) {
    return bounded_semi(fuel, [&]() -> SemiResult {
      charge_poll();
      if (!code.is_spiky() && decode_ball(code).radius > 0) return SemiResult::Accept;
      burn_forever();
    });
  };
  sb.numbering.domain_oracle = [](const Nat& code) {
    return !code.is_spiky() && decode_ball(code).radius > 0;
  };
  sb.member_test = [st](const PointWitness& p, const Nat& code) {
    if (code.is_spiky()) return Tri::Out;
    Ball b = decode_ball(code);
    if (!(b.radius > 0)) return Tri::Out;
    mpq_class c = rational_value(b.center_code);
    if (p.is_rational()) return abs(p.rational() - c) < b.radius ? Tri::In : Tri::Out;
    auto [ptag, ppay] = slot_parts(p.code());
    if (ptag == kTagRational)
      return abs(rational_value(ppay) - c) < b.radius ? Tri::In : Tri::Out;
    if (ptag != kTagNamed || !(ppay < Nat(3) && st->named_enabled(ppay.to_ulong())))
      return Tri::Unknown;
    for (std::uint64_t k = 2; k <= 64; ++k) {
      mpq_class d = abs(st->named_approx(ppay.to_ulong(), k) - c);
      mpq_class slack = pow2q(-static_cast<long>(k));
      if (d + slack < b.radius) return Tri::In;
      if (d - slack >= b.radius) return Tri::Out;
    }
    return Tri::Unknown;
  };
  return sb;
}

// --- samples --------------------------------------------------------------------

std::vector<PointWitness> sample_rational_points(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-64, 64);
  std::uniform_int_distribution<long> den(1, 32);
  std::vector<PointWitness> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    out.push_back(rational_point(q));
  }
  return out;
}

std::vector<Nat> sample_ball_codes(const World& w, std::size_t count, std::uint64_t seed) {
  if (!w.point_code || !w.metric)
    throw std::invalid_argument("world has no rational ball coding");
  const bool kspace = w.id == "K-space";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-48, 48);
  std::uniform_int_distribution<long> den(1, 16);
  std::uniform_int_distribution<long> rnum(1, 5);
  std::uniform_int_distribution<long> rexp(kspace ? 3 : 0, kspace ? 8 : 6);
  std::uniform_int_distribution<long> anchor(0, 3);

  std::vector<Nat> out;
  out.reserve(count);
  while (out.size() < count) {
    mpq_class c;
    if (kspace) {
      // centers near small even integers, whose intervals resolve early
      c = mpq_class(2 * anchor(rng)) + mpq_class(num(rng), 256);
    } else {
      c = mpq_class(num(rng), den(rng));
    }
    c.canonicalize();
    mpq_class r = mpq_class(rnum(rng)) / pow2q(rexp(rng));
    out.push_back(ball_code(w.point_code(c), r));
    if (out.size() < count && (rng() & 1)) {
      // companion the first ball strictly includes into: shifted center,
      // comfortably larger radius (d + r = 5r/4 < 2r)
      mpq_class c2 = c + r / 4;
      mpq_class r2 = 2 * r;
      out.push_back(ball_code(w.point_code(c2), r2));
    }
  }
  return out;
}

AdapterCheckSample rational_to_creal_sample(const World& registry_world, std::size_t n,
                                            std::uint64_t seed) {
  if (!registry_world.registry)
    throw std::invalid_argument("not a registry world");
  auto st = registry_world.registry;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 12);
  std::uniform_int_distribution<int> len(1, 4);

  AdapterCheckSample s;
  for (std::size_t j = 0; j < n; ++j) {
    mpq_class x(num(rng), den(rng));
    x.canonicalize();
    int L = len(rng);
    std::vector<Nat> seq;
    for (int t = 0; t < L; ++t)
      seq.push_back(ball_code(rational_code(trunc4(x, t)), pow2q(1 - 2 * t)));
    s.source_seqs.push_back(std::move(seq));
    s.points.push_back(rational_point(x));
    mpq_class off(rng() & 1 ? 1 : -1, 8);
    s.targets.emplace_back(rational_point(x),
                           ball_code(rational_slot(x + off), mpq_class(1, 2)));
  }
  if (st->named_enabled(0)) {
    s.points.push_back(coded_point("pi", pair(Nat(1), Nat(0))));
    mpq_class near_pi = st->named_approx(0, 20);
    s.points.push_back(rational_point(near_pi));
    s.targets.emplace_back(rational_point(near_pi),
                           ball_code(pair(Nat(1), Nat(0)), mpq_class(1, 64)));
  }

  s.witness_seq = [st](const PointWitness& x, const Nat& d) -> std::vector<Nat> {
    if (!x.is_rational() || d.is_spiky()) return {};
    Ball bd = decode_ball(d);
    auto [tag, payload] = slot_parts(bd.center_code);
    mpq_class cv;
    if (tag == kTagRational)
      cv = rational_value(payload);
    else if (tag == kTagNamed && payload < Nat(3) && st->named_enabled(payload.to_ulong()))
      cv = st->named_approx(payload.to_ulong(), 24);
    else
      return {};
    mpq_class gap = bd.radius - (abs(x.rational() - cv) + pow2q(-24));
    if (!(gap > 0)) return {};
    return {ball_code(rational_code(x.rational()), gap / 4)};
  };
  s.refinements = [](const PointWitness& x,
                     const std::vector<Nat>& wit) -> std::vector<std::vector<Nat>> {
    std::vector<std::vector<Nat>> out;
    if (!x.is_rational() || wit.empty() || wit[0].is_spiky()) return out;
    Ball bw = decode_ball(wit[0]);
    for (int L = 1; L <= 3; ++L) {
      std::vector<Nat> seq;
      for (int t = 1; t <= L; ++t)
        seq.push_back(ball_code(rational_code(x.rational()), bw.radius * pow2q(-t)));
      out.push_back(std::move(seq));
    }
    return out;
  };
  return s;
}

AdapterCheckSample creal_to_rational_sample(const World& registry_world, std::size_t n,
                                            std::uint64_t seed) {
  if (!registry_world.registry)
    throw std::invalid_argument("not a registry world");
  auto st = registry_world.registry;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 12);
  std::uniform_int_distribution<int> len(1, 4);

  AdapterCheckSample s;
  for (std::size_t j = 0; j < n; ++j) {
    mpq_class x(num(rng), den(rng));
    x.canonicalize();
    int L = len(rng);
    std::vector<Nat> seq;
    for (int t = 0; t < L; ++t)
      seq.push_back(ball_code(rational_slot(x), pow2q(-t)));
    s.source_seqs.push_back(std::move(seq));
    s.points.push_back(rational_point(x));
    mpq_class off(rng() & 1 ? 1 : -1, 8);
    s.targets.emplace_back(rational_point(x),
                           ball_code(rational_code(x + off), mpq_class(1, 2)));
  }
  for (unsigned long idx = 0; idx < 3; ++idx) {
    if (!st->named_enabled(idx)) continue;
    const char* label = idx == 0 ? "pi" : idx == 1 ? "e" : "sqrt2";
    PointWitness p = coded_point(label, pair(Nat(1), Nat(idx)));
    std::vector<Nat> seq;
    for (int t = 0; t < 3; ++t)
      seq.push_back(ball_code(pair(Nat(1), Nat(idx)), pow2q(-t)));
    s.source_seqs.push_back(std::move(seq));
    s.points.push_back(p);
    // rational target ball around the constant, off-center but roomy
    mpq_class c = st->named_approx(idx, 10) + mpq_class(1, 128);
    s.targets.emplace_back(p, ball_code(rational_code(c), mpq_class(1, 16)));
  }

  s.witness_seq = [st](const PointWitness& x, const Nat& d) -> std::vector<Nat> {
    if (d.is_spiky()) return {};
    Ball bd = decode_ball(d);
    mpq_class cd = rational_value(bd.center_code);
    Nat slot = x.is_rational() ? rational_slot(x.rational()) : x.code();
    auto [tag, payload] = slot_parts(slot);
    mpq_class xv;
    if (tag == kTagRational)
      xv = rational_value(payload);
    else if (tag == kTagNamed && payload < Nat(3) && st->named_enabled(payload.to_ulong()))
      xv = st->named_approx(payload.to_ulong(), 24);
    else
      return {};
    mpq_class gap = bd.radius - (abs(xv - cd) + pow2q(-24));
    if (!(gap > 0)) return {};
    return {ball_code(slot, gap / 4)};
  };
  s.refinements = [](const PointWitness& x,
                     const std::vector<Nat>& wit) -> std::vector<std::vector<Nat>> {
    (void)x;
    std::vector<std::vector<Nat>> out;
    if (wit.empty() || wit[0].is_spiky()) return out;
    Ball bw = decode_ball(wit[0]);
    for (int L = 1; L <= 3; ++L) {
      std::vector<Nat> seq;
      for (int t = 1; t <= L; ++t)
        seq.push_back(ball_code(bw.center_code, bw.radius * pow2q(-t)));
      out.push_back(std::move(seq));
    }
    return out;
  };
  return s;
}

}  // namespace respace
