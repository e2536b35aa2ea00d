#pragma once

// Core code-space arithmetic and the demand-driven name machinery everything
// else builds on: arbitrary-precision naturals with an exact sparse form for
// huge powers of two, the Cantor pairing bijection, bit-set coding of finite
// sets, fuel-metered step accounting, and lazy memoized infinite sequences.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace respace {

// Resource errors share a base so bounded drivers can treat "ran out of fuel"
// and "ran out of input" uniformly (both mean: cannot continue, no verdict).
class Exhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FuelExhausted : public Exhausted {
 public:
  using Exhausted::Exhausted;
};

// Thrown by finite name backings when a generator reads past the end.
class NameExhausted : public Exhausted {
 public:
  using Exhausted::Exhausted;
};

// Thrown when a value cannot be materialized or transformed at its size
// (e.g. arithmetic on a sparse power sum, or printing 10^9 digits).
class NatOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense values are capped at 2^21 bits; set bits at or above this index are
// stored as explicit exponents. Chosen so every frozen example value and every
// exhaustive test range stays dense while singleton Δ-codes of deep metric
// balls (2^ballcode with ballcode ~ 1e35) remain representable.
inline constexpr unsigned long kSpikeThresholdBits = 1ul << 21;

// Widest decimal rendering emitted on a name line before falling back to the
// exact power-sum form.
inline constexpr std::size_t kMaxDecimalDigits = 10000;

// Natural number with exact support for sparse sums of huge powers of two.
//
// Canonical form: value = dense + sum of 2^e over spikes, where dense has
// fewer than kSpikeThresholdBits bits and spikes are strictly increasing
// exponents, each >= kSpikeThresholdBits. Equality and ordering are exact
// across all forms. Ring arithmetic is only defined on dense values; the
// pipelines never need it elsewhere, and NatOverflow guards the boundary.
class Nat {
 public:
  Nat() = default;
  Nat(unsigned long v) : dense_(v) {}  // NOLINT: implicit on purpose, code literals abound
  Nat(const mpz_class& z);
  explicit Nat(mpz_class&& z);

  static Nat from_decimal(const std::string& s);
  static Nat power_of_two(const Nat& exponent);
  // Parses either a decimal literal or the power-sum form "2^a+2^b+...+d".
  static Nat from_line(const std::string& line);

  bool is_spiky() const { return !spikes_.empty(); }
  bool is_zero() const { return spikes_.empty() && dense_ == 0; }

  // Full dense value; throws NatOverflow when spikes are present.
  const mpz_class& dense() const;
  unsigned long to_ulong() const;

  std::string to_decimal() const;  // throws NatOverflow when not materializable
  std::string to_line() const;     // decimal or power-sum form; throws when neither fits
  std::string display() const;     // best-effort rendering for diagnostics, never throws

  friend bool operator==(const Nat& a, const Nat& b);
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b);

  // Dense-only ring operations (pairing arithmetic). NatOverflow on sparse input.
  friend Nat operator+(const Nat& a, const Nat& b);
  friend Nat operator-(const Nat& a, const Nat& b);  // requires a >= b
  friend Nat operator*(const Nat& a, const Nat& b);

  friend Nat finset_encode(const std::vector<Nat>& elements);
  friend std::vector<Nat> finset_decode(const Nat& n);

 private:
  mpz_class dense_ = 0;
  std::vector<mpz_class> spikes_;  // ascending, distinct, each >= threshold

  void normalize();
};

// Cantor pairing <n,m> = (n+m)(n+m+1)/2 + m and its inverse. Bijective ℕ²↔ℕ.
Nat pair(const Nat& n, const Nat& m);
std::pair<Nat, Nat> unpair(const Nat& c);

// Bit-set coding of finite sets of naturals: code n denotes the set of
// positions of 1-bits of n. finset_encode takes set semantics (duplicates
// collapse); finset_decode returns elements in ascending order.
Nat finset_encode(const std::vector<Nat>& elements);
std::vector<Nat> finset_decode(const Nat& n);

// --- fuel ------------------------------------------------------------------

// Abstract step budget. One step per name-cell read, one per semi-decision
// poll; nothing else is charged.
struct Fuel {
  std::uint64_t steps = 0;
};

enum class SemiResult { Accept, NotYet };

class FuelMeter {
 public:
  explicit FuelMeter(std::uint64_t budget) : remaining_(budget) {}

  void charge(std::uint64_t n = 1);
  std::uint64_t remaining() const { return remaining_; }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t remaining_;
  std::uint64_t used_ = 0;
};

// Installs a meter as the current thread's step counter for the duration of a
// scope. Reads and polls performed anywhere below the scope charge it; nested
// scopes shadow the outer one (a sub-procedure runs on its own slice and the
// caller accounts for it as a single poll).
class FuelScope {
 public:
  explicit FuelScope(FuelMeter& meter);
  ~FuelScope();

  FuelScope(const FuelScope&) = delete;
  FuelScope& operator=(const FuelScope&) = delete;

  static FuelMeter* current();

 private:
  FuelMeter* previous_;
};

void charge_read(std::uint64_t n = 1);
void charge_poll(std::uint64_t n = 1);

// Runs a semi-decision body under its own meter. Exhaustion (fuel or input)
// is the NotYet outcome; NotYet carries no information by design.
template <typename Body>
SemiResult bounded_semi(Fuel fuel, Body&& body) {
  FuelMeter meter(fuel.steps);
  FuelScope scope(meter);
  try {
    return std::forward<Body>(body)();
  } catch (const Exhausted&) {
    return SemiResult::NotYet;
  }
}

// --- names -----------------------------------------------------------------

// Demand-driven infinite sequence of naturals. Evaluated positions are
// memoized so that rereading a cell is cheap and fuel accounting stays
// deterministic: every at() charges one read, memoized or not. A Name is
// single-consumer during evaluation; distinct names may be evaluated from
// different threads.
class Name {
 public:
  explicit Name(std::function<Nat(std::uint64_t)> gen);

  Nat at(std::uint64_t i) const;
  std::vector<Nat> prefix(std::uint64_t count) const;

 private:
  struct State {
    std::function<Nat(std::uint64_t)> gen;
    std::map<std::uint64_t, Nat> memo;
    std::mutex mu;
  };
  std::shared_ptr<State> state_;
};

Name name_from_function(std::function<Nat(std::uint64_t)> gen);
Name constant_name(Nat value);
// Finite backing: reads past the end throw NameExhausted.
Name finite_name(std::vector<Nat> values);

}  // namespace respace
