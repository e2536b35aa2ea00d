#include "respace/kernel.hpp"

#include <algorithm>
#include <cstddef>

namespace respace {

namespace {

constexpr mp_bitcnt_t kNoBit = ~static_cast<mp_bitcnt_t>(0);

std::size_t bit_length(const mpz_class& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

// Inserts an exponent into an ascending spike list, resolving 2^e + 2^e = 2^(e+1).
void insert_spike(std::vector<mpz_class>& spikes, mpz_class e) {
  for (;;) {
    auto it = std::lower_bound(spikes.begin(), spikes.end(), e);
    if (it == spikes.end() || *it != e) {
      spikes.insert(it, e);
      return;
    }
    spikes.erase(it);
    e += 1;
  }
}

}  // namespace

Nat::Nat(const mpz_class& z) : dense_(z) {
  if (z < 0) throw NatOverflow("Nat: negative value");
  normalize();
}

Nat::Nat(mpz_class&& z) : dense_(std::move(z)) {
  if (dense_ < 0) throw NatOverflow("Nat: negative value");
  normalize();
}

void Nat::normalize() {
  if (bit_length(dense_) <= kSpikeThresholdBits) return;
  mpz_class high = dense_ >> kSpikeThresholdBits;
  dense_ -= high << kSpikeThresholdBits;
  for (mp_bitcnt_t pos = mpz_scan1(high.get_mpz_t(), 0); pos != kNoBit;
       pos = mpz_scan1(high.get_mpz_t(), pos + 1)) {
    insert_spike(spikes_, mpz_class(kSpikeThresholdBits) + static_cast<unsigned long>(pos));
  }
}

Nat Nat::from_decimal(const std::string& s) {
  mpz_class z;
  if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0 || z < 0)
    throw std::invalid_argument("Nat::from_decimal: not a decimal natural: " + s);
  return Nat(std::move(z));
}

Nat Nat::power_of_two(const Nat& exponent) {
  if (exponent.is_spiky())
    throw NatOverflow("Nat::power_of_two: exponent too large to represent");
  Nat out;
  if (exponent.dense_ < kSpikeThresholdBits) {
    mpz_setbit(out.dense_.get_mpz_t(), exponent.to_ulong());
  } else {
    out.spikes_.push_back(exponent.dense_);
  }
  return out;
}

Nat Nat::from_line(const std::string& line) {
  if (line.find('^') == std::string::npos) return from_decimal(line);
  Nat acc;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t next = line.find('+', pos);
    std::string term = line.substr(pos, next == std::string::npos ? next : next - pos);
    if (term.rfind("2^", 0) == 0) {
      Nat p = power_of_two(from_decimal(term.substr(2)));
      // Merge without ring arithmetic so spikes are allowed.
      if (p.is_spiky()) {
        insert_spike(acc.spikes_, p.spikes_.front());
      } else {
        acc.dense_ += p.dense_;
        acc.normalize();
      }
    } else {
      acc.dense_ += from_decimal(term).dense();
      acc.normalize();
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return acc;
}

const mpz_class& Nat::dense() const {
  if (is_spiky())
    throw NatOverflow("Nat: value too large to materialize densely");
  return dense_;
}

unsigned long Nat::to_ulong() const {
  if (is_spiky() || !dense_.fits_ulong_p())
    throw NatOverflow("Nat: value does not fit a machine word");
  return dense_.get_ui();
}

std::string Nat::to_decimal() const {
  if (is_spiky())
    throw NatOverflow("Nat: decimal rendering infeasible at this size");
  return dense_.get_str();
}

std::string Nat::to_line() const {
  if (!is_spiky() && mpz_sizeinbase(dense_.get_mpz_t(), 10) <= kMaxDecimalDigits)
    return dense_.get_str();
  // Exact power-sum fallback; only compact when few bits are set.
  std::vector<mpz_class> exponents;
  for (mp_bitcnt_t pos = mpz_scan1(dense_.get_mpz_t(), 0); pos != kNoBit;
       pos = mpz_scan1(dense_.get_mpz_t(), pos + 1)) {
    exponents.emplace_back(static_cast<unsigned long>(pos));
  }
  for (const auto& e : spikes_) exponents.push_back(e);
  if (exponents.empty()) return dense_.get_str();
  if (exponents.size() > 64)
    throw NatOverflow("Nat: no feasible line rendering at this size");
  std::string out;
  for (auto it = exponents.rbegin(); it != exponents.rend(); ++it) {
    if (!out.empty()) out += "+";
    out += "2^" + it->get_str();
  }
  return out;
}

std::string Nat::display() const {
  try {
    return to_line();
  } catch (const NatOverflow&) {
    return "~2^" + mpz_class(static_cast<unsigned long>(bit_length(dense_))).get_str();
  }
}

bool operator==(const Nat& a, const Nat& b) {
  return a.spikes_ == b.spikes_ && a.dense_ == b.dense_;
}

std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
  // Spikes dominate: every spike exceeds any dense part, so compare the
  // descending exponent lists lexicographically first.
  auto ia = a.spikes_.rbegin(), ib = b.spikes_.rbegin();
  for (; ia != a.spikes_.rend() && ib != b.spikes_.rend(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ia != a.spikes_.rend()) return std::strong_ordering::greater;
  if (ib != b.spikes_.rend()) return std::strong_ordering::less;
  int c = cmp(a.dense_, b.dense_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Nat operator+(const Nat& a, const Nat& b) {
  if (a.is_spiky() || b.is_spiky())
    throw NatOverflow("Nat: ring arithmetic on sparse value");
  return Nat(mpz_class(a.dense_ + b.dense_));
}

Nat operator-(const Nat& a, const Nat& b) {
  if (a.is_spiky() || b.is_spiky())
    throw NatOverflow("Nat: ring arithmetic on sparse value");
  if (a.dense_ < b.dense_) throw NatOverflow("Nat: subtraction underflow");
  return Nat(mpz_class(a.dense_ - b.dense_));
}

Nat operator*(const Nat& a, const Nat& b) {
  if (a.is_spiky() || b.is_spiky())
    throw NatOverflow("Nat: ring arithmetic on sparse value");
  return Nat(mpz_class(a.dense_ * b.dense_));
}

Nat pair(const Nat& n, const Nat& m) {
  const mpz_class& a = n.dense();
  const mpz_class& b = m.dense();
  mpz_class s = a + b;
  return Nat(mpz_class(s * (s + 1) / 2 + b));
}

std::pair<Nat, Nat> unpair(const Nat& c) {
  const mpz_class& z = c.dense();
  // w = floor((sqrt(8c+1) - 1) / 2), the diagonal index.
  mpz_class root;
  mpz_class tmp = 8 * z + 1;
  mpz_sqrt(root.get_mpz_t(), tmp.get_mpz_t());
  mpz_class w = (root - 1) / 2;
  mpz_class t = w * (w + 1) / 2;
  mpz_class m = z - t;
  mpz_class n = w - m;
  return {Nat(std::move(n)), Nat(std::move(m))};
}

Nat finset_encode(const std::vector<Nat>& elements) {
  Nat out;
  std::vector<Nat> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const Nat& e : sorted) {
    if (e.is_spiky())
      throw NatOverflow("finset_encode: element too large to serve as a bit index");
    if (e.dense_ < kSpikeThresholdBits) {
      mpz_setbit(out.dense_.get_mpz_t(), e.to_ulong());
    } else {
      out.spikes_.push_back(e.dense_);  // sorted input keeps spikes ascending
    }
  }
  return out;
}

std::vector<Nat> finset_decode(const Nat& n) {
  std::vector<Nat> out;
  for (mp_bitcnt_t pos = mpz_scan1(n.dense_.get_mpz_t(), 0); pos != kNoBit;
       pos = mpz_scan1(n.dense_.get_mpz_t(), pos + 1)) {
    out.emplace_back(static_cast<unsigned long>(pos));
  }
  for (const auto& e : n.spikes_) out.push_back(Nat(e));
  return out;
}

// --- fuel --------------------------------------------------------------------

void FuelMeter::charge(std::uint64_t n) {
  if (remaining_ < n) {
    used_ += remaining_;
    remaining_ = 0;
    throw FuelExhausted("fuel exhausted");
  }
  remaining_ -= n;
  used_ += n;
}

namespace {
thread_local FuelMeter* g_current_meter = nullptr;
}

FuelScope::FuelScope(FuelMeter& meter) : previous_(g_current_meter) {
  g_current_meter = &meter;
}

FuelScope::~FuelScope() { g_current_meter = previous_; }

FuelMeter* FuelScope::current() { return g_current_meter; }

void charge_read(std::uint64_t n) {
  if (g_current_meter != nullptr) g_current_meter->charge(n);
}

void charge_poll(std::uint64_t n) {
  if (g_current_meter != nullptr) g_current_meter->charge(n);
}

// --- names -------------------------------------------------------------------

Name::Name(std::function<Nat(std::uint64_t)> gen) : state_(std::make_shared<State>()) {
  state_->gen = std::move(gen);
}

Nat Name::at(std::uint64_t i) const {
  charge_read();
  std::lock_guard<std::mutex> lock(state_->mu);
  auto it = state_->memo.find(i);
  if (it != state_->memo.end()) return it->second;
  Nat value = state_->gen(i);
  return state_->memo.emplace(i, std::move(value)).first->second;
}

std::vector<Nat> Name::prefix(std::uint64_t count) const {
  std::vector<Nat> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(at(i));
  return out;
}

Name name_from_function(std::function<Nat(std::uint64_t)> gen) {
  return Name(std::move(gen));
}

Name constant_name(Nat value) {
  return Name([v = std::move(value)](std::uint64_t) { return v; });
}

Name finite_name(std::vector<Nat> values) {
  return Name([vals = std::move(values)](std::uint64_t i) {
    if (i >= vals.size()) throw NameExhausted("name prefix exhausted");
    return vals[i];
  });
}

}  // namespace respace
