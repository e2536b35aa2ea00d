// Acceptance harness: one PASS/FAIL line per criterion, exit status equal to
// the number of failed criteria. Bounds, budgets and sample sizes are pinned
// here rather than configurable; every convergence check is exact rational
// arithmetic with the stated 2^(1-n) envelope and no extra tolerance.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "respace/basis.hpp"
#include "respace/equivalence.hpp"
#include "respace/kernel.hpp"
#include "respace/metric.hpp"
#include "respace/repr.hpp"
#include "respace/worlds.hpp"

using namespace respace;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Small-magnitude fixtures keep the blind max-name scan affordable; the
// pipelines themselves are value-agnostic.
std::vector<mpq_class> fixture_points() {
  auto q = [](long n, long d) { return mpq_class(n, d); };
  return {q(0, 1),  q(1, 1),   q(-1, 1),  q(1, 2),  q(-1, 2),  q(1, 3),  q(-1, 3),
          q(1, 4),  q(-1, 4),  q(2, 3),   q(-2, 3), q(3, 4),   q(-3, 4), q(5, 16),
          q(-5, 16), q(1, 8),  q(-1, 8),  q(7, 8),  q(5, 4),   q(1, 16)};
}

// |value(cell n) - x| < 2^(1-n) for n < len, exact. Registry-backed streams
// carry slot codes instead of plain rational codes.
bool converges(const Name& cauchy, const mpq_class& x, std::uint64_t len, bool slot_centers,
               std::string& why) {
  for (std::uint64_t n = 0; n < len; ++n) {
    Nat cell = cauchy.at(n);
    mpq_class v;
    if (slot_centers) {
      auto [tag, payload] = unpair(cell);
      if (!(tag == Nat(0))) {
        why = "cell " + std::to_string(n) + " is not a rational slot";
        return false;
      }
      v = rational_value(payload);
    } else {
      v = rational_value(cell);
    }
    if (!(abs(v - x) < pow2q(1 - static_cast<long>(n)))) {
      why = "cell " + std::to_string(n) + " misses the 2^(1-n) envelope for x=" + x.get_str();
      return false;
    }
  }
  return true;
}

// --- 1: identity-realizer pipelines reconverge -------------------------------

bool positive_chain(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  World w = make_rational_real_world();
  for (const mpq_class& x : fixture_points()) {
    PointWitness p = rational_point(x);
    Name direct = si_to_cauchy(cauchy_to_si(w.cauchy_name(p)));
    if (!converges(direct, x, 16, false, detail)) return false;
    Name blind = si_to_cauchy(cauchy_to_si(max_to_cauchy(enumerate_max_name(w, p))));
    if (!converges(blind, x, 16, false, detail)) return false;
  }
  double secs = seconds_since(t0);
  detail = "20 fixtures, two pipelines, prefix 16, exact 2^(1-n) envelope, " +
           std::to_string(secs) + "s";
  return secs < 10.0;
}

// --- 2: strong-inclusion axioms on base and induced codes --------------------

bool axiom_sweep(std::string& detail) {
  World w = make_rational_real_world();
  std::vector<Nat> codes = sample_ball_codes(w, 120, 11);
  std::vector<PointWitness> points = sample_rational_points(100, 12);
  AxiomSampleOptions opts;
  opts.pairs = 1000;
  opts.triples = 1000;

  StrongInclusion strict = w.canonical_si;
  StrongInclusion nonstrict = strong_incl_metric(*w.metric, false);

  std::mt19937_64 rng(14);
  std::uniform_int_distribution<std::size_t> pick(0, codes.size() - 1);
  std::uniform_int_distribution<int> width(0, 3);
  std::vector<Nat> induced;
  induced.reserve(150);
  for (std::size_t i = 0; i < 150; ++i) {
    std::vector<Nat> subset;
    for (int j = width(rng); j > 0; --j) subset.push_back(codes[pick(rng)]);
    induced.push_back(induced_code(subset));
  }
  NumberedSubbasis isb = induced_subbasis(w.subbasis);

  std::uint64_t violations = 0;
  std::uint64_t seed = 13;
  for (const StrongInclusion& si : {strict, nonstrict}) {
    opts.seed = seed++;
    violations += check_axioms(si, w.subbasis, codes, points, opts).violations.size();
    opts.seed = seed++;
    violations +=
        check_axioms(extend_strong_inclusion(si), isb, induced, points, opts).violations.size();
  }
  detail = "strict and non-strict, base and induced, 1000 pairs/triples each, " +
           std::to_string(violations) + " violations";
  return violations == 0;
}

// --- 3: membership monitor soundness and relative completeness ---------------

bool monitor_soundness(std::string& detail) {
  World w = make_rational_real_world();
  Representation rep =
      make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);

  std::vector<PointWitness> points = sample_rational_points(1000, 21);
  std::vector<Nat> targets = sample_ball_codes(w, 1000, 22);
  std::size_t accepts = 0;
  std::size_t false_accepts = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const mpq_class& x = points[i].rational();
    Ball b = decode_ball(targets[i]);
    bool member = abs(x - rational_value(b.center_code)) < b.radius;
    Name nm = w.si_name(points[i]);
    MembershipMonitor mon = member_monitor(rep, targets[i]);
    if (mon.poll(nm, Fuel{600}) == SemiResult::Accept) {
      ++accepts;
      if (!member) ++false_accepts;
    }
  }

  std::size_t timeouts = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const mpq_class& x = points[i].rational();
    mpq_class r = pow2q(-static_cast<long>(i % 10) - 1);
    mpq_class offset = i % 3 == 0 ? mpq_class(0) : i % 3 == 1 ? mpq_class(r / 4) : mpq_class(-r / 3);
    mpq_class center = x + offset;
    Nat target = ball_code(rational_code(center), r);
    Name nm = w.si_name(points[i]);
    MembershipMonitor mon = member_monitor(rep, target);
    if (mon.poll(nm, Fuel{100000}) != SemiResult::Accept) ++timeouts;
  }

  detail = "1000 pairs at fuel 600: " + std::to_string(accepts) + " accepts, " +
           std::to_string(false_accepts) + " false; 100 true memberships at fuel 100000: " +
           std::to_string(timeouts) + " missed";
  return false_accepts == 0 && timeouts == 0;
}

// --- 4: totalization leaves valid names untouched -----------------------------

bool totalization_transparency(std::string& detail) {
  World w = make_registry_real_world();
  auto [total_numbering, widened] = totalize(w.canonical_si, w.subbasis.numbering);
  NumberedSubbasis total_sb = w.subbasis;
  total_sb.numbering = total_numbering;
  StrongInclusion ext_base = extend_strong_inclusion(w.canonical_si);
  StrongInclusion ext_widened = extend_strong_inclusion(widened);

  std::vector<PointWitness> pts;
  for (const char* s : {"pi", "e", "sqrt2"}) pts.push_back(w.parse_point(s));
  for (PointWitness& p : sample_rational_points(47, 31)) pts.push_back(std::move(p));

  for (const PointWitness& p : pts) {
    Name nm = w.si_name(p);
    std::vector<std::string> lines;
    std::vector<Nat> cells;
    for (std::uint64_t i = 0; i < 8; ++i) {
      lines.push_back(nm.at(i).to_line());
      cells.push_back(Nat::from_line(lines.back()));
      if (!(cells.back() == nm.at(i))) {
        detail = "line round-trip altered a cell for " + p.label;
        return false;
      }
    }
    if (validate_prefix(ReprFamily::SI, w.subbasis, cells, p, Fuel{200000}) !=
        PrefixCheck::ConsistentSoFar) {
      detail = "prefix rejected over the base numbering for " + p.label;
      return false;
    }
    if (validate_prefix(ReprFamily::SI, total_sb, cells, p, Fuel{200000}) !=
        PrefixCheck::ConsistentSoFar) {
      detail = "prefix rejected over the totalized numbering for " + p.label;
      return false;
    }
    for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
      bool base = ext_base.holds(cells[k + 1], cells[k]);
      bool wide = ext_widened.holds(cells[k + 1], cells[k]);
      if (!base || base != wide) {
        detail = "widened relation disagrees on listed codes for " + p.label;
        return false;
      }
    }
    std::vector<std::string> out_direct;
    std::vector<std::string> out_reparsed;
    Name reparsed = finite_name(cells);
    Name direct_cauchy = si_to_cauchy(nm);
    Name reparsed_cauchy = si_to_cauchy(reparsed);
    for (std::uint64_t n = 0; n < 5; ++n) {
      out_direct.push_back(direct_cauchy.at(n).to_line());
      out_reparsed.push_back(reparsed_cauchy.at(n).to_line());
    }
    if (out_direct != out_reparsed) {
      detail = "translation output changed across readings for " + p.label;
      return false;
    }
  }
  detail = "50 names, 8 cells each, both validations consistent, translations byte-identical";
  return true;
}

// --- 5: adapter pair between rational and computable-endpoint balls ----------

bool adapter_equivalence(std::string& detail) {
  World w = make_registry_real_world();
  RationalCrealAdapters adapters = rational_vs_creal_adapters(creal_access(w));
  World rational = make_rational_real_world();
  NumberedSubbasis rational_sb = rational_balls_over(w);

  CheckReport to_creal =
      check_adapter(adapters.rational_to_creal, w.subbasis, rational_sb, w.canonical_si,
                    rational.canonical_si, rational_to_creal_sample(w, 100, 41));
  CheckReport to_rational =
      check_adapter(adapters.creal_to_rational, rational_sb, w.subbasis,
                    rational.canonical_si, w.canonical_si, creal_to_rational_sample(w, 100, 42));
  if (!to_creal.pass() || !to_rational.pass()) {
    detail = "adapter conditions violated: " + std::to_string(to_creal.violations.size()) +
             " toward creal, " + std::to_string(to_rational.violations.size()) + " back";
    return false;
  }

  Translator tr = translation_from_adapter(adapters.rational_to_creal);
  std::vector<mpq_class> fixtures = fixture_points();
  for (std::size_t i = 0; i < 10; ++i) {
    const mpq_class& x = fixtures[i];
    Name translated = tr.transform(rational.si_name(rational_point(x)));
    Name recovered = si_to_cauchy(translated);
    if (!converges(recovered, x, 16, true, detail)) return false;
  }
  detail = "100-sample checks pass both ways, 10 fixtures recovered through the adapter";
  return true;
}

// --- 6: the obstruction and its repair, side by side -------------------------

struct CliRun {
  int exit_code = -1;
  std::size_t lines = 0;
};

CliRun run_pipeline(const std::string& command) {
  CliRun r;
  FILE* p = popen((command + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  std::string acc;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) acc.append(buf, n);
  for (char c : acc)
    if (c == '\n') ++r.lines;
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool constant_name_obstruction(std::string& detail) {
  const std::string cli = RESPACE_CLI_PATH;
  // Plentiful input so that only the translator's own budget can run out.
  CliRun r = run_pipeline(cli +
                          " gen-name --world K-space --point 7 --kind min"
                          " --prefix 120000 --fuel 400000 | " +
                          cli +
                          " translate --src max --dst cauchy --world K-space"
                          " --fuel 100000 --prefix 8");
  if (r.exit_code != 3 || r.lines >= 3) {
    detail = "pipeline exit=" + std::to_string(r.exit_code) +
             " lines=" + std::to_string(r.lines) + ", expected exit 3 with under 3 lines";
    return false;
  }

  World k = make_kspace_world(1000);
  Name si = si_to_cauchy(k.si_name(k.parse_point("7")));
  if (!converges(si, mpq_class(7), 16, false, detail)) return false;
  detail = "constant name stalls at fuel 100000 after " + std::to_string(r.lines) +
           " cells; the strong-basis name of the same point converges";
  return true;
}

// --- 7: kernel codings and fuel monotonicity ----------------------------------

bool kernel_exhaustives(std::string& detail) {
  for (unsigned long n = 0; n < 10000; ++n) {
    auto [a, b] = unpair(Nat(n));
    if (!(pair(a, b) == Nat(n))) {
      detail = "pairing misses code " + std::to_string(n);
      return false;
    }
    if (!(finset_encode(finset_decode(Nat(n))) == Nat(n))) {
      detail = "finite-set coding misses code " + std::to_string(n);
      return false;
    }
  }
  for (unsigned long a = 0; a < 100; ++a)
    for (unsigned long b = 0; b < 100; ++b) {
      auto [x, y] = unpair(pair(Nat(a), Nat(b)));
      if (!(x == Nat(a)) || !(y == Nat(b))) {
        detail = "pairing not injective near (" + std::to_string(a) + "," + std::to_string(b) + ")";
        return false;
      }
    }

  World rat = make_rational_real_world();
  World reg = make_registry_real_world();
  World ks = make_kspace_world(1000);
  Representation rep =
      make_representation(RepresentationKind::SI(rat.canonical_si), rat.subbasis, true);
  StrongInclusion ext = extend_strong_inclusion(rat.canonical_si);

  std::vector<Nat> rat_codes = sample_ball_codes(rat, 60, 71);
  std::vector<Nat> reg_codes = sample_ball_codes(reg, 40, 72);
  std::vector<Nat> ks_codes = sample_ball_codes(ks, 40, 73);
  std::vector<PointWitness> pts = sample_rational_points(60, 74);

  std::mt19937_64 rng(75);
  auto pick = [&rng](const std::vector<Nat>& v) { return v[rng() % v.size()]; };

  std::size_t accepts = 0;
  for (std::size_t trial = 0; trial < 1000; ++trial) {
    Fuel lo{1 + rng() % 1200};
    Fuel hi{2 * lo.steps};
    std::function<SemiResult(Fuel)> procedure;
    switch (trial % 5) {
      case 0: {
        Nat a = pick(rat_codes), b = pick(rat_codes);
        procedure = [&, a, b](Fuel f) { return rat.canonical_si.semi(a, b, f); };
        break;
      }
      case 1: {
        Nat a = induced_code({pick(rat_codes), pick(rat_codes)});
        Nat b = induced_code({pick(rat_codes)});
        procedure = [&, a, b](Fuel f) { return ext.semi(a, b, f); };
        break;
      }
      case 2: {
        Nat a = pick(reg_codes), b = pick(reg_codes);
        procedure = [&, a, b](Fuel f) { return reg.canonical_si.semi(a, b, f); };
        break;
      }
      case 3: {
        Nat a = pick(ks_codes), b = pick(ks_codes);
        procedure = [&, a, b](Fuel f) { return ks.canonical_si.semi(a, b, f); };
        break;
      }
      default: {
        PointWitness p = pts[rng() % pts.size()];
        Nat target = pick(rat_codes);
        Name nm = rat.si_name(p);
        procedure = [&, nm, target](Fuel f) {
          MembershipMonitor mon = member_monitor(rep, target);
          return mon.poll(nm, f);
        };
        break;
      }
    }
    if (procedure(lo) == SemiResult::Accept) {
      ++accepts;
      if (procedure(hi) != SemiResult::Accept) {
        detail = "accept at fuel " + std::to_string(lo.steps) + " lost at " +
                 std::to_string(hi.steps) + " (trial " + std::to_string(trial) + ")";
        return false;
      }
    }
  }
  detail = "codings exhaustive below 10^4; 1000 F-vs-2F trials, " + std::to_string(accepts) +
           " accepts, all preserved";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    bool (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {"name pipelines reconverge on rational fixtures", positive_chain},
      {"strong-inclusion axioms hold on sampled codes", axiom_sweep},
      {"membership monitor is sound and relatively complete", monitor_soundness},
      {"totalization leaves valid names and translations unchanged", totalization_transparency},
      {"rational/computable-endpoint adapters check out", adapter_equivalence},
      {"constant neighborhood name stalls, strong-basis name converges", constant_name_obstruction},
      {"kernel codings round-trip and semi-decisions are fuel-monotone", kernel_exhaustives},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " " << index << " " << c.label << " [" << detail
              << "]" << std::endl;
  }
  return failures;
}
