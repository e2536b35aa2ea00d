// Command-line front end over the representation toolkit: translate names
// between representations, generate names for sample points, probe prefixes
// for consistency, monitor basic-open membership, and run the sampled axiom
// and adapter checks.
//
// Exit codes: 0 success, 1 a check reported violations, 2 usage errors and
// refused capabilities, 3 fuel or input ran out before the requested output
// completed (whatever was produced has been flushed).

#include <cstdint>
#include <exception>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "respace/basis.hpp"
#include "respace/equivalence.hpp"
#include "respace/kernel.hpp"
#include "respace/metric.hpp"
#include "respace/repr.hpp"
#include "respace/worlds.hpp"

namespace {

using namespace respace;

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kUsage = 2;
constexpr int kExhaustion = 3;

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Lazy name over stdin lines; blank lines are skipped. Reading past the end
// of input raises NameExhausted, which the top level maps to exit 3.
Name stdin_name(std::shared_ptr<std::uint64_t> watermark) {
  auto lines = std::make_shared<std::vector<Nat>>();
  return name_from_function([lines, watermark](std::uint64_t i) {
    while (lines->size() <= i) {
      std::string line;
      if (!std::getline(std::cin, line)) throw NameExhausted("name input ended");
      line = strip(line);
      if (line.empty()) continue;
      lines->push_back(Nat::from_line(line));
    }
    if (watermark && i + 1 > *watermark) *watermark = i + 1;
    return (*lines)[i];
  });
}

std::vector<Nat> read_prefix_lines(std::uint64_t cap) {
  std::vector<Nat> out;
  std::string line;
  while (out.size() < cap && std::getline(std::cin, line)) {
    std::string t = strip(line);
    if (!t.empty()) out.push_back(Nat::from_line(t));
  }
  return out;
}

mpq_class parse_rational_arg(const std::string& s) {
  mpq_class q;
  try {
    q = mpq_class(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational literal: " + s);
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// "B(center,radius)" with rational components; whitespace is ignored.
std::pair<mpq_class, mpq_class> parse_ball_literal(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '\t') t.push_back(c);
  if (t.size() < 6 || t.rfind("B(", 0) != 0 || t.back() != ')')
    throw std::invalid_argument("expected B(center,radius): " + s);
  std::string inner = t.substr(2, t.size() - 3);
  std::size_t comma = inner.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected B(center,radius): " + s);
  return {parse_rational_arg(inner.substr(0, comma)),
          parse_rational_arg(inner.substr(comma + 1))};
}

int run_translate(const World& w, const std::string& src, const std::string& dst,
                  std::uint64_t fuel, std::uint64_t prefix, bool verbose) {
  auto watermark = std::make_shared<std::uint64_t>(0);
  Name in = stdin_name(watermark);

  Name out = [&]() -> Name {
    if (src == "cauchy" && dst == "min") return cauchy_to_min(in);
    if (src == "cauchy" && dst == "si") return cauchy_to_si(in);
    if (src == "si" && dst == "cauchy") return si_to_cauchy(in);
    if (src == "max" && dst == "cauchy") return max_to_cauchy(in);
    if (src == "max" && dst == "si") {
      auto from = make_representation(RepresentationKind::Max(), w.subbasis);
      auto to = make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);
      return id_translation(from, to).transform(in);
    }
    if (src == "si" && dst == "min") {
      auto from = make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);
      auto to = make_representation(RepresentationKind::Min(), induced_subbasis(w.subbasis));
      return id_translation(from, to).transform(in);
    }
    if (src == "max" && dst == "min") {
      auto from = make_representation(RepresentationKind::Max(), w.subbasis);
      auto to = make_representation(RepresentationKind::Min(), w.subbasis);
      return id_translation(from, to).transform(in);
    }
    throw std::invalid_argument("no realizer for " + src + " -> " + dst);
  }();

  FuelMeter meter(fuel);
  FuelScope scope(meter);
  for (std::uint64_t n = 0; n < prefix; ++n) {
    std::cout << out.at(n).to_line() << std::endl;
    if (verbose)
      std::cerr << "# cell " << n << ": " << *watermark << " input cells read, fuel used "
                << meter.used() << "\n";
  }
  return kOk;
}

int run_gen_name(const World& w, const std::string& point_str, const std::string& kind,
                 std::uint64_t fuel, std::uint64_t prefix) {
  PointWitness p = w.parse_point ? w.parse_point(point_str)
                                 : throw std::invalid_argument("world cannot parse points");
  Name out = [&]() -> Name {
    if (kind == "cauchy") {
      if (!w.cauchy_name) throw std::invalid_argument(w.id + " emits no cauchy names");
      return w.cauchy_name(p);
    }
    if (kind == "si") {
      if (!w.si_name) throw std::invalid_argument(w.id + " emits no strong-basis names");
      return w.si_name(p);
    }
    if (kind == "min") {
      if (!w.min_name) throw std::invalid_argument(w.id + " emits no min names");
      return w.min_name(p);
    }
    if (kind == "max") return enumerate_max_name(w, p);
    throw std::invalid_argument("unknown name kind: " + kind);
  }();

  FuelMeter meter(fuel);
  FuelScope scope(meter);
  for (std::uint64_t n = 0; n < prefix; ++n) std::cout << out.at(n).to_line() << std::endl;
  return kOk;
}

int run_probe(const World& w, const std::string& family, const std::string& point_str,
              std::uint64_t fuel, std::uint64_t prefix) {
  std::vector<Nat> lines = read_prefix_lines(prefix);
  PrefixCheck result;
  if (family == "cauchy") {
    if (!w.metric) throw std::invalid_argument(w.id + " has no metric structure");
    result = validate_cauchy_prefix(lines, *w.metric, Fuel{fuel});
  } else {
    ReprFamily fam = family == "min"   ? ReprFamily::Min
                     : family == "max" ? ReprFamily::Max
                     : family == "si"
                         ? ReprFamily::SI
                         : throw std::invalid_argument("unknown name kind: " + family);
    if (point_str.empty())
      throw std::invalid_argument("--point is required for the " + family + " family");
    result = validate_prefix(fam, w.subbasis, lines, w.parse_point(point_str), Fuel{fuel});
  }
  switch (result) {
    case PrefixCheck::ConsistentSoFar:
      std::cout << "CONSISTENT-SO-FAR\n";
      return kOk;
    case PrefixCheck::Violation:
      std::cout << "VIOLATION\n";
      return kViolations;
    case PrefixCheck::Unknown:
      std::cout << "UNKNOWN\n";
      return kOk;
  }
  return kOk;
}

int run_member(const World& w, const std::string& target, std::uint64_t fuel) {
  Nat target_code = [&]() {
    if (target.rfind("B(", 0) == 0) {
      if (!w.point_code)
        throw std::invalid_argument(w.id + " has no rational ball coding");
      auto [center, radius] = parse_ball_literal(target);
      return ball_code(w.point_code(center), radius);
    }
    return Nat::from_line(target);
  }();

  auto rep = make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);
  MembershipMonitor monitor = member_monitor(rep, target_code);
  Name name = stdin_name(nullptr);
  SemiResult r = monitor.poll(name, Fuel{fuel});
  if (r == SemiResult::Accept) {
    std::cout << "ACCEPT fuel=" << monitor.last_fuel_used() << "\n";
    return kOk;
  }
  std::cout << "NOT-YET fuel=" << monitor.last_fuel_used() << "\n";
  return kExhaustion;
}

int run_check_axioms(const World& w, const std::string& relation, std::size_t codes_n,
                     std::size_t points_n, std::size_t pairs, std::size_t triples,
                     std::uint64_t seed, std::size_t extended) {
  StrongInclusion si;
  if (relation == "strict") {
    if (!w.metric) throw std::invalid_argument("strict inclusion needs a metric world");
    si = w.canonical_si;
  } else if (relation == "nonstrict") {
    if (!w.metric || !w.metric->exact_distance)
      throw std::invalid_argument("non-strict inclusion needs an exact-distance world");
    si = strong_incl_metric(*w.metric, false);
  } else if (relation == "equality") {
    si = equality_strong_inclusion();
  } else {
    throw std::invalid_argument("unknown relation: " + relation);
  }

  std::vector<Nat> codes;
  std::vector<PointWitness> points;
  if (w.metric) {
    codes = sample_ball_codes(w, codes_n, seed);
    // Ball centers from an independent draw double as in-space sample points.
    for (const Nat& code : sample_ball_codes(w, points_n, seed + 1)) {
      Ball b = decode_ball(code);
      mpq_class v = w.registry ? rational_value(unpair(b.center_code).second)
                               : rational_value(b.center_code);
      points.push_back(rational_point(v));
    }
  } else {
    for (std::size_t i = 0; i < codes_n; ++i) codes.push_back(Nat(i));
    for (std::size_t i = 0; i < points_n; ++i)
      points.push_back(coded_point(std::to_string(i), Nat(i)));
  }

  AxiomSampleOptions opts;
  opts.pairs = pairs;
  opts.triples = triples;
  opts.seed = seed;
  CheckReport report = check_axioms(si, w.subbasis, codes, points, opts);

  if (extended > 0) {
    // Same axioms for the induced relation over finite intersections.
    std::mt19937_64 rng(seed + 2);
    std::uniform_int_distribution<std::size_t> pick(0, codes.size() - 1);
    std::uniform_int_distribution<int> width(0, 3);
    std::vector<Nat> induced;
    induced.reserve(extended);
    for (std::size_t i = 0; i < extended; ++i) {
      std::vector<Nat> subset;
      for (int j = width(rng); j > 0; --j) subset.push_back(codes[pick(rng)]);
      induced.push_back(induced_code(subset));
    }
    AxiomSampleOptions ext_opts = opts;
    ext_opts.seed = seed + 3;
    CheckReport ext = check_axioms(extend_strong_inclusion(si), induced_subbasis(w.subbasis),
                                   induced, points, ext_opts);
    report.violations.insert(report.violations.end(), ext.violations.begin(),
                             ext.violations.end());
    report.skipped += ext.skipped;
  }

  std::cout << report.to_text();
  std::cout << (report.pass() ? "PASS" : "FAIL") << " skipped=" << report.skipped << "\n";
  return report.pass() ? kOk : kViolations;
}

int run_check_adapter(const World& w, std::size_t sample_n, std::uint64_t seed) {
  if (!w.registry)
    throw std::invalid_argument("adapter checks run against an R-registry world");
  RationalCrealAdapters adapters = rational_vs_creal_adapters(creal_access(w));
  World rational = make_rational_real_world();
  NumberedSubbasis rational_sb = rational_balls_over(w);

  CheckReport to_creal =
      check_adapter(adapters.rational_to_creal, w.subbasis, rational_sb, w.canonical_si,
                    rational.canonical_si, rational_to_creal_sample(w, sample_n, seed));
  CheckReport to_rational =
      check_adapter(adapters.creal_to_rational, rational_sb, w.subbasis,
                    rational.canonical_si, w.canonical_si,
                    creal_to_rational_sample(w, sample_n, seed + 1));

  std::cout << to_creal.to_text() << to_rational.to_text();
  bool pass = to_creal.pass() && to_rational.pass();
  std::cout << (pass ? "PASS" : "FAIL")
            << " skipped=" << (to_creal.skipped + to_rational.skipped) << "\n";
  return pass ? kOk : kViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"names of points over numbered subbases: translate, generate, check"};
  app.require_subcommand(1);

  std::string world_spec = "R-rational";
  std::uint64_t fuel = 100000;
  std::uint64_t prefix = 32;
  std::uint64_t seed = 1;

  auto* translate = app.add_subcommand("translate", "translate a name read from stdin");
  std::string src_kind, dst_kind;
  bool verbose = false;
  translate->add_option("--src", src_kind, "input kind: cauchy|min|max|si")->required();
  translate->add_option("--dst", dst_kind, "output kind: cauchy|min|max|si")->required();
  translate->add_option("--world", world_spec, "world spec (default R-rational)");
  translate->add_option("--fuel", fuel, "step budget (default 100000)");
  translate->add_option("--prefix", prefix, "output cells to produce (default 32)");
  translate->add_flag("--verbose", verbose, "log per-cell read watermarks to stderr");

  auto* gen = app.add_subcommand("gen-name", "emit a name prefix for a world point");
  std::string point_str, kind;
  gen->add_option("--world", world_spec, "world spec");
  gen->add_option("--point", point_str, "point literal, world-specific")->required();
  gen->add_option("--kind", kind, "cauchy|min|max|si")->required();
  gen->add_option("--fuel", fuel, "step budget");
  gen->add_option("--prefix", prefix, "cells to emit");

  auto* probe = app.add_subcommand("probe", "validate a name prefix read from stdin");
  std::string family;
  probe->add_option("--world", world_spec, "world spec");
  probe->add_option("--family", family, "cauchy|min|max|si")->required();
  probe->add_option("--point", point_str, "claimed point (non-cauchy families)");
  probe->add_option("--fuel", fuel, "step budget");
  probe->add_option("--prefix", prefix, "max cells to read");

  auto* member = app.add_subcommand("member", "monitor basic-open membership of a name");
  std::string target;
  member->add_option("--world", world_spec, "world spec");
  member->add_option("--target", target, "B(center,radius) or a raw subbasis code")
      ->required();
  member->add_option("--fuel", fuel, "poll budget");

  auto* axioms = app.add_subcommand("check-axioms", "sample the strong-inclusion axioms");
  std::string relation = "strict";
  std::size_t codes_n = 40, points_n = 40, pairs = 400, triples = 400, extended = 0;
  axioms->add_option("--world", world_spec, "world spec");
  axioms->add_option("--relation", relation, "strict|nonstrict|equality");
  axioms->add_option("--codes", codes_n, "sampled subbasis codes");
  axioms->add_option("--points", points_n, "sampled points for refinement");
  axioms->add_option("--pairs", pairs, "refinement pairs to draw");
  axioms->add_option("--triples", triples, "transitivity triples to draw");
  axioms->add_option("--seed", seed, "sample seed");
  axioms->add_option("--extended", extended,
                     "also check this many induced intersection codes");

  auto* adapter = app.add_subcommand("check-adapter",
                                     "check the rational/computable-endpoint adapters");
  std::size_t sample_n = 40;
  adapter->add_option("--world", world_spec, "world spec (must be R-registry)");
  adapter->add_option("--sample", sample_n, "sample size per direction");
  adapter->add_option("--seed", seed, "sample seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    World w = make_world(world_spec);
    if (translate->parsed())
      return run_translate(w, src_kind, dst_kind, fuel, prefix, verbose);
    if (gen->parsed()) return run_gen_name(w, point_str, kind, fuel, prefix);
    if (probe->parsed()) return run_probe(w, family, point_str, fuel, prefix);
    if (member->parsed()) return run_member(w, target, fuel);
    if (axioms->parsed())
      return run_check_axioms(w, relation, codes_n, points_n, pairs, triples, seed, extended);
    if (adapter->parsed()) return run_check_adapter(w, sample_n, seed);
  } catch (const Exhausted& e) {
    std::cerr << "exhausted: " << e.what() << "\n";
    return kExhaustion;
  } catch (const NatOverflow& e) {
    std::cerr << "value not renderable: " << e.what() << "\n";
    return kExhaustion;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
