#include "respace/basis.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace respace {

PointWitness rational_point(const mpq_class& q) {
  mpq_class canon = q;
  canon.canonicalize();
  std::ostringstream label;
  label << canon;
  return PointWitness{label.str(), canon};
}

PointWitness coded_point(std::string label, Nat code) {
  return PointWitness{std::move(label), std::move(code)};
}

StrongInclusion equality_strong_inclusion() {
  StrongInclusion si;
  si.reflexive = true;
  si.holds = [](const Nat& a, const Nat& b) { return a == b; };
  si.semi = [](const Nat& a, const Nat& b, Fuel fuel) {
    return bounded_semi(fuel, [&] {
      charge_poll();
      if (a == b) return SemiResult::Accept;
      for (;;) charge_poll();  // unequal codes are never confirmed below
    });
  };
  return si;
}

Nat induced_code(const std::vector<Nat>& subcodes) { return finset_encode(subcodes); }

NumberedSubbasis induced_subbasis(const NumberedSubbasis& base) {
  NumberedSubbasis out;
  out.numbering.id = "induced(" + base.numbering.id + ")";
  Numbering base_numbering = base.numbering;
  out.numbering.domain_check = [base_numbering](const Nat& code, Fuel fuel) {
    std::vector<Nat> elements = finset_decode(code);
    if (elements.empty()) return SemiResult::Accept;  // code 0: the whole space
    Fuel slice{std::max<std::uint64_t>(1, fuel.steps / elements.size())};
    for (const Nat& e : elements) {
      if (base_numbering.domain_check(e, slice) != SemiResult::Accept)
        return SemiResult::NotYet;
    }
    return SemiResult::Accept;
  };
  if (base_numbering.domain_oracle) {
    out.numbering.domain_oracle = [base_numbering](const Nat& code) {
      for (const Nat& e : finset_decode(code))
        if (!base_numbering.domain_oracle(e)) return false;
      return true;
    };
  }
  auto base_member = base.member_test;
  out.member_test = [base_member](const PointWitness& p, const Nat& code) {
    bool unknown = false;
    for (const Nat& e : finset_decode(code)) {
      switch (base_member(p, e)) {
        case Tri::Out: return Tri::Out;
        case Tri::Unknown: unknown = true; break;
        case Tri::In: break;
      }
    }
    return unknown ? Tri::Unknown : Tri::In;
  };
  return out;
}

StrongInclusion extend_strong_inclusion(const StrongInclusion& si) {
  StrongInclusion out;
  out.reflexive = si.reflexive;
  auto holds = si.holds;
  out.holds = [holds](const Nat& n1, const Nat& n2) {
    std::vector<Nat> coarse = finset_decode(n2);
    std::vector<Nat> fine = finset_decode(n1);
    for (const Nat& k : coarse) {
      bool refined = false;
      for (const Nat& p : fine) {
        if (holds(p, k)) {
          refined = true;
          break;
        }
      }
      if (!refined) return false;
    }
    return true;
  };
  if (si.semi) {
    auto semi = si.semi;
    out.semi = [semi](const Nat& n1, const Nat& n2, Fuel fuel) {
      std::vector<Nat> coarse = finset_decode(n2);
      if (coarse.empty()) return SemiResult::Accept;
      std::vector<Nat> fine = finset_decode(n1);
      if (fine.empty()) return SemiResult::NotYet;  // nothing can refine a proper factor
      // Finitely many pairs: give each an equal slice. Slices grow with the
      // budget and each sub-procedure is fuel-monotone, so so is the whole.
      Fuel slice{std::max<std::uint64_t>(1, fuel.steps / (coarse.size() * fine.size()))};
      for (const Nat& k : coarse) {
        bool refined = false;
        for (const Nat& p : fine) {
          if (semi(p, k, slice) == SemiResult::Accept) {
            refined = true;
            break;
          }
        }
        if (!refined) return SemiResult::NotYet;
      }
      return SemiResult::Accept;
    };
  }
  return out;
}

bool seq_strong_included(const StrongInclusion& si, const std::vector<Nat>& fine,
                         const std::vector<Nat>& coarse) {
  for (const Nat& c : coarse) {
    bool refined = false;
    for (const Nat& f : fine) {
      if (si.holds(f, c)) {
        refined = true;
        break;
      }
    }
    if (!refined) return false;
  }
  return true;
}

std::string CheckReport::to_text() const {
  std::string out;
  for (const ViolationEntry& v : violations) {
    out += "VIOLATION " + v.kind + " a=" + v.a.display() + " b=" + v.b.display();
    if (v.c) out += " c=" + v.c->display();
    if (!v.point.empty()) out += " point=" + v.point;
    out += "\n";
  }
  return out;
}

CheckReport check_axioms(const StrongInclusion& si, const NumberedSubbasis& sb,
                         const std::vector<Nat>& codes,
                         const std::vector<PointWitness>& points,
                         const AxiomSampleOptions& opts) {
  CheckReport report;
  if (codes.empty()) return report;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick(0, codes.size() - 1);

  if (si.reflexive) {
    for (const Nat& a : codes) {
      if (!si.holds(a, a))
        report.violations.push_back({"reflexivity", a, a, std::nullopt, ""});
    }
  }

  for (std::size_t t = 0; t < opts.triples; ++t) {
    const Nat& a = codes[pick(rng)];
    const Nat& b = codes[pick(rng)];
    const Nat& c = codes[pick(rng)];
    if (si.holds(a, b) && si.holds(b, c) && !si.holds(a, c))
      report.violations.push_back({"transitivity", a, b, c, ""});
  }

  for (std::size_t t = 0; t < opts.pairs; ++t) {
    const Nat& a = codes[pick(rng)];
    const Nat& b = codes[pick(rng)];
    if (!si.holds(a, b)) continue;
    for (const PointWitness& p : points) {
      Tri in_a = sb.member_test(p, a);
      Tri in_b = sb.member_test(p, b);
      if (in_a == Tri::In && in_b == Tri::Out)
        report.violations.push_back({"refinement", a, b, std::nullopt, p.label});
      else if (in_a == Tri::Unknown || in_b == Tri::Unknown)
        ++report.skipped;
    }
  }
  return report;
}

PrefixCheck validate_prefix(ReprFamily family, const NumberedSubbasis& sb,
                            const std::vector<Nat>& prefix, const PointWitness& point,
                            Fuel fuel) {
  // SI names list induced codes; expand them to the underlying subbasis codes.
  std::vector<Nat> listed;
  for (const Nat& entry : prefix) {
    if (family == ReprFamily::SI) {
      for (const Nat& e : finset_decode(entry)) listed.push_back(e);
    } else {
      listed.push_back(entry);
    }
  }
  if (listed.empty()) return PrefixCheck::ConsistentSoFar;

  bool unknown = false;
  Fuel slice{std::max<std::uint64_t>(1, fuel.steps / listed.size())};
  for (const Nat& code : listed) {
    if (sb.numbering.domain_oracle) {
      if (!sb.numbering.domain_oracle(code)) return PrefixCheck::Violation;
    } else if (sb.numbering.domain_check(code, slice) != SemiResult::Accept) {
      unknown = true;
      continue;  // unresolved domain: membership of an unconfirmed set stays open
    }
    switch (sb.member_test(point, code)) {
      case Tri::Out: return PrefixCheck::Violation;
      case Tri::Unknown: unknown = true; break;
      case Tri::In: break;
    }
  }
  return unknown ? PrefixCheck::Unknown : PrefixCheck::ConsistentSoFar;
}

}  // namespace respace
