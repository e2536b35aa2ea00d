#include "respace/equivalence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace respace {

std::pair<Numbering, StrongInclusion> totalize(const StrongInclusion& si,
                                               const Numbering& base) {
  if (!base.domain_oracle) {
    throw std::invalid_argument("totalize: base numbering has no domain oracle");
  }
  Numbering total;
  total.id = "totalized(" + base.id + ")";
  total.domain_check = [](const Nat&, Fuel fuel) {
    return bounded_semi(fuel, [] {
      charge_poll();
      return SemiResult::Accept;
    });
  };
  total.domain_oracle = [](const Nat&) { return true; };

  StrongInclusion widened;
  widened.reflexive = true;
  auto listed = base.domain_oracle;
  auto below = si.holds;
  widened.holds = [listed, below](const Nat& a, const Nat& b) {
    if (a == b) return true;
    return listed(a) && listed(b) && below(a, b);
  };
  // Deliberately no bounded procedure: accepting a pair would require
  // semi-deciding listedness of arbitrary codes, and the diagonal escape
  // hatch covers only literal equality.
  widened.semi = nullptr;
  return {std::move(total), std::move(widened)};
}

Translator translation_from_adapter(const Adapter& adapter) {
  Translator t;
  auto map = adapter.map;
  t.transform = [map](Name src) {
    return name_from_function([map, src](std::size_t k) {
      std::vector<Nat> flat;
      for (std::size_t i = 0; i <= k; ++i) {
        for (auto& code : finset_decode(src.at(i))) flat.push_back(std::move(code));
      }
      return induced_code(map(flat));
    });
  };
  return t;
}

CheckReport check_adapter(const Adapter& adapter, const NumberedSubbasis& target_sb,
                          const NumberedSubbasis& source_sb, const StrongInclusion& target_si,
                          const StrongInclusion& source_si, const AdapterCheckSample& sample) {
  CheckReport report;

  // Oversets: a point in the intersection of a source sequence must land in
  // every set the image names.
  for (const auto& seq : sample.source_seqs) {
    std::vector<Nat> image = adapter.map(seq);
    for (const auto& x : sample.points) {
      bool inside = true;
      bool unresolved = false;
      for (const auto& code : seq) {
        Tri v = source_sb.member_test(x, code);
        if (v == Tri::Out) {
          inside = false;
          break;
        }
        if (v == Tri::Unknown) unresolved = true;
      }
      if (!inside) continue;
      if (unresolved) {
        ++report.skipped;
        continue;
      }
      for (const auto& code : image) {
        Tri v = target_sb.member_test(x, code);
        if (v == Tri::Unknown) {
          ++report.skipped;
        } else if (v == Tri::Out) {
          report.violations.push_back(
              {"overset", induced_code(seq), induced_code(image), code, x.label});
        }
      }
    }
  }

  // Uniform refinement: past the witness sequence for (x, d), every sampled
  // refinement must map strongly below d.
  if (sample.witness_seq && sample.refinements) {
    for (const auto& [x, d] : sample.targets) {
      std::vector<Nat> witness = sample.witness_seq(x, d);
      if (witness.empty()) {
        ++report.skipped;
        continue;
      }
      for (const auto& ref : sample.refinements(x, witness)) {
        if (!seq_strong_included(source_si, ref, witness)) {
          ++report.skipped;  // sampler produced a non-refinement, not evidence
          continue;
        }
        std::vector<Nat> image = adapter.map(ref);
        if (!seq_strong_included(target_si, image, {d})) {
          report.violations.push_back(
              {"uniform-refinement", d, induced_code(image), std::nullopt, x.label});
        }
      }
    }
  }
  return report;
}

CheckReport lacombe_adapter_check(const std::function<Name(const Nat&)>& cover,
                                  const NumberedSubbasis& sb1, const NumberedSubbasis& sb2,
                                  const std::vector<Nat>& b1_codes,
                                  const std::vector<PointWitness>& points,
                                  std::uint64_t enum_budget) {
  CheckReport report;
  for (const auto& b1 : b1_codes) {
    Name en = cover(b1);
    std::vector<Nat> listed;
    listed.reserve(enum_budget);
    try {
      for (std::uint64_t i = 0; i < enum_budget; ++i) listed.push_back(en.at(i));
    } catch (const NameExhausted&) {
      // finite enumeration, keep what we have
    }
    for (const auto& x : points) {
      Tri in_b1 = sb1.member_test(x, b1);
      if (in_b1 == Tri::Unknown) {
        ++report.skipped;
        continue;
      }
      bool caught = false;
      for (const auto& c : listed) {
        Tri v = sb2.member_test(x, c);
        if (v == Tri::Unknown) ++report.skipped;
        if (v == Tri::In) {
          caught = true;
          if (in_b1 == Tri::Out) {
            report.violations.push_back({"cover-overset", b1, c, std::nullopt, x.label});
          }
        }
      }
      if (in_b1 == Tri::In && !caught) {
        report.violations.push_back({"cover-miss", b1, b1, std::nullopt, x.label});
      }
    }
  }
  return report;
}

CheckReport nogina_adapter_check(
    const std::function<Nat(const Nat&, const std::vector<Nat>&)>& selector,
    const NumberedSubbasis& sb1, const NumberedSubbasis& sb2,
    const std::vector<std::tuple<PointWitness, std::vector<Nat>, Nat>>& cases) {
  CheckReport report;
  for (const auto& [x, prefix, b1] : cases) {
    if (sb1.member_test(x, b1) != Tri::In) {
      ++report.skipped;  // malformed case, the selector owes nothing here
      continue;
    }
    Nat b2 = selector(b1, prefix);
    if (sb2.member_test(x, b2) == Tri::Out) {
      report.violations.push_back({"selector-membership", b1, b2, std::nullopt, x.label});
    }
    // Inclusion B2 within B1, sampled over every point the case set carries.
    for (const auto& [y, yprefix, yb1] : cases) {
      (void)yprefix;
      (void)yb1;
      if (sb2.member_test(y, b2) == Tri::In && sb1.member_test(y, b1) == Tri::Out) {
        report.violations.push_back({"selector-inclusion", b1, b2, std::nullopt, y.label});
      }
    }
  }
  return report;
}

namespace {

// Smallest p >= 0 with 2^-p <= r/4, so a 2^-p approximant moves the center by
// at most a quarter radius.
long precision_for_radius(const mpq_class& r) {
  long p = 0;
  mpq_class scaled = r;
  while (scaled < 4) {
    scaled *= 2;
    ++p;
    if (p > 1'000'000) throw std::invalid_argument("ball radius too small to approximate");
  }
  return p;
}

}  // namespace

RationalCrealAdapters rational_vs_creal_adapters(const CrealAccess& creal) {
  RationalCrealAdapters out;

  auto embed = creal.embed_slot;
  out.rational_to_creal.map = [embed](const std::vector<Nat>& seq) {
    std::vector<Nat> image;
    image.reserve(seq.size());
    for (const auto& code : seq) {
      Ball b = decode_ball(code);
      image.push_back(ball_code(embed(rational_value(b.center_code)), b.radius));
    }
    return image;
  };

  auto approx = creal.approx;
  out.creal_to_rational.map = [approx](const std::vector<Nat>& seq) {
    std::vector<Nat> image;
    image.reserve(seq.size());
    const long k = static_cast<long>(seq.size());
    for (const auto& code : seq) {
      if (code.is_spiky()) continue;
      Ball b = decode_ball(code);
      if (b.radius <= 0) continue;
      // Precision grows with the sequence and never lags the ball's own
      // scale, so image radii stay within 3/2 of the source radii while the
      // added slack still vanishes along refining sequences.
      long p = std::max(k, precision_for_radius(b.radius));
      mpq_class center = approx(b.center_code, static_cast<std::uint64_t>(p));
      mpq_class radius = b.radius + pow2q(1 - p);
      image.push_back(ball_code(rational_code(center), radius));
    }
    return image;
  };

  return out;
}

}  // namespace respace
