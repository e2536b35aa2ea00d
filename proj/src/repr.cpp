#include "respace/repr.hpp"

#include <stdexcept>

namespace respace {

Representation make_representation(RepresentationKind kind, NumberedSubbasis subbasis,
                                   bool snb_certificate) {
  if (kind.family == ReprFamily::SI) {
    if (!kind.strong_inclusion)
      throw std::invalid_argument("make_representation: SI kind without a relation");
    if (!kind.strong_inclusion->reflexive && !snb_certificate)
      throw std::invalid_argument(
          "make_representation: relation is not reflexive and no strong-neighborhood-basis "
          "certificate was given");
  } else if (kind.strong_inclusion) {
    throw std::invalid_argument("make_representation: relation given for a non-SI kind");
  }
  return Representation{std::move(kind), std::move(subbasis)};
}

Translator id_translation(const Representation& src, const Representation& dst) {
  ReprFamily from = src.kind.family;
  ReprFamily to = dst.kind.family;
  if (from == ReprFamily::Max && to == ReprFamily::SI) {
    if (dst.subbasis.numbering.id != src.subbasis.numbering.id)
      throw std::invalid_argument("id_translation: distinct subbases");
    return Translator{[](const Name& f) {
      return Name([f](std::uint64_t i) { return finset_encode({f.at(i)}); });
    }};
  }
  if (from == ReprFamily::SI && to == ReprFamily::Min) {
    // SI names list induced codes, so they are Min names over the induced
    // subbasis and nowhere else.
    if (dst.subbasis.numbering.id != "induced(" + src.subbasis.numbering.id + ")")
      throw std::invalid_argument(
          "id_translation: SI names are Min names over the induced subbasis only");
    return Translator{[](const Name& q) { return q; }};
  }
  if (from == ReprFamily::Max && to == ReprFamily::Min) {
    if (dst.subbasis.numbering.id != src.subbasis.numbering.id)
      throw std::invalid_argument("id_translation: distinct subbases");
    return Translator{[](const Name& f) { return f; }};
  }
  throw std::invalid_argument("id_translation: no identity realizer for this pair");
}

Representation restrict_to(const Representation& rep,
                           std::function<Tri(const PointWitness&)> subset_member) {
  Representation out = rep;
  auto base = rep.subbasis.member_test;
  out.subbasis.member_test = [base, subset_member](const PointWitness& p, const Nat& code) {
    Tri in_subset = subset_member(p);
    if (in_subset == Tri::Out) return Tri::Out;
    Tri in_base = base(p, code);
    if (in_base == Tri::Out) return Tri::Out;
    if (in_subset == Tri::Unknown || in_base == Tri::Unknown) return Tri::Unknown;
    return Tri::In;
  };
  return out;
}

MembershipMonitor::MembershipMonitor(StrongInclusion extended, Nat wrapped_target)
    : extended_(std::move(extended)), wrapped_target_(std::move(wrapped_target)) {}

SemiResult MembershipMonitor::poll(const Name& name, Fuel fuel) {
  if (accepted_) return SemiResult::Accept;  // Accept is final
  FuelMeter meter(fuel.steps);
  SemiResult result = SemiResult::NotYet;
  {
    FuelScope scope(meter);
    try {
      // Diagonal dovetailing over (entry index, relation budget): round r polls
      // entries 0..r at budget r+1. The schedule is fuel-independent and the
      // budget only truncates it, so Accept at F implies Accept at every
      // larger budget.
      for (std::uint64_t round = 0;; ++round) {
        for (std::uint64_t i = 0; i <= round; ++i) {
          Nat entry = name.at(i);
          charge_poll();
          if (extended_.semi(entry, wrapped_target_, Fuel{round + 1}) == SemiResult::Accept) {
            accepted_ = true;
            result = SemiResult::Accept;
            break;
          }
        }
        if (accepted_) break;
      }
    } catch (const Exhausted&) {
      result = SemiResult::NotYet;
    }
  }
  last_used_ = meter.used();
  return result;
}

MembershipMonitor member_monitor(const Representation& rep, const Nat& target_code) {
  if (rep.kind.family != ReprFamily::SI)
    throw std::invalid_argument("member_monitor: needs an SI representation");
  const StrongInclusion& si = *rep.kind.strong_inclusion;
  if (!si.semi)
    throw std::invalid_argument(
        "member_monitor: the relation carries no bounded procedure, membership cannot be "
        "monitored in this world");
  return MembershipMonitor(extend_strong_inclusion(si), finset_encode({target_code}));
}

}  // namespace respace
