#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "respace/basis.hpp"
#include "respace/kernel.hpp"
#include "respace/metric.hpp"
#include "respace/repr.hpp"
#include "respace/worlds.hpp"

using namespace respace;

namespace {

World rational_world() { return make_rational_real_world(); }

Name si_name_of(const World& w, const char* q) {
  return w.si_name(w.parse_point(q));
}

}  // namespace

TEST_CASE("representation construction enforces the relation slot") {
  World w = rational_world();
  StrongInclusion strict = w.canonical_si;

  // A strong-basis representation must carry a relation.
  CHECK_THROWS_AS((void)make_representation(RepresentationKind::SI(StrongInclusion{}), w.subbasis),
                  std::invalid_argument);

  // An irreflexive relation needs the strong-neighborhood certificate.
  CHECK_THROWS_AS((void)make_representation(RepresentationKind::SI(strict), w.subbasis),
                  std::invalid_argument);
  CHECK_NOTHROW((void)make_representation(RepresentationKind::SI(strict), w.subbasis, true));

  // Min and Max take no relation.
  CHECK_NOTHROW((void)make_representation(RepresentationKind::Min(), w.subbasis));
  CHECK_NOTHROW((void)make_representation(RepresentationKind::Max(), w.subbasis));
}

TEST_CASE("max names pass to the strong family by singleton wrapping") {
  World w = rational_world();
  auto max_rep = make_representation(RepresentationKind::Max(), w.subbasis);
  auto si_rep = make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);

  Name f = finite_name({Nat(9), Nat(332)});
  Name g = id_translation(max_rep, si_rep).transform(f);
  CHECK(g.at(0) == finset_encode({Nat(9)}));
  CHECK(g.at(1) == finset_encode({Nat(332)}));
}

TEST_CASE("strong-basis names pass to min verbatim over the induced subbasis") {
  World w = rational_world();
  auto si_rep = make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);
  auto min_ind = make_representation(RepresentationKind::Min(), induced_subbasis(w.subbasis));

  Name q = finite_name({finset_encode({Nat(9)}), finset_encode({Nat(332), Nat(9)})});
  Name g = id_translation(si_rep, min_ind).transform(q);
  CHECK(g.at(0) == q.at(0));
  CHECK(g.at(1) == q.at(1));

  // The destination must really be over the induced numbering.
  auto min_base = make_representation(RepresentationKind::Min(), w.subbasis);
  CHECK_THROWS_AS((void)id_translation(si_rep, min_base), std::invalid_argument);
}

TEST_CASE("max names pass to min verbatim over the same subbasis") {
  World w = rational_world();
  auto max_rep = make_representation(RepresentationKind::Max(), w.subbasis);
  auto min_rep = make_representation(RepresentationKind::Min(), w.subbasis);
  Name f = finite_name({Nat(9)});
  CHECK(id_translation(max_rep, min_rep).transform(f).at(0) == Nat(9));

  // No identity realizer exists the other way.
  CHECK_THROWS_AS((void)id_translation(min_rep, max_rep), std::invalid_argument);
}

TEST_CASE("identity translation refuses mismatched subbases") {
  World rational = rational_world();
  World kspace = make_kspace_world();
  auto from = make_representation(RepresentationKind::Max(), rational.subbasis);
  auto to = make_representation(RepresentationKind::Min(), kspace.subbasis);
  CHECK_THROWS_AS((void)id_translation(from, to), std::invalid_argument);
}

TEST_CASE("restriction narrows membership answers") {
  World w = rational_world();
  auto rep = make_representation(RepresentationKind::Min(), w.subbasis);
  auto positive = restrict_to(rep, [](const PointWitness& p) {
    if (!p.is_rational()) return Tri::Unknown;
    return p.rational() > 0 ? Tri::In : Tri::Out;
  });

  Nat unit = ball_code(rational_code(0), mpq_class(1));
  CHECK(w.subbasis.member_test(rational_point(mpq_class(0)), unit) == Tri::In);
  CHECK(positive.subbasis.member_test(rational_point(mpq_class(0)), unit) == Tri::Out);
  CHECK(positive.subbasis.member_test(rational_point(mpq_class(1, 2)), unit) == Tri::In);
}

TEST_CASE("membership monitoring accepts a covered target and never lies") {
  World w = rational_world();
  auto si_rep = make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);
  Name third = si_name_of(w, "1/3");

  Nat inside = ball_code(rational_code(0), mpq_class(1));
  MembershipMonitor hit = member_monitor(si_rep, inside);
  CHECK(hit.poll(third, Fuel{100000}) == SemiResult::Accept);
  CHECK(hit.last_fuel_used() > 0);

  // Accept is final: a later poll with a sliver of fuel still reports it.
  CHECK(hit.poll(third, Fuel{1}) == SemiResult::Accept);

  Nat outside = ball_code(rational_code(2), mpq_class(1, 4));
  MembershipMonitor miss = member_monitor(si_rep, outside);
  CHECK(miss.poll(third, Fuel{100000}) == SemiResult::NotYet);
}

TEST_CASE("membership monitoring is monotone in fuel") {
  World w = rational_world();
  auto si_rep = make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);
  Name third = si_name_of(w, "1/3");
  Nat inside = ball_code(rational_code(0), mpq_class(1));

  std::uint64_t first_accept = 0;
  for (std::uint64_t fuel = 1; fuel <= 4096; fuel *= 2) {
    MembershipMonitor fresh = member_monitor(si_rep, inside);
    if (fresh.poll(third, Fuel{fuel}) == SemiResult::Accept) {
      first_accept = fuel;
      break;
    }
  }
  REQUIRE(first_accept > 0);
  for (std::uint64_t fuel = first_accept; fuel <= first_accept * 8; fuel *= 2) {
    MembershipMonitor fresh = member_monitor(si_rep, inside);
    CHECK(fresh.poll(third, Fuel{fuel}) == SemiResult::Accept);
  }
}

TEST_CASE("membership monitoring demands a bounded relation") {
  World w = rational_world();

  auto min_rep = make_representation(RepresentationKind::Min(), w.subbasis);
  CHECK_THROWS_AS((void)member_monitor(min_rep, Nat(9)), std::invalid_argument);

  StrongInclusion mute = w.canonical_si;
  mute.semi = nullptr;
  auto silent = make_representation(RepresentationKind::SI(mute), w.subbasis, true);
  CHECK_THROWS_AS((void)member_monitor(silent, Nat(9)), std::invalid_argument);
}

TEST_CASE("monitoring a name that stalls reports only fuel spent") {
  World w = rational_world();
  auto si_rep = make_representation(RepresentationKind::SI(w.canonical_si), w.subbasis, true);
  Name stall = name_from_function([](std::uint64_t) -> Nat {
    for (;;) charge_read();
  });
  MembershipMonitor m = member_monitor(si_rep, ball_code(rational_code(0), mpq_class(1)));
  CHECK(m.poll(stall, Fuel{500}) == SemiResult::NotYet);
  CHECK(m.last_fuel_used() <= 500);
}
