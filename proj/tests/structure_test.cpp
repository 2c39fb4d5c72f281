#include <catch2/catch_amalgamated.hpp>

#include "g2fk/structure.hpp"

using namespace g2fk;

namespace {

const PolyTable& table(unsigned p) {
  static const PolyTable t5(5);
  static const PolyTable t7(7);
  return p == 5 ? t5 : t7;
}

bool all_pass(const std::vector<CheckResult>& rs) {
  bool ok = true;
  for (const auto& r : rs) {
    UNSCOPED_INFO(r.id << ": " << r.actual << " / " << r.witness.value_or(""));
    if (r.status != Status::Pass) ok = false;
  }
  return ok;
}

}  // namespace

TEST_CASE("characteristic series at p = 5 and 7") {
  for (unsigned p : {5u, 7u}) {
    const SContext c(table(p));
    CHECK(all_pass(verify_charz(c, all_diag_auts(c.t))));
    CHECK(all_pass(verify_series_and_exponent(c)));
    CHECK(all_pass(verify_z4char(c, maximal_subgroups(c.t, c.S))));
  }
}

TEST_CASE("Jordan ranks of x1 on Q/Z") {
  const SContext c(table(7));
  CHECK(x1_jordan_ranks(c) == std::vector<int>{3, 2, 1, 0});
}

TEST_CASE("exclusion filter examples") {
  const SContext c(table(5));
  CHECK_FALSE(exclusion_filter(c.t, c.S, c.Q, c.Z).has_value());
  // Any maximal X outside {Q, R} is eliminated with F = Z4.
  for (const auto& m : maximal_subgroups(c.t, c.S)) {
    if (m == c.Q || m == c.R) continue;
    const auto w = exclusion_filter(c.t, c.S, m, c.Z4);
    REQUIRE(w.has_value());
    CHECK_FALSE(m.contains(*w));
  }
  // E = S is self-normalizing.
  CHECK_THROWS_AS(exclusion_filter(c.t, c.S, c.S, c.Z), GroupError);
}

TEST_CASE("exclusion filter conditions are monotone") {
  const SContext c(table(5));
  // Condition (a) weakens as F grows; condition (b) strengthens.
  const Subgroup& e = c.R;
  const Subgroup phi = frattini(c.t, e);
  const std::vector<const Subgroup*> chain{&c.Z, &c.Z2, &c.Z3, &c.Z4};
  for (Id g = 0; g < c.t.size(); g += 37) {
    if (e.contains(g)) continue;
    bool prev_a = false, prev_b = true;
    for (const Subgroup* f : chain) {
      const Subgroup fphi = join(c.t, *f, phi);
      const bool a = brackets_into(c.t, g, e.elements(), fphi);
      const bool b = brackets_into(c.t, g, f->elements(), phi);
      CHECK((!prev_a || a));
      CHECK((prev_b || !b));
      prev_a = a;
      prev_b = b;
    }
  }
}

TEST_CASE("maximal scan survivors are Q and R") {
  for (unsigned p : {5u, 7u}) {
    const SContext c(table(p));
    const auto maxes = maximal_subgroups(c.t, c.S);
    const auto r = scan_maximals_check(c, maxes);
    INFO(r.actual);
    CHECK(r.status == Status::Pass);
  }
}

TEST_CASE("W family at p = 7") {
  const SContext c(table(7));
  CHECK(all_pass(w_family_checks(c)));
  const SContext c5(table(5));
  CHECK_THROWS_AS(build_w_family(c5), GroupError);
  CHECK(w_family_checks(c5).front().status == Status::Skip);
}

TEST_CASE("U family") {
  for (unsigned p : {5u, 7u}) {
    const SContext c(table(p));
    CHECK(all_pass(u_family_checks(c, maximal_subgroups(c.t, c.S))));
  }
}

TEST_CASE("subset orbit census") {
  const auto orbits = subset_orbit_census();
  CHECK(orbits.size() == 13);
  CHECK(subset_census_check().status == Status::Pass);
  // Relabelling by a multiplier permutes subsets and preserves every orbit length.
  for (const auto& o : orbits)
    for (unsigned a = 1; a <= 6; ++a) {
      const unsigned img = scale_subset(o.rep, a);
      CHECK(orbit_min(img) == o.rep);
    }
  CHECK(scale_subset(subset_mask({1, 2, 4}), 2) == subset_mask({1, 2, 4}));
  CHECK(scale_subset(subset_mask({1, 6}), 6) == subset_mask({1, 6}));
}

TEST_CASE("Q/Z has no abelian subgroup above order p^3") {
  CHECK(q_lagrangian_check(SContext(table(5))).status == Status::Pass);
}
