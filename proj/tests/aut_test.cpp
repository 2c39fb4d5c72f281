#include <catch2/catch_amalgamated.hpp>

#include "g2fk/automorphism.hpp"

using namespace g2fk;

namespace {

const PolyTable& table(unsigned p) {
  static const PolyTable t5(5);
  static const PolyTable t7(7);
  return p == 5 ? t5 : t7;
}

bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) {
    INFO(r.id << ": " << r.actual << " / " << r.witness.value_or(""));
    if (r.status != Status::Pass) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("diagonal maps are certified automorphisms") {
  const SContext c(table(5));
  const auto diags = all_diag_auts(c.t);
  REQUIRE(diags.size() == 16);
  CHECK(diag_certified_check(c, diags).status == Status::Pass);
}

TEST_CASE("certification rejects a broken map") {
  const PolyTable& t = table(5);
  std::vector<Id> map(t.size());
  for (Id x = 0; x < t.size(); ++x) map[x] = x;
  CHECK(certify_map(t, "id", map).certified);
  std::swap(map[t.x(1)], map[t.x(2)]);
  CHECK_FALSE(certify_map(t, "swap", map).certified);
}

TEST_CASE("center criterion t^2 lambda^3 = 1") {
  const SContext c(table(7));
  CHECK(center_criterion_scan(c).status == Status::Pass);
  // (6, 3): 36 * 27 = 6 mod 7, so x_6 is moved.
  const Automorphism d = diag_aut(c.t, 6, 3);
  CHECK(d(c.t.x(6)) != c.t.x(6));
  // (1, 1) and (6, 1) with lambda^3 t^2 = 1.
  CHECK(diag_aut(c.t, 6, 1)(c.t.x(6)) == c.t.x(6));
}

TEST_CASE("scalar action on Q/Z4 and R/Z4") {
  const SContext c(table(7));
  const Automorphism d = diag_aut(c.t, 3, 1);
  CHECK(scalar_action_report(c, d) == std::pair<int, int>{3, 1});
  CHECK(scalar_action_report(c, diag_aut(c.t, 2, 5)) == std::pair<int, int>{2, 5});
  CHECK(scalar_action_check(c, all_diag_auts(c.t)).status == Status::Pass);
}

TEST_CASE("commutator form on Q/Z") {
  for (unsigned p : {5u, 7u}) {
    const SContext c(table(p));
    const GramForm g = commutator_gram(c.t);
    CHECK(g.alternating());
    CHECK(g.determinant() != 0);
    CHECK(g.m[2][3] == 0);
    // Oracle: <x_i, x_j> = -beta(v_i, v_j).
    const PolyModel& m = c.t.model();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(g.m[i][j] == m.field().neg(m.beta(m.generator(i + 2, 1).v, m.generator(j + 2, 1).v)));
    CHECK(all_pass(gram_checks(c)));
  }
}

TEST_CASE("similitudes with multiplier t^2 (det A)^3") {
  const SContext c(table(5));
  std::vector<Automorphism> pool;
  CHECK(similitude_check(c, all_diag_auts(c.t), 20, 7, &pool).status == Status::Pass);
  CHECK(pool.size() == 20);
  CHECK(recertification_audit(c.t, pool, 3).status == Status::Pass);
}

TEST_CASE("generating pairs of R") {
  const SContext c(table(5));
  CHECK(generating_pair_count(c.t, c.R) == 7500000);
  const auto checks = generating_pair_checks(c, 300, 11);
  CHECK(all_pass(checks));
  // The criterion is invariant under automorphisms.
  const Automorphism d = diag_aut(c.t, 2, 3);
  const FrattiniQuotient fq = frattini_quotient(c.t, c.R);
  auto gen = [&](Id x, Id y) {
    const auto a = fq.coordinates(x), b = fq.coordinates(y);
    return (a[0] * b[1] - a[1] * b[0]) % 5 != 0;
  };
  const auto el = c.R.elements();
  for (std::size_t i = 0; i < el.size(); i += 97)
    for (std::size_t j = 0; j < el.size(); j += 131) CHECK(gen(el[i], el[j]) == gen(d(el[i]), d(el[j])));
}

TEST_CASE("Inn(R), Frattini action and centralizer instances") {
  const SContext c(table(5));
  const auto diags = all_diag_auts(c.t);
  CHECK(inn_r_structure(c).status == Status::Pass);
  CHECK(frattini_action_image(c, diags).status == Status::Pass);
  const auto ca = ca_lemma_instance(c, diags, c.Z4, "Z4");
  INFO(ca.actual);
  CHECK(ca.status == Status::Pass);
  CHECK(ca_lemma_instance(c, diags, c.Q, "Q").status == Status::Pass);
}
