#include <catch2/catch_amalgamated.hpp>

#include "g2fk/p3_suite.hpp"

using namespace g2fk;

namespace {

const P3Context& ctx() {
  static const P3Context c = build_p3();
  return c;
}

}  // namespace

TEST_CASE("p = 3 carrier and maximal subgroups") {
  const P3Context& c = ctx();
  CHECK(c.t.size() == 729);
  CHECK(c.Q1.order() == 243);
  CHECK(c.Q2.order() == 243);
  CHECK_FALSE(c.Q1 == c.Q2);
  // Both highest roots are central in characteristic 3.
  CHECK(c.Z.order() == 9);
}

TEST_CASE("torus maps") {
  const P3Context& c = ctx();
  for (auto [s, u] : {std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    const TorusAut tor = torus_aut(c.t, s, u);
    CHECK(tor.certified);
    // Fixed points are the elements supported on roots with trivial character.
    std::size_t fixed = 0, oracle = 0;
    for (Id x = 0; x < c.t.size(); ++x) {
      fixed += tor(x) == x;
      const Word w = c.t.word(x);
      bool ok = true;
      for (std::size_t r = 0; r < 6; ++r) {
        const int chi = (kTorusCharacters[r][0] * (s == 2) + kTorusCharacters[r][1] * (u == 2)) % 2;
        if (chi && w[r]) ok = false;
      }
      oracle += ok;
    }
    CHECK(fixed == oracle);
  }
}

TEST_CASE("naive torus characters are rejected") {
  const P3Context& c = ctx();
  CHECK_FALSE(torus_aut(c.t, 2, 1, kNaiveTorusCharacters).certified);
  CHECK_FALSE(torus_aut(c.t, 1, 2, kNaiveTorusCharacters).certified);
}

TEST_CASE("direct decomposition of Q_i") {
  const P3Context& c = ctx();
  for (const Subgroup* q : {&c.Q1, &c.Q2}) {
    const auto dec = find_direct_decomposition(c.t, *q);
    REQUIRE(dec.has_value());
    const Subgroup e = closure(c.t, {dec->elementary[0], dec->elementary[1]});
    const Subgroup x = closure(c.t, {dec->extraspecial[0], dec->extraspecial[1]});
    CHECK(e.order() == 9);
    CHECK(x.order() == 27);
    CHECK(is_elementary_abelian(c.t, e));
    CHECK(is_extraspecial(c.t, x));
    CHECK(e.is_subgroup_of(center(c.t, *q)));
    CHECK(join(c.t, e, x) == *q);
  }
}

TEST_CASE("fact suite") {
  const auto results = p3_fact_suite(ctx());
  std::size_t skips = 0, findings = 0;
  for (const auto& r : results) {
    INFO(r.id << ": " << r.actual << " / " << r.witness.value_or(""));
    CHECK(r.status != Status::Fail);
    skips += r.status == Status::Skip;
    findings += r.status == Status::Finding;
    if (r.id == "p3.g") CHECK(r.status == Status::Skip);
  }
  CHECK(skips == 1);
  CHECK(findings == 1);
}
