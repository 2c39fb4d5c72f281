#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "g2fk/chevalley.hpp"
#include "g2fk/engine.hpp"
#include "g2fk/poly_model.hpp"

using namespace g2fk;

namespace {

struct Fixture {
  PolyTable t;
  Subgroup S, Q, R, Z, Z2, Z3, Z4;
  explicit Fixture(unsigned p)
      : t(p),
        S(whole_group(t)),
        Q(closure(t, {t.x(2), t.x(3), t.x(4), t.x(5), t.x(6)})),
        R(closure(t, {t.x(1), t.x(3), t.x(4), t.x(5), t.x(6)})),
        Z(closure(t, {t.x(6)})),
        Z2(closure(t, {t.x(5), t.x(6)})),
        Z3(closure(t, {t.x(4), t.x(5), t.x(6)})),
        Z4(closure(t, {t.x(3), t.x(4), t.x(5), t.x(6)})) {}
};

}  // namespace

TEST_CASE("closure") {
  Fixture f(5);
  CHECK(trivial_subgroup(f.t).order() == 1);
  CHECK(f.Z.order() == 5);
  CHECK(f.Q.order() == 3125);
  CHECK(closure(f.t, f.Q.generators()) == f.Q);
  CHECK(15625 % f.R.order() == 0);
  CHECK(join(f.t, f.Z2, f.Z3) == f.Z3);
  CHECK(f.Z.is_subgroup_of(f.Z4));
}

TEST_CASE("centralizers, derived and Frattini subgroups") {
  Fixture f(5);
  CHECK(center(f.t, f.S) == f.Z);
  CHECK(centralizer(f.t, f.S, f.Z2) == f.R);
  CHECK(centralizer(f.t, f.Q, f.Z2) == f.Z4);
  CHECK(centralizer(f.t, f.S, std::span<const Id>(f.Z2.generators())).set().is_subset_of(normalizer(f.t, f.S, f.Z2).set()));
  CHECK(derived_subgroup(f.t, f.S) == f.Z4);
  CHECK(derived_subgroup(f.t, f.Q) == f.Z);
  CHECK(commutator_subgroup(f.t, f.Z4, f.S) == f.Z3);
  CHECK(frattini(f.t, f.S) == f.Z4);
  CHECK(frattini(f.t, f.R) == f.Z3);
  CHECK(frattini(f.t, f.Z3).order() == 1);
  const Subgroup n = normalizer(f.t, f.S, closure(f.t, {f.t.x(2)}));
  CHECK(n.contains(f.t.x(2)));
}

TEST_CASE("central series and exponents") {
  Fixture f7(7);
  const SeriesReport up = upper_central_series(f7.t, f7.S);
  CHECK(up.orders() == std::vector<std::size_t>{1, 7, 49, 343, 2401, 117649});
  CHECK(up.nilpotency_class() == 5);
  CHECK(is_maximal_class(up, 7));
  const SeriesReport low = lower_central_series(f7.t, f7.S);
  REQUIRE(low.terms.size() == up.terms.size());
  for (std::size_t i = 0; i < up.terms.size(); ++i) CHECK(low.terms[i] == up.terms[i]);
  CHECK(exponent(f7.t, f7.S) == 7);

  Fixture f5(5);
  CHECK(exponent(f5.t, f5.S) == 25);
  for (Id x = 0; x < f5.t.size(); ++x) {
    const bool outside = !f5.Q.contains(x) && !f5.R.contains(x);
    REQUIRE((element_order(f5.t, x) == 25) == outside);
  }
}

TEST_CASE("predicates") {
  Fixture f(5);
  CHECK(is_extraspecial(f.t, f.Q));
  CHECK(is_special(f.t, f.Q));
  CHECK(is_elementary_abelian(f.t, f.Z3));
  CHECK(!is_abelian(f.t, f.Z4));
  CHECK(!is_extraspecial(f.t, f.R));
  const DenseTable inn = DenseTable::quotient(f.t, f.R, f.Z2);
  CHECK(inn.size() == 125);
  const Subgroup whole = whole_group(inn);
  CHECK(is_extraspecial(inn, whole));
  CHECK(exponent(inn, whole) == 5);
}

TEST_CASE("maximal subgroups") {
  Fixture f(7);
  const auto maxes = maximal_subgroups(f.t, f.S);
  CHECK(maxes.size() == 8);
  int hits = 0;
  for (const auto& m : maxes) {
    CHECK(m.order() == 16807);
    CHECK(f.Z4.is_subgroup_of(m));
    if (m == f.Q || m == f.R) ++hits;
  }
  CHECK(hits == 2);
}

TEST_CASE("bounded normal subgroups") {
  Fixture f(7);
  const auto normals = bounded_normal_subgroups(f.t, 2401);
  REQUIRE(normals.size() == 4);
  CHECK(normals[0] == f.Z);
  CHECK(normals[1] == f.Z2);
  CHECK(normals[2] == f.Z3);
  CHECK(normals[3] == f.Z4);
  const auto classes = conjugacy_classes(f.t, f.S);
  for (const auto& n : normals) {
    std::vector<Id> gens;
    for (const auto& c : classes)
      if (n.contains(c.front())) gens.insert(gens.end(), c.begin(), c.end());
    CHECK(closure(f.t, gens) == n);
  }
}

TEST_CASE("bounded normal subgroups agree with a join-closure oracle at p = 3") {
  const ChevalleyTable u = generate_u(3);
  const DenseTable d = DenseTable::from(u);
  const std::size_t bound = 81;
  const auto classes = conjugacy_classes(d, whole_group(d));
  // Oracle: normal closures of single classes, closed under pairwise joins.
  std::vector<Subgroup> family;
  std::set<std::vector<Id>> seen;
  auto add = [&](const Subgroup& s) {
    if (s.order() == 1 || s.order() > bound) return;
    std::vector<Id> key(s.elements().begin(), s.elements().end());
    if (seen.insert(key).second) family.push_back(s);
  };
  for (const auto& c : classes) add(closure(d, std::span<const Id>(c)));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(join(d, family[i], family[j]));
  const auto found = bounded_normal_subgroups(d, bound, classes);
  CHECK(found.size() == family.size());
  for (const auto& n : found) {
    std::vector<Id> key(n.elements().begin(), n.elements().end());
    CHECK(seen.count(key) == 1);
  }
}

TEST_CASE("frattini quotient coordinates") {
  Fixture f(5);
  const FrattiniQuotient fq = frattini_quotient(f.t, f.S);
  CHECK(fq.rank() == 2);
  CHECK(fq.phi == f.Z4);
  for (Id x = 0; x < f.t.size(); x += 13)
    for (Id y = 0; y < f.t.size(); y += 1777) {
      const auto a = fq.coordinates(x), b = fq.coordinates(y), c = fq.coordinates(f.t.mul(x, y));
      CHECK(c[0] == (a[0] + b[0]) % 5);
      CHECK(c[1] == (a[1] + b[1]) % 5);
    }
}

TEST_CASE("hom_check") {
  const PolyTable t(5);
  std::array<Id, 6> id{};
  std::copy(t.generators().begin(), t.generators().end(), id.begin());
  const HomCheck h = hom_check(t, t, id);
  CHECK(h.homomorphism);
  CHECK(h.bijective);
  CHECK(h.image_size == 15625);
  auto bad = id;
  bad[5] = t.x(6, 2);
  const HomCheck hb = hom_check(t, t, bad);
  CHECK(!hb.homomorphism);
  CHECK(hb.witness.has_value());
}
