#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "g2fk/engine.hpp"
#include "g2fk/poly_model.hpp"

using namespace g2fk;

namespace {

CubicVector basis(int i, int scale = 1) {
  CubicVector v;
  v.c[static_cast<std::size_t>(i)] = scale;
  return v;
}

CubicVector random_vector(std::mt19937_64& rng, int p) {
  std::uniform_int_distribution<int> d(0, p - 1);
  return {{d(rng), d(rng), d(rng), d(rng)}};
}

// Oracle: v(X, aX + Y) expanded with binomial coefficients.
CubicVector substitute_unitriangular(const CubicVector& v, int a, int p) {
  static const int binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  long long out[4] = {0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    // X^{3-i} (aX + Y)^i = sum_k C(i,k) a^{i-k} X^{3-k} Y^k
    for (int k = 0; k <= i; ++k) {
      long long apow = 1;
      for (int e = 0; e < i - k; ++e) apow = apow * a % p;
      out[k] += static_cast<long long>(v.c[static_cast<std::size_t>(i)]) * binom[i][k] * apow;
    }
  }
  CubicVector r;
  for (int k = 0; k < 4; ++k) r.c[static_cast<std::size_t>(k)] = static_cast<int>(out[k] % p);
  return r;
}

}  // namespace

TEST_CASE("p = 3 is rejected") {
  CHECK_THROWS_WITH(PolyModel(3), "model requires p >= 5");
  CHECK_THROWS_AS(PolyTable(3), FieldError);
}

TEST_CASE("beta on basis vectors") {
  const PolyModel m(7);
  CHECK(m.beta(basis(0), basis(1)) == 0);
  CHECK(m.beta(basis(0), basis(3)) == 6);  // -1
  CHECK(m.beta(basis(3), basis(0)) == 1);
  // 1/3 and -1/3 on X^2Y, XY^2.
  CHECK(m.field().mul(m.beta(basis(1), basis(2)), 3) == 1);
  CHECK(m.field().mul(m.beta(basis(2), basis(1)), 3) == 6);
}

TEST_CASE("beta is alternating and bilinear") {
  const PolyModel m(5);
  const PrimeField& f = m.field();
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        for (int d = 0; d < 5; ++d) {
          const CubicVector v{{a, b, c, d}};
          CHECK(m.beta(v, v) == 0);
        }
  std::mt19937_64 rng(5);
  for (int n = 0; n < 2000; ++n) {
    const auto u = random_vector(rng, 5), u2 = random_vector(rng, 5), w = random_vector(rng, 5);
    CubicVector sum;
    for (int i = 0; i < 4; ++i) sum.c[i] = f.add(u.c[i], u2.c[i]);
    CHECK(m.beta(sum, w) == f.add(m.beta(u, w), m.beta(u2, w)));
  }
}

TEST_CASE("q_multiply") {
  const PolyModel m(7);
  const PrimeField& f = m.field();
  const QElement id{};
  const QElement q{basis(2, 4), 3};
  CHECK(m.q_multiply(id, q) == q);
  CHECK(m.q_multiply(q, m.q_inverse(q)) == id);
  for (int l = 0; l < 7; ++l)
    for (int u = 0; u < 7; ++u) {
      const SElement a = m.generator(5, l), b = m.generator(5, u), c = m.generator(5, l + u);
      CHECK(m.q_multiply({a.v, a.z}, {b.v, b.z}) == QElement{c.v, c.z});
    }
  CHECK(f.p == 7);
}

TEST_CASE("commutators in Q are (0, 2 beta)") {
  const PolyModel m(5);
  const PrimeField& f = m.field();
  auto comm_q = [&](const QElement& a, const QElement& b) {
    return m.q_multiply(m.q_multiply(m.q_inverse(a), m.q_inverse(b)), m.q_multiply(a, b));
  };
  std::vector<CubicVector> all;
  for (int i = 0; i < 625; ++i) all.push_back({{i / 125, i / 25 % 5, i / 5 % 5, i % 5}});
  std::size_t bad = 0;
  for (const auto& v : all)
    for (const auto& w : all) {
      const QElement c = comm_q({v, 1}, {w, 2});
      if (!(c == QElement{{}, f.mul(2, m.beta(v, w))})) ++bad;
    }
  CHECK(bad == 0);

  const PolyModel m7(7);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dz(0, 6);
  bad = 0;
  for (int n = 0; n < 1000000; ++n) {
    const QElement a{random_vector(rng, 7), dz(rng)}, b{random_vector(rng, 7), dz(rng)};
    const QElement c = m7.q_multiply(m7.q_multiply(m7.q_inverse(a), m7.q_inverse(b)), m7.q_multiply(a, b));
    if (!(c == QElement{{}, m7.field().mul(2, m7.beta(a.v, b.v))})) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("L action on V") {
  const PolyModel m(7);
  const PrimeField& f = m.field();
  const LElement one(f, 1, Mat2{});
  std::mt19937_64 rng(1);
  for (int n = 0; n < 50; ++n) {
    const auto v = random_vector(rng, 7);
    CHECK(m.l_act_vector(v, one) == v);
  }
  for (int mu = 0; mu < 7; ++mu) {
    const LElement g(f, 1, Mat2{{1, 0, mu, 1}});
    const CubicVector img = m.l_act_vector(basis(3), g);
    const CubicVector expect{{f.pow(mu, 3), f.mul(3, f.mul(mu, mu)), f.mul(3, mu), 1}};
    CHECK(img == expect);
    for (int n = 0; n < 20; ++n) {
      const auto v = random_vector(rng, 7);
      CHECK(m.l_act_vector(v, g) == substitute_unitriangular(v, mu, 7));
    }
  }
  for (int t = 1; t < 7; ++t)
    for (int l = 1; l < 7; ++l) {
      const LElement g(f, t, Mat2{{l, 0, 0, 1}});
      CHECK(m.l_act_vector(basis(0), g) == basis(0, f.mul(t, f.pow(l, 3))));
    }
  CHECK_THROWS_AS(LElement(f, 1, Mat2{{1, 2, 2, 4}}), FieldError);
  CHECK_THROWS_AS(LElement(f, 0, Mat2{}), FieldError);
}

TEST_CASE("q_act is an automorphism of Q") {
  const PolyModel m(7);
  const PrimeField& f = m.field();
  for (int c = 0; c < 7; ++c)
    for (int t = 1; t < 7; ++t)
      for (int l = 1; l < 7; ++l) {
        const SElement x6 = m.generator(6, c);
        const QElement img = m.q_act({x6.v, x6.z}, LElement(f, t, Mat2{{l, 0, 0, 1}}));
        CHECK(img.z == f.mul(f.reduce(-2LL * c), f.mul(f.mul(t, t), f.pow(l, 3))));
      }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(0, 6);
  int tested = 0;
  while (tested < 1000) {
    const int t = d(rng), a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (t == 0 || f.sub(f.mul(a, e), f.mul(b, c)) == 0) continue;
    const LElement g(f, t, Mat2{{a, b, c, e}});
    ++tested;
    for (int n = 0; n < 10; ++n) {
      const QElement q1{random_vector(rng, 7), d(rng)}, q2{random_vector(rng, 7), d(rng)};
      CHECK(m.q_act(m.q_multiply(q1, q2), g) == m.q_multiply(m.q_act(q1, g), m.q_act(q2, g)));
    }
  }
  for (const LElement& k : m.action_kernel())
    for (int n = 0; n < 10; ++n) {
      const QElement q{random_vector(rng, 7), d(rng)};
      CHECK(m.q_act(q, k) == q);
    }
}

TEST_CASE("kernel of the L action") {
  for (unsigned p : {5u, 7u}) {
    const PolyModel m(p);
    const PrimeField& f = m.field();
    const auto kernel = m.action_kernel();
    CHECK(kernel.size() == p - 1);
    for (const auto& k : kernel) {
      const int mu = k.matrix()(0, 0);
      CHECK(k.matrix()(1, 1) == mu);
      CHECK(k.matrix()(0, 1) == 0);
      CHECK(k.matrix()(1, 0) == 0);
      CHECK(k.t() == f.inv(f.pow(mu, 3)));
    }
  }
  const PolyModel m(7);
  const PrimeField& f = m.field();
  for (int mu = 1; mu < 7; ++mu) {
    const LElement k(f, f.inv(f.pow(mu, 3)), Mat2{{mu, 0, 0, mu}});
    CHECK(m.q_act({basis(0), 1}, k) == QElement{basis(0), 1});
  }
}

TEST_CASE("S multiplication and generators") {
  const PolyModel m(7);
  const PrimeField& f = m.field();
  CHECK(m.generator(4, 1).v == CubicVector{{0, 3, 0, 0}});
  CHECK(m.generator(2, 0) == SElement{});
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) CHECK(m.s_multiply(m.generator(1, a), m.generator(1, b)) == m.generator(1, a + b));
  const PolyTable t(7);
  for (int l = 1; l < 7; ++l)
    for (int u = 1; u < 7; ++u) {
      const Id c = comm(t, t.x(5, l), t.x(2, u));
      const SElement s = t.decode(c);
      CHECK(s.a == 0);
      CHECK(s.v == CubicVector{});
    }
  CHECK(f.p == 7);
}

TEST_CASE("S multiplication matches the conjugation oracle") {
  const PolyTable t(7);
  const PolyModel& m = t.model();
  const PrimeField& f = m.field();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Id> pick(0, static_cast<Id>(t.size() - 1));
  for (int n = 0; n < 20000; ++n) {
    const SElement x = t.decode(pick(rng)), y = t.decode(pick(rng));
    // (a, v, z)(a', v', z') = (a + a', v(X, a'X + Y) + v', z + z' + beta(moved, v'))
    const CubicVector moved = substitute_unitriangular(x.v, y.a, 7);
    SElement r;
    r.a = f.add(x.a, y.a);
    for (int i = 0; i < 4; ++i) r.v.c[i] = f.add(moved.c[i], y.v.c[i]);
    r.z = f.reduce(static_cast<long long>(x.z) + y.z + m.beta(moved, y.v));
    CHECK(t.decode(t.mul(t.encode(x), t.encode(y))) == r);
    CHECK(m.s_multiply(x, y) == r);
  }
}

TEST_CASE("S is associative and has p^6 elements") {
  const PolyTable t(7);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<Id> pick(0, static_cast<Id>(t.size() - 1));
  std::size_t bad = 0;
  for (int n = 0; n < 1000000; ++n) {
    const Id a = pick(rng), b = pick(rng), c = pick(rng);
    if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c))) ++bad;
  }
  CHECK(bad == 0);
  for (Id a : t.generators())
    for (Id b : t.generators())
      for (Id c : t.generators()) CHECK(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
  for (Id a = 0; a < t.size(); a += 97) {
    CHECK(t.mul(a, t.inv(a)) == t.identity());
    CHECK(t.mul(t.identity(), a) == a);
  }
  CHECK(whole_group(t).order() == 117649);
  CHECK(whole_group(PolyTable(5)).order() == 15625);
}

TEST_CASE("normal-form words round-trip") {
  const PolyTable t(5);
  for (Id a = 0; a < t.size(); ++a) REQUIRE(t.from_word(t.word(a)) == a);
  CHECK(t.word(t.x(3, 2)) == Word{0, 0, 2, 0, 0, 0});
  CHECK(t.word(t.x(6, 4)) == Word{0, 0, 0, 0, 0, 4});
}

TEST_CASE("B conjugation") {
  const PolyTable t(5);
  const PolyModel& m = t.model();
  const PrimeField& f = m.field();
  const BElement one = BElement::diagonal(f, 1, 1);
  for (Id a = 0; a < t.size(); a += 7) CHECK(m.b_conjugate(t.decode(a), one) == t.decode(a));
  for (int t0 = 1; t0 < 5; ++t0)
    for (int l = 1; l < 5; ++l)
      for (int c = 0; c < 5; ++c) {
        const SElement img = m.b_conjugate(m.generator(6, c), BElement::diagonal(f, t0, l));
        CHECK(img == m.generator(6, f.mul(c, f.mul(f.mul(t0, t0), f.pow(l, 3)))));
      }
  // Q is the a = 0 slice and is preserved.
  const BElement d(f, 2, 3, 4, 1);
  for (Id a = 0; a < t.size(); ++a) {
    const SElement s = t.decode(a);
    if (s.a == 0) CHECK(m.b_conjugate(s, d).a == 0);
  }
  CHECK_THROWS_AS(BElement(f, 1, 0, 1, 1), FieldError);
  // Conjugation by d is a homomorphism.
  std::vector<Id> map(t.size());
  for (Id a = 0; a < t.size(); ++a) map[a] = t.encode(m.b_conjugate(t.decode(a), d));
  CHECK(hom_check_map(t, t, t.generators(), map).homomorphism);
}
