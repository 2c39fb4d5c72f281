#pragma once

// The p = 3 case: S = U over F_3 in the Chevalley model, the two maximal
// subgroups Q1 and Q2, torus automorphisms and the structural fact list.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "g2fk/check.hpp"
#include "g2fk/chevalley.hpp"
#include "g2fk/engine.hpp"

namespace g2fk {

/// Exponents (i, j) with x_r(lambda) -> x_r(s^i u^j lambda), per root in
/// kRoots order. These are forced by the commutator relations of the model.
inline constexpr std::array<std::array<int, 2>, 6> kTorusCharacters{{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}}};

/// The assignment a+2b -> s u^2, a+3b -> s u^3, 2a+3b -> s^2 u^3, which does
/// not give automorphisms of this model; kept for comparison.
inline constexpr std::array<std::array<int, 2>, 6> kNaiveTorusCharacters{{{1, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 3}}};

struct TorusAut {
  int s = 1, u = 1;
  std::vector<Id> perm;
  bool certified = false;
  std::optional<std::pair<Id, Id>> witness;

  Id operator()(Id x) const { return perm[x]; }
  std::string name() const { return "t(" + std::to_string(s) + "," + std::to_string(u) + ")"; }
};

template <WordTable G>
TorusAut torus_aut(const G& g, int s, int u,
                   const std::array<std::array<int, 2>, 6>& characters = kTorusCharacters) {
  const PrimeField f(g.prime());
  TorusAut t{f.reduce(s), f.reduce(u), {}, false, {}};
  if (t.s == 0 || t.u == 0) throw FieldError("torus map needs s, u nonzero");
  std::array<int, 6> scale{};
  for (std::size_t r = 0; r < 6; ++r)
    scale[r] = f.mul(f.pow(t.s, static_cast<unsigned>(characters[r][0])), f.pow(t.u, static_cast<unsigned>(characters[r][1])));
  std::vector<Id> map(g.size());
  for (Id x = 0; x < g.size(); ++x) {
    Word w = g.word(x);
    for (std::size_t r = 0; r < 6; ++r) w[r] = f.mul(w[r], scale[r]);
    map[x] = g.from_word(w);
  }
  HomCheck h = hom_check_map(g, g, g.generators(), std::move(map));
  t.perm = std::move(h.map);
  t.certified = h.homomorphism && h.bijective;
  t.witness = h.witness;
  return t;
}

struct P3Context {
  DenseTable t;
  Subgroup S, Q1, Q2, Z;

  explicit P3Context(const ChevalleyTable& u)
      : t(DenseTable::from(u)),
        S(whole_group(t)),
        Q1(closure(t, {u.x(RootLabel::B), u.x(RootLabel::AB), u.x(RootLabel::A2B), u.x(RootLabel::A3B),
                       u.x(RootLabel::A2_3B)})),
        Q2(closure(t, {u.x(RootLabel::A), u.x(RootLabel::AB), u.x(RootLabel::A2B), u.x(RootLabel::A3B),
                       u.x(RootLabel::A2_3B)})),
        Z(center(t, S)) {}
};

inline P3Context build_p3() { return P3Context(generate_u(3)); }

struct DirectDecomposition {
  std::array<Id, 2> elementary;   // generators of the central 3^2
  std::array<Id, 2> extraspecial; // generators of 3^{1+2}_+
};

/// First central elementary abelian E of order 9 and extraspecial X of order
/// 27 and exponent 3 with E n X = 1 and EX = Q, in id order.
inline std::optional<DirectDecomposition> find_direct_decomposition(const DenseTable& t, const Subgroup& q) {
  const Subgroup z = center(t, q);
  const Subgroup d = derived_subgroup(t, q);
  std::optional<Subgroup> e;
  std::array<Id, 2> egens{};
  for (Id a : z.elements()) {
    if (d.contains(a)) continue;
    for (Id b : z.elements()) {
      if (b <= a) continue;
      const Subgroup c = closure(t, {a, b});
      bool meets = false;
      for (Id x : c.elements())
        if (x != t.identity() && d.contains(x)) meets = true;
      if (c.order() == 9 && !meets) {
        e = c;
        egens = {a, b};
        break;
      }
    }
    if (e) break;
  }
  if (!e) return std::nullopt;
  for (Id a : q.elements()) {
    if (z.contains(a)) continue;
    for (Id b : q.elements()) {
      if (b <= a || z.contains(b) || t.mul(a, b) == t.mul(b, a)) continue;
      const auto x = closure_bounded(t, std::vector<Id>{a, b}, 27);
      if (!x || x->order() != 27) continue;
      bool meets = false;
      for (Id y : x->elements())
        if (y != t.identity() && e->contains(y)) meets = true;
      if (meets || !is_extraspecial(t, *x) || exponent(t, *x) != 3) continue;
      if (join(t, *e, *x).order() != q.order()) continue;
      return DirectDecomposition{egens, {a, b}};
    }
  }
  return std::nullopt;
}

inline std::vector<CheckResult> p3_fact_suite(const P3Context& c) {
  const DenseTable& t = c.t;
  std::vector<CheckResult> out;
  const std::array<std::pair<const char*, const Subgroup*>, 2> qs{{{"Q1", &c.Q1}, {"Q2", &c.Q2}}};
  auto word_of = [&](Id x) { return format_word(t.word(x)); };

  out.push_back(make_check("p3.build", t.size() == 729 && c.Q1.order() == 243 && c.Q2.order() == 243 && !(c.Q1 == c.Q2),
                           "|S| = 729, |Q1| = |Q2| = 243, Q1 != Q2",
                           "|S| = " + std::to_string(t.size()) + ", |Q1| = " + std::to_string(c.Q1.order()) +
                               ", |Q2| = " + std::to_string(c.Q2.order()),
                           "orders differ"));
  {
    std::string actual, witness;
    bool ok = true;
    for (const auto& [name, q] : qs) {
      const std::size_t exp = exponent(t, *q);
      const std::size_t zo = center(t, *q).order();
      const std::size_t dq = derived_subgroup(t, *q).order();
      const auto dec = find_direct_decomposition(t, *q);
      const bool good = exp == 3 && zo == 27 && dq == 3 && dec;
      ok = ok && good;
      actual += std::string(actual.empty() ? "" : "; ") + name + ": exponent " + std::to_string(exp) + ", |Z| = " +
                std::to_string(zo) + ", |Q'| = " + std::to_string(dq);
      if (dec)
        actual += ", 3^2 = <" + word_of(dec->elementary[0]) + ", " + word_of(dec->elementary[1]) + ">, 3^{1+2} = <" +
                  word_of(dec->extraspecial[0]) + ", " + word_of(dec->extraspecial[1]) + ">";
      if (!good && witness.empty()) witness = name;
    }
    out.push_back(make_check("p3.a", ok, "Q1, Q2 = 3^2 x 3^{1+2}_+: exponent 3, |Z| = 27, |Q'| = 3", actual, witness));
  }
  const auto census = order_census(t, c.S);
  {
    std::size_t cube_trivial = 0, in_union = 0, mismatch = 0, outside_not_9 = 0;
    Id first = 0, first9 = 0;
    for (Id x = 0; x < t.size(); ++x) {
      const bool in = c.Q1.contains(x) || c.Q2.contains(x);
      const std::size_t o = element_order(t, x);
      cube_trivial += o <= 3;
      in_union += in;
      if ((o <= 3) != in && mismatch++ == 0) first = x;
      if (!in && o != 9 && outside_not_9++ == 0) first9 = x;
    }
    std::size_t meet = 0;
    for (Id x : c.Q1.elements()) meet += c.Q2.contains(x);
    out.push_back(make_check("p3.b", mismatch == 0 && in_union == 486 - meet,
                             "{g : g^3 = 1} = Q1 u Q2 with |Q1 u Q2| = 486 - |Q1 n Q2|",
                             std::to_string(cube_trivial) + " elements of order dividing 3, |Q1 u Q2| = " +
                                 std::to_string(in_union) + ", |Q1 n Q2| = " + std::to_string(meet),
                             "x = " + word_of(first)));
    out.push_back(make_check("p3.c", outside_not_9 == 0, "every element outside Q1 u Q2 has order 9",
                             std::to_string(t.size() - in_union) + " elements outside, " +
                                 std::to_string(census.count(9) ? census.at(9) : 0) + " of order 9",
                             "x = " + word_of(first9)));
  }
  {
    const auto maxes = maximal_subgroups(t, c.S);
    std::size_t others = 0, ok = 0;
    std::string witness;
    for (std::size_t i = 0; i < maxes.size(); ++i) {
      if (maxes[i] == c.Q1 || maxes[i] == c.Q2) continue;
      ++others;
      if (c.Z.is_subgroup_of(derived_subgroup(t, maxes[i]))) ++ok;
      else if (witness.empty()) witness = "maximal #" + std::to_string(i);
    }
    out.push_back(make_check("p3.d", ok == others && maxes.size() == 13, "Z(S) <= M' for each of the 11 other maximals (13 in all)",
                             std::to_string(ok) + " of " + std::to_string(others) + " (" + std::to_string(maxes.size()) +
                                 " maximals)",
                             witness.empty() ? std::to_string(maxes.size()) + " maximals" : witness));
  }
  {
    std::string ea, fa, ew, fw;
    for (const auto& [name, q] : qs) {
      const Subgroup phi = frattini(t, *q);
      const Subgroup qss = commutator_subgroup(t, commutator_subgroup(t, *q, c.S), c.S);
      const Subgroup zs = commutator_subgroup(t, center(t, *q), c.S);
      const bool e_ok = !qss.is_subgroup_of(phi);
      const bool f_ok = !zs.is_subgroup_of(phi);
      ea += std::string(ea.empty() ? "" : "; ") + name + ": |[Q,S,S]| = " + std::to_string(qss.order()) +
            (e_ok ? ", not in Phi" : ", in Phi");
      fa += std::string(fa.empty() ? "" : "; ") + name + ": |[Z(Q),S]| = " + std::to_string(zs.order()) +
            (f_ok ? ", not in Phi" : ", in Phi");
      if (!e_ok && ew.empty()) ew = name;
      if (!f_ok && fw.empty()) fw = name;
    }
    out.push_back(make_check("p3.e", ew.empty(), "[Q_i, S, S] not contained in Phi(Q_i)", ea, ew));
    out.push_back(make_check("p3.f", fw.empty(), "[Z(Q_i), S] not contained in Phi(Q_i)", fa, fw));
  }
  out.push_back(make_skip("p3.g", "full Aut(S) out of scope"));
  {
    std::string actual, witness;
    std::size_t maps = 0;
    for (int s = 1; s <= 2; ++s)
      for (int u = 1; u <= 2; ++u) {
        if (s == 1 && u == 1) continue;
        const TorusAut tor = torus_aut(t, s, u);
        if (!tor.certified) {
          if (witness.empty()) witness = tor.name() + " not certified";
          continue;
        }
        bool involution = true;
        for (Id g : t.generators()) involution = involution && tor(tor(g)) == g;
        if (!involution) continue;
        ++maps;
        for (const auto& [name, q] : qs) {
          std::size_t fixed = 0;
          for (Id x : q->elements()) fixed += tor(x) == x;
          actual += std::string(actual.empty() ? "" : "; ") + tor.name() + " on " + name + ": " + std::to_string(fixed);
          if (fixed != 3 && fixed != 9 && witness.empty()) witness = tor.name() + " on " + name;
        }
      }
    out.push_back(make_check("p3.h", witness.empty() && maps == 3, "|C_{Q_i}(t)| in {3, 9} for the 3 order-2 torus maps",
                             actual, witness.empty() ? std::to_string(maps) + " order-2 maps" : witness));
  }
  {
    IdSet meet(t.size());
    for (Id x : c.Q1.elements())
      if (c.Q2.contains(x)) meet.insert(x);
    const Subgroup m = subgroup_from_set(t, meet);
    const bool ab = is_abelian(t, m);
    out.push_back(make_check("p3.q_intersection", ab && m.order() == 81, "Q1 n Q2 abelian of order 81",
                             "order " + std::to_string(m.order()) + (ab ? ", abelian" : ", non-abelian"),
                             "order " + std::to_string(m.order())));
  }
  {
    // Every nontrivial normal subgroup of a p-group meets the center.
    const auto normals = bounded_normal_subgroups(t, 81);
    std::size_t meeting = 0;
    for (const auto& n : normals) {
      bool meets = false;
      for (Id x : c.Z.elements())
        if (x != t.identity() && n.contains(x)) meets = true;
      meeting += meets;
    }
    const Subgroup expected_z = closure(t, {t.from_word({0, 0, 0, 1, 0, 0}), t.from_word({0, 0, 0, 0, 0, 1})});
    out.push_back(make_check("p3.center", c.Z == expected_z && meeting == normals.size(),
                             "Z(S) = <x_a2b, x_2a3b> of order 9, meeting every nontrivial normal subgroup of order <= 81",
                             "|Z(S)| = " + std::to_string(c.Z.order()) + (c.Z == expected_z ? " = <x_a2b, x_2a3b>" : "") +
                                 ", meets " + std::to_string(meeting) + " of " + std::to_string(normals.size()),
                             "|Z(S)| = " + std::to_string(c.Z.order())));
  }
  {
    std::size_t certified = 0;
    std::string witness;
    for (int s = 1; s <= 2; ++s)
      for (int u = 1; u <= 2; ++u) {
        if (s == 1 && u == 1) continue;
        const TorusAut tor = torus_aut(t, s, u);
        if (tor.certified) ++certified;
        else if (witness.empty()) witness = tor.name();
      }
    out.push_back(make_check("p3.torus_certified", certified == 3, "3 nontrivial torus maps certified",
                             std::to_string(certified) + " certified", witness));
  }
  {
    // The naive root characters, reported when they fail certification.
    std::size_t failing = 0;
    std::string witness;
    for (int s = 1; s <= 2; ++s)
      for (int u = 1; u <= 2; ++u) {
        if (s == 1 && u == 1) continue;
        const TorusAut tor = torus_aut(t, s, u, kNaiveTorusCharacters);
        if (tor.certified) continue;
        ++failing;
        if (witness.empty() && tor.witness)
          witness = tor.name() + " breaks f(g x) = f(g) f(x) at generator " + std::to_string(tor.witness->first) +
                    ", x = " + word_of(tor.witness->second);
      }
    const std::string expected = "torus characters a+2b -> su^2, a+3b -> su^3, 2a+3b -> s^2u^3 give automorphisms";
    if (failing == 0)
      out.push_back(make_check("p3.torus_characters", true, expected, "all 3 certified", ""));
    else
      out.push_back(make_finding("p3.torus_characters", expected,
                                 std::to_string(failing) +
                                     " of 3 fail; certified characters are a+b -> su, a+2b -> s^2u, a+3b -> s^3u, "
                                     "2a+3b -> s^3u^2",
                                 witness));
  }
  return out;
}

}  // namespace g2fk
