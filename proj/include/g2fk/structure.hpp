#pragma once

// Structure checks on S: central series and characteristic subgroups, the
// exclusion filter over maximal subgroups, the W and U families, and the
// multiplicative orbit census on subsets of F_7^x.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "g2fk/automorphism.hpp"
#include "g2fk/check.hpp"
#include "g2fk/engine.hpp"
#include "g2fk/s_context.hpp"

namespace g2fk {

inline std::string orders_text(const std::vector<std::size_t>& v) { return join_sizes(v); }

/// Rank of a 4x4 matrix over F_p.
inline int rank4(const PrimeField& f, Mat4 a) {
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int piv = -1;
    for (int r = rank; r < 4; ++r)
      if (a[r][col]) piv = r;
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    const int inv = f.inv(a[rank][col]);
    for (int r = 0; r < 4; ++r) {
      if (r == rank || !a[r][col]) continue;
      const int factor = f.mul(a[r][col], inv);
      for (int k = 0; k < 4; ++k) a[r][k] = f.sub(a[r][k], f.mul(factor, a[rank][k]));
    }
    ++rank;
  }
  return rank;
}

inline Mat4 mat4_mul(const PrimeField& f, const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      long long s = 0;
      for (int k = 0; k < 4; ++k) s += static_cast<long long>(a[i][k]) * b[k][j];
      r[i][j] = f.reduce(s);
    }
  return r;
}

/// Ranks of (A - I)^k, k = 1..4, for the action of x_1 on Q/Z.
inline std::vector<int> x1_jordan_ranks(const SContext& c) {
  const PolyTable& t = c.t;
  const PrimeField& f = c.field();
  const Id x1 = t.x(1);
  Mat4 n{};
  for (int i = 0; i < 4; ++i) {
    const Word w = t.word(conj(t, t.x(i + 2), x1));
    for (int j = 0; j < 4; ++j) n[i][j] = f.sub(w[static_cast<std::size_t>(j + 1)], i == j ? 1 : 0);
  }
  std::vector<int> ranks;
  Mat4 pw = n;
  for (int k = 1; k <= 4; ++k) {
    ranks.push_back(rank4(f, pw));
    pw = mat4_mul(f, pw, n);
  }
  return ranks;
}

inline std::vector<CheckResult> verify_charz(const SContext& c, const std::vector<Automorphism>& diags) {
  const PolyTable& t = c.t;
  const unsigned p = c.p();
  std::vector<CheckResult> out;

  const SeriesReport up = upper_central_series(t, c.S);
  {
    const bool ok = up.terms.size() > 2 && up.terms[1] == c.Z && up.terms[2] == c.Z2 && c.Z.order() == p;
    out.push_back(make_check("structure.charz.a", ok, "Z(S) = <x6> of order p, Z2 = <x6, x5>",
                             "upper central orders " + orders_text(up.orders()),
                             "Z(S) has order " + std::to_string(up.terms.size() > 1 ? up.terms[1].order() : 0)));
  }
  {
    const Subgroup cz2 = centralizer(t, c.S, c.Z2);
    out.push_back(make_check("structure.charz.b", cz2 == c.R, "C_S(Z2) = R = <x1, x3, x4, x5, x6>",
                             "|C_S(Z2)| = " + std::to_string(cz2.order()) + (cz2 == c.R ? ", equals R" : ", differs from R"),
                             "C_S(Z2) != R"));
  }
  {
    const Subgroup cqz2 = centralizer(t, c.Q, c.Z2);
    const Subgroup phi = frattini(t, c.S);
    IdSet qr(t.size());
    for (Id x : c.Q.elements())
      if (c.R.contains(x)) qr.insert(x);
    const bool qr_ok = qr == c.Z4.set();
    const bool ea = is_elementary_abelian(t, c.Z3) && c.Z3.order() == ipow(p, 3);
    const bool nonab = !is_abelian(t, c.Z4);
    const bool ok = ea && cqz2 == c.Z4 && qr_ok && phi == c.Z4 && nonab && up.terms.size() > 4 && up.terms[3] == c.Z3 &&
                    up.terms[4] == c.Z4;
    out.push_back(make_check("structure.charz.c", ok,
                             "Z3 elementary abelian; Z4 = C_Q(Z2) = Q n R = Phi(S), non-abelian",
                             std::string(ea ? "Z3 elementary abelian" : "Z3 not elementary abelian") +
                                 (cqz2 == c.Z4 ? ", C_Q(Z2) = Z4" : ", C_Q(Z2) != Z4") +
                                 (qr_ok ? ", Q n R = Z4" : ", Q n R != Z4") + (phi == c.Z4 ? ", Phi(S) = Z4" : ", Phi(S) != Z4") +
                                 (nonab ? ", Z4 non-abelian" : ", Z4 abelian"),
                             "|Phi(S)| = " + std::to_string(phi.order())));
  }
  {
    // Partial: invariance under the diagonal and inner automorphisms only.
    std::size_t checked = 0;
    std::string witness;
    auto preserves = [&](auto&& phi, const Subgroup& h) {
      for (Id x : h.generators())
        if (!h.contains(phi(x))) return false;
      return true;
    };
    for (const auto& d : diags) {
      ++checked;
      for (const auto* h : {&c.Q, &c.R})
        if (!preserves(d, *h) && witness.empty()) witness = d.name;
    }
    for (Id s : t.generators()) {
      ++checked;
      auto inner = [&](Id x) { return conj(t, x, s); };
      for (const auto* h : {&c.Q, &c.R})
        if (!preserves(inner, *h) && witness.empty()) witness = "c_" + format_word(t.word(s));
    }
    out.push_back(make_check("structure.charz.d", witness.empty(),
                             "Q and R invariant under every available automorphism (partial instance check)",
                             std::to_string(checked) + " automorphisms preserve Q and R", witness));
  }
  {
    const auto normals = bounded_normal_subgroups(t, ipow(p, 4));
    const bool ok = normals.size() == 4 && normals[0] == c.Z && normals[1] == c.Z2 && normals[2] == c.Z3 &&
                    normals[3] == c.Z4;
    std::vector<std::size_t> orders;
    for (const auto& n : normals) orders.push_back(n.order());
    out.push_back(make_check("structure.charz.e", ok, "nontrivial normal subgroups of order <= p^4: Z1, Z2, Z3, Z4",
                             std::to_string(normals.size()) + " found with orders " + orders_text(orders),
                             "orders " + orders_text(orders)));
  }
  {
    const auto ranks = x1_jordan_ranks(c);
    const bool ok = ranks == std::vector<int>{3, 2, 1, 0};
    std::string r = "(";
    for (std::size_t i = 0; i < ranks.size(); ++i) r += (i ? ", " : "") + std::to_string(ranks[i]);
    r += ")";
    out.push_back(make_check("structure.charz.f", ok, "ranks of (A - 1)^k on Q/Z: (3, 2, 1, 0)", r, "ranks " + r));
  }
  return out;
}

inline std::vector<CheckResult> verify_series_and_exponent(const SContext& c) {
  const PolyTable& t = c.t;
  const unsigned p = c.p();
  std::vector<CheckResult> out;
  {
    const bool extra = is_extraspecial(t, c.Q);
    const std::size_t exp = exponent(t, c.Q);
    out.push_back(make_check("structure.q_extraspecial", extra && c.Q.order() == ipow(p, 5) && exp == p,
                             "Q extraspecial of order p^5 and exponent p",
                             std::string(extra ? "extraspecial" : "not extraspecial") + ", order " +
                                 std::to_string(c.Q.order()) + ", exponent " + std::to_string(exp),
                             "exponent " + std::to_string(exp)));
  }
  {
    const SeriesReport up = upper_central_series(t, c.S);
    const SeriesReport low = lower_central_series(t, c.S);
    bool same = up.terms.size() == low.terms.size();
    for (std::size_t i = 0; same && i < up.terms.size(); ++i) same = up.terms[i] == low.terms[i];
    const std::vector<std::size_t> expect{1, p, ipow(p, 2), ipow(p, 3), ipow(p, 4), ipow(p, 6)};
    const bool ok = same && up.orders() == expect && up.nilpotency_class() == 5 && is_maximal_class(up, p);
    out.push_back(make_check("structure.central_series", ok,
                             "upper = lower, orders " + orders_text(expect) + ", class 5, maximal class",
                             std::string(same ? "upper = lower" : "upper != lower") + ", orders " + orders_text(up.orders()) +
                                 ", class " + std::to_string(up.nilpotency_class()),
                             "lower orders " + orders_text(low.orders())));
  }
  {
    const auto census = order_census(t, c.S);
    std::size_t exp = 1;
    for (auto [o, n] : census) exp = std::max(exp, o);
    if (p >= 7) {
      out.push_back(make_check("structure.exponent", exp == p, "exponent " + std::to_string(p),
                               "exponent " + std::to_string(exp), "an element of order " + std::to_string(exp)));
    } else {
      std::size_t mismatch = 0;
      Id first = 0;
      for (Id x = 0; x < t.size(); ++x) {
        const bool outside = !c.Q.contains(x) && !c.R.contains(x);
        if ((element_order(t, x) == p * p) != outside && mismatch++ == 0) first = x;
      }
      const std::size_t outside_count = c.S.order() - c.Q.order() - c.R.order() + c.Z4.order();
      out.push_back(make_check("structure.exponent", exp == p * p && mismatch == 0,
                               "exponent " + std::to_string(p * p) + ", order-" + std::to_string(p * p) +
                                   " elements = S \\ (Q u R)",
                               "exponent " + std::to_string(exp) + ", " +
                                   std::to_string(census.count(p * p) ? census.at(p * p) : 0) + " elements of order " +
                                   std::to_string(p * p) + ", |S \\ (Q u R)| = " + std::to_string(outside_count),
                               "x = " + format_word(t.word(first))));
    }
  }
  {
    const PolyModel& m = t.model();
    const PrimeField& f = m.field();
    const auto kernel = m.action_kernel();
    bool shape = kernel.size() == p - 1;
    for (const auto& k : kernel) {
      const Mat2& a = k.matrix();
      const int mu = a(0, 0);
      if (a(1, 1) != mu || a(0, 1) || a(1, 0) || k.t() != f.inv(f.pow(mu, 3))) shape = false;
    }
    out.push_back(make_check("structure.kernel", shape, std::to_string(p - 1) + " elements (mu^-3, mu I)",
                             std::to_string(kernel.size()) + " elements" + (shape ? ", all of the form (mu^-3, mu I)" : ""),
                             "kernel size " + std::to_string(kernel.size())));
  }
  return out;
}

/// For maximal X != Q: Phi(X) = Z3 and [Z3, X] = Z2. For X not in {Q, R}:
/// Z4 is the only order-p^4 subgroup of X centralizing Z2.
inline std::vector<CheckResult> verify_z4char(const SContext& c, const std::vector<Subgroup>& maxes) {
  const PolyTable& t = c.t;
  std::size_t phi_ok = 0, phi_total = 0, uniq_ok = 0, uniq_total = 0;
  std::string phi_witness, uniq_witness;
  for (std::size_t i = 0; i < maxes.size(); ++i) {
    const Subgroup& x = maxes[i];
    if (x == c.Q) continue;
    ++phi_total;
    const Subgroup phi = frattini(t, x);
    const Subgroup br = commutator_subgroup(t, c.Z3, x);
    if (phi == c.Z3 && br == c.Z2) ++phi_ok;
    else if (phi_witness.empty()) phi_witness = "maximal #" + std::to_string(i);
    if (x == c.R) continue;
    ++uniq_total;
    std::size_t hits = 0;
    bool hit_is_z4 = true;
    for (const Subgroup& y : maximal_subgroups(t, x)) {
      bool centralizes = true;
      for (Id a : y.generators())
        for (Id b : c.Z2.generators())
          if (t.mul(a, b) != t.mul(b, a)) centralizes = false;
      if (centralizes) {
        ++hits;
        if (!(y == c.Z4)) hit_is_z4 = false;
      }
    }
    if (hits == 1 && hit_is_z4) ++uniq_ok;
    else if (uniq_witness.empty()) uniq_witness = "maximal #" + std::to_string(i) + " has " + std::to_string(hits);
  }
  return {make_check("structure.z4char.phi", phi_ok == phi_total,
                     "Phi(X) = Z3 and [Z3, X] = Z2 for all " + std::to_string(phi_total) + " maximal X != Q",
                     std::to_string(phi_ok) + " of " + std::to_string(phi_total), phi_witness),
          make_check("structure.z4char.unique", uniq_ok == uniq_total,
                     "Z4 unique order-p^4 subgroup centralizing Z2 in all " + std::to_string(uniq_total) +
                         " maximal X not in {Q, R}",
                     std::to_string(uniq_ok) + " of " + std::to_string(uniq_total), uniq_witness)};
}

/// Does [g, a] lie in target for every generator a? Valid as a test of
/// [g, A] <= target when target is normalized by A.
template <GroupTable G>
bool brackets_into(const G& g, Id x, std::span<const Id> gens, const Subgroup& target) {
  for (Id a : gens)
    if (!target.contains(comm(g, x, a))) return false;
  return true;
}

/// Searches N_S(E) \ E in id order for g with [g, E] <= F Phi(E) and
/// [g, F] <= Phi(E). Throws when E is self-normalizing.
template <GroupTable G>
std::optional<Id> exclusion_filter(const G& g, const Subgroup& s, const Subgroup& e, const Subgroup& f) {
  if (!f.is_subgroup_of(e)) throw GroupError("filter needs F <= E");
  const Subgroup n = normalizer(g, s, e);
  if (n.order() == e.order()) throw GroupError("filter inapplicable (E self-normalizing)");
  const Subgroup phi = frattini(g, e);
  const Subgroup fphi = join(g, f, phi);
  bool fphi_normal = true;
  for (Id a : e.generators())
    for (Id b : fphi.generators())
      if (!fphi.contains(conj(g, b, a))) fphi_normal = false;
  // Without normality fall back to every element of E.
  const std::span<const Id> e_test = fphi_normal ? e.generators() : e.elements();
  for (Id x : n.elements()) {
    if (e.contains(x)) continue;
    if (brackets_into(g, x, e_test, fphi) && brackets_into(g, x, f.generators(), phi)) return x;
  }
  return std::nullopt;
}

/// Subgroups of E that are characteristic for structural reasons: Z(E),
/// Phi(E), and the centralizer in E of [Phi(E), E] when it is the unique
/// maximal subgroup of E centralizing [Phi(E), E].
struct Candidate {
  std::string name;
  Subgroup f;
};

template <GroupTable G>
std::vector<Candidate> characteristic_candidates(const G& g, const Subgroup& e) {
  std::vector<Candidate> out;
  out.push_back({"Z(E)", center(g, e)});
  const Subgroup phi = frattini(g, e);
  out.push_back({"Phi(E)", phi});
  const Subgroup k = commutator_subgroup(g, phi, e);
  std::vector<Subgroup> hits;
  for (const Subgroup& m : maximal_subgroups(g, e)) {
    bool centralizes = true;
    for (Id a : m.generators())
      for (Id b : k.generators())
        if (g.mul(a, b) != g.mul(b, a)) centralizes = false;
    if (centralizes) hits.push_back(m);
  }
  if (hits.size() == 1) out.push_back({"C_E([Phi(E),E])", hits.front()});
  return out;
}

struct MaximalScanEntry {
  std::string label;  // "Q", "R" or "M<i>"
  bool survives = true;
  std::string witness;
};

inline std::vector<MaximalScanEntry> scan_maximals(const SContext& c, const std::vector<Subgroup>& maxes) {
  std::vector<MaximalScanEntry> out;
  std::size_t other = 0;
  for (const Subgroup& e : maxes) {
    MaximalScanEntry entry;
    entry.label = e == c.Q ? "Q" : e == c.R ? "R" : "M" + std::to_string(++other);
    for (const Candidate& cand : characteristic_candidates(c.t, e)) {
      const auto w = exclusion_filter(c.t, c.S, e, cand.f);
      if (w) {
        entry.survives = false;
        entry.witness = "F=" + cand.name + " (order " + std::to_string(cand.f.order()) + "), g=" + format_word(c.t.word(*w));
        break;
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

inline CheckResult scan_maximals_check(const SContext& c, const std::vector<Subgroup>& maxes) {
  const auto scan = scan_maximals(c, maxes);
  std::string survivors, log;
  bool ok = scan.size() == c.p() + 1;
  for (const auto& e : scan) {
    if (e.survives) survivors += (survivors.empty() ? "" : ", ") + e.label;
    else log += (log.empty() ? "" : "; ") + e.label + ": " + e.witness;
    const bool should = e.label == "Q" || e.label == "R";
    if (should != e.survives) ok = false;
  }
  CheckResult r = make_check("structure.scan_maximals", ok, "survivors {Q, R} of " + std::to_string(c.p() + 1),
                             "survivors {" + survivors + "}; eliminated " + log, "survivors {" + survivors + "}");
  return r;
}

/// The subgroups W_x = <Z, x> for x of order p outside Q u R.
struct WFamily {
  std::vector<std::vector<Id>> members;
  std::vector<Id> rep;
  std::vector<std::int32_t> index_of;  // generating element -> member, -1 otherwise
  std::vector<std::size_t> generating;  // generating elements per member
  std::vector<int> orbit;               // Delta-orbit per member
  std::vector<std::size_t> orbit_sizes;
  std::vector<std::size_t> inner_orbit_size;  // |W^S| per member
  std::vector<int> fiber;                     // label of W Phi(S)
};

/// Orbits of the members under a set of automorphisms given as element maps.
template <class Map>
std::vector<int> member_orbits(const WFamily& w, const std::vector<Map>& gens, std::vector<std::size_t>& sizes) {
  std::vector<int> orbit(w.members.size(), -1);
  sizes.clear();
  for (std::size_t start = 0; start < w.members.size(); ++start) {
    if (orbit[start] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    std::vector<std::size_t> queue{start};
    orbit[start] = id;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const auto& phi : gens) {
        const std::int32_t next = w.index_of[phi(w.rep[queue[head]])];
        if (next < 0) throw GroupError("automorphism image is outside the W family");
        if (orbit[static_cast<std::size_t>(next)] < 0) {
          orbit[static_cast<std::size_t>(next)] = id;
          queue.push_back(static_cast<std::size_t>(next));
        }
      }
    sizes.push_back(queue.size());
  }
  return orbit;
}

/// Builds the W family at p = 7 with its Delta-orbits, Delta being generated
/// by Inn(S) and c_d for d = (g, diag(g, 1)) with g a generator of F_p^x.
inline WFamily build_w_family(const SContext& c) {
  const PolyTable& t = c.t;
  const unsigned p = c.p();
  if (p != 7) throw GroupError("W family requires p = 7: at p = 5 the elements outside Q and R have order 25");
  WFamily w;
  w.index_of.assign(t.size(), -1);
  const Id z = t.x(6);
  for (Id x = 0; x < t.size(); ++x) {
    if (c.Q.contains(x) || c.R.contains(x) || w.index_of[x] >= 0) continue;
    if (element_order(t, x) != p) continue;
    const auto idx = static_cast<std::int32_t>(w.members.size());
    std::vector<Id> elems;
    std::size_t gen = 0;
    Id xi = t.identity();
    for (unsigned i = 0; i < p; ++i) {
      Id e = xi;
      for (unsigned j = 0; j < p; ++j) {
        elems.push_back(e);
        if (i != 0) {
          if (w.index_of[e] >= 0) throw GroupError("W subgroups overlap outside Z");
          w.index_of[e] = idx;
          ++gen;
        }
        e = t.mul(e, z);
      }
      xi = t.mul(xi, x);
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    w.members.push_back(std::move(elems));
    w.rep.push_back(x);
    w.generating.push_back(gen);
  }
  // Delta generators.
  int g = 2;
  const PrimeField& f = c.field();
  while (true) {
    bool primitive = true;
    for (unsigned k = 1; k < p - 1; ++k)
      if (f.pow(g, k) == 1) primitive = false;
    if (primitive) break;
    ++g;
  }
  const Automorphism cd = diag_aut(t, g, g);
  using Map = std::function<Id(Id)>;
  std::vector<Map> inner;
  for (Id s : t.generators()) inner.push_back([&t, s](Id x) { return conj(t, x, s); });
  std::vector<Map> delta = inner;
  delta.push_back([&cd](Id x) { return cd(x); });
  w.orbit = member_orbits(w, delta, w.orbit_sizes);
  std::vector<std::size_t> inner_sizes;
  const std::vector<int> inner_orbit = member_orbits(w, inner, inner_sizes);
  for (std::size_t i = 0; i < w.members.size(); ++i)
    w.inner_orbit_size.push_back(inner_sizes[static_cast<std::size_t>(inner_orbit[i])]);
  // W Phi(S) is determined by the line spanned by x in S/Phi(S).
  const FrattiniQuotient fq = frattini_quotient(t, c.S);
  for (Id x : w.rep) {
    auto v = fq.coordinates(x);
    const int lead = v[0] ? v[0] : v[1];
    const int inv = f.inv(lead);
    w.fiber.push_back(f.mul(v[0], inv) * static_cast<int>(p) + f.mul(v[1], inv));
  }
  return w;
}

inline std::vector<CheckResult> w_family_checks(const SContext& c) {
  const unsigned p = c.p();
  if (p != 7) return {make_skip("structure.w_family", "W family is only defined here for p = 7 (exponent p needed)")};
  const PolyTable& t = c.t;
  const WFamily w = build_w_family(c);
  std::vector<CheckResult> out;
  {
    bool sizes = true, gens = true;
    for (std::size_t i = 0; i < w.members.size(); ++i) {
      if (w.members[i].size() != p * p) sizes = false;
      if (w.generating[i] != p * p - p) gens = false;
    }
    const std::size_t outside = c.S.order() - c.Q.order() - c.R.order() + c.Z4.order();
    const std::size_t formula = outside / (p * p - p);
    out.push_back(make_check("structure.w_family.census", w.members.size() == 2058 && formula == 2058 && sizes && gens,
                             "|W| = 2058 = (7^6 - 7^5 - (7^5 - 7^4)) / 42, each of order 49 with 42 generators",
                             "|W| = " + std::to_string(w.members.size()) + (sizes ? ", all of order 49" : ", bad orders") +
                                 (gens ? ", 42 generators each" : ", bad generator counts"),
                             "|W| = " + std::to_string(w.members.size())));
  }
  {
    std::vector<std::size_t> sizes = w.orbit_sizes;
    std::sort(sizes.begin(), sizes.end());
    const bool ok = sizes == std::vector<std::size_t>(6, 343);
    out.push_back(make_check("structure.w_family.orbits", ok, "6 Delta-orbits of size 343",
                             std::to_string(sizes.size()) + " orbits of sizes " + orders_text(sizes),
                             "orbit sizes " + orders_text(sizes)));
  }
  {
    std::map<int, int> orbit_to_fiber, fiber_to_orbit;
    bool ok = true;
    for (std::size_t i = 0; i < w.members.size(); ++i) {
      const auto [a, ins_a] = orbit_to_fiber.emplace(w.orbit[i], w.fiber[i]);
      const auto [b, ins_b] = fiber_to_orbit.emplace(w.fiber[i], w.orbit[i]);
      if (a->second != w.fiber[i] || b->second != w.orbit[i]) ok = false;
    }
    out.push_back(make_check("structure.w_family.fibering", ok && orbit_to_fiber.size() == 6,
                             "same Delta-orbit iff same W Phi(S)",
                             std::to_string(orbit_to_fiber.size()) + " orbits, " + std::to_string(fiber_to_orbit.size()) +
                                 " fibers, " + (ok ? "matched" : "not matched"),
                             "orbit and fiber partitions differ"));
  }
  {
    // |N_S(W)| = |S| / |W^S|; together with W Z2 <= N_S(W) and |W Z2| = p^3
    // this gives N_S(W) = W Z2 for every member.
    std::size_t ok = 0;
    std::string witness;
    for (std::size_t i = 0; i < w.members.size(); ++i) {
      const bool z2_normalizes = std::binary_search(w.members[i].begin(), w.members[i].end(), conj(t, w.rep[i], t.x(5)));
      if (z2_normalizes && c.S.order() / w.inner_orbit_size[i] == ipow(p, 3)) ++ok;
      else if (witness.empty()) witness = "W_x for x = " + format_word(t.word(w.rep[i]));
    }
    // Literal normalizers for one member of each Delta-orbit.
    std::vector<bool> done(w.orbit_sizes.size(), false);
    for (std::size_t i = 0; i < w.members.size(); ++i) {
      const auto o = static_cast<std::size_t>(w.orbit[i]);
      if (done[o]) continue;
      done[o] = true;
      const Subgroup wi = closure(t, {w.rep[i], t.x(6)});
      const Subgroup wz2 = join(t, wi, c.Z2);
      if (!(normalizer(t, c.S, wi) == wz2) || wz2.order() != ipow(p, 3)) {
        --ok;
        if (witness.empty()) witness = "literal N_S(W) for x = " + format_word(t.word(w.rep[i]));
      }
    }
    out.push_back(make_check("structure.w_family.normalizers", ok == w.members.size(), "N_S(W) = W Z2 of order 343 for all",
                             std::to_string(ok) + " of " + std::to_string(w.members.size()), witness));
  }
  return out;
}

/// U_x = <Z2, x> for x in S \ Q: abelian iff U_x <= R iff x in R.
inline std::vector<CheckResult> u_family_checks(const SContext& c, const std::vector<Subgroup>& maxes) {
  const PolyTable& t = c.t;
  const unsigned p = c.p();
  const std::size_t p3 = ipow(p, 3);
  std::vector<std::int32_t> member(t.size(), -1);
  struct Info {
    bool abelian, in_r, extraspecial_ok, one_maximal;
    std::size_t order;
  };
  std::vector<Info> infos;
  std::size_t tested = 0, equivalent = 0, order_p_ok = 0, order_p_total = 0;
  std::string witness, shape_witness;
  for (Id x = 0; x < t.size(); ++x) {
    if (c.Q.contains(x)) continue;
    ++tested;
    std::int32_t idx = member[x];
    if (idx < 0) {
      const Subgroup u = closure(t, {t.x(5), t.x(6), x});
      Info info{is_abelian(t, u), u.is_subgroup_of(c.R), true, true, u.order()};
      if (!c.R.contains(x) && u.order() == p3) {
        const Subgroup d = derived_subgroup(t, u);
        info.extraspecial_ok = is_extraspecial(t, u) && d == c.Z && exponent(t, u) == p;
      }
      if (!c.R.contains(x)) {
        std::size_t containing = 0;
        for (const auto& m : maxes)
          if (u.is_subgroup_of(m)) ++containing;
        info.one_maximal = containing == 1;
      }
      idx = static_cast<std::int32_t>(infos.size());
      infos.push_back(info);
      // Every element of U \ Z2 generates U with Z2 when |U| = p^3.
      if (u.order() == p3)
        for (Id y : u.elements())
          if (!c.Z2.contains(y)) member[y] = idx;
    }
    const Info& info = infos[static_cast<std::size_t>(idx)];
    const bool in_r = c.R.contains(x);
    if (info.abelian == info.in_r && info.in_r == in_r) ++equivalent;
    else if (witness.empty()) witness = "x = " + format_word(t.word(x));
    if (element_order(t, x) == p) {
      ++order_p_total;
      if (info.order == p3 && (in_r || (info.extraspecial_ok && info.one_maximal))) ++order_p_ok;
      else if (shape_witness.empty()) shape_witness = "x = " + format_word(t.word(x));
    }
  }
  return {make_check("structure.u_family.equivalence", equivalent == tested,
                     "U_x abelian <=> U_x <= R <=> x in R for all x in S \\ Q",
                     std::to_string(equivalent) + " of " + std::to_string(tested) + " (" + std::to_string(infos.size()) +
                         " distinct U_x)",
                     witness),
          make_check("structure.u_family.shape", order_p_ok == order_p_total,
                     "order-p x: |U_x| = p^3; outside R extraspecial with [U_x,U_x] = Z in exactly one maximal",
                     std::to_string(order_p_ok) + " of " + std::to_string(order_p_total), shape_witness)};
}

/// Orbits of multiplication by F_7^x on the nonempty subsets of {1..6}.
struct SubsetOrbit {
  unsigned rep = 0;  // least bitmask in the orbit; bit i-1 stands for i
  std::size_t length = 0;
};

inline unsigned scale_subset(unsigned mask, unsigned a) {
  unsigned out = 0;
  for (unsigned i = 1; i <= 6; ++i)
    if (mask & (1u << (i - 1))) out |= 1u << ((a * i) % 7 - 1);
  return out;
}

inline std::vector<SubsetOrbit> subset_orbit_census() {
  std::vector<SubsetOrbit> out;
  std::vector<bool> seen(64, false);
  for (unsigned m = 1; m < 64; ++m) {
    if (seen[m]) continue;
    SubsetOrbit o{m, 0};
    for (unsigned a = 1; a <= 6; ++a) {
      const unsigned img = scale_subset(m, a);
      if (!seen[img]) {
        seen[img] = true;
        ++o.length;
      }
    }
    out.push_back(o);
  }
  return out;
}

inline std::string subset_text(unsigned mask) {
  std::string s = "{";
  for (unsigned i = 1; i <= 6; ++i)
    if (mask & (1u << (i - 1))) s += (s.size() > 1 ? "," : "") + std::to_string(i);
  return s + "}";
}

inline unsigned subset_mask(std::initializer_list<unsigned> elems) {
  unsigned m = 0;
  for (unsigned e : elems) m |= 1u << (e - 1);
  return m;
}

/// Named orbit representatives with their expected orbit lengths.
inline std::vector<std::pair<unsigned, std::size_t>> named_subset_representatives() {
  return {{subset_mask({1}), 6},          {subset_mask({1, 2}), 6},          {subset_mask({1, 3}), 6},
          {subset_mask({1, 6}), 3},       {subset_mask({1, 2, 3}), 6},       {subset_mask({1, 2, 5}), 6},
          {subset_mask({1, 2, 6}), 6},    {subset_mask({1, 2, 4}), 2},       {subset_mask({1, 2, 3, 4}), 6},
          {subset_mask({1, 2, 3, 5}), 6}, {subset_mask({1, 2, 5, 6}), 3},    {subset_mask({1, 2, 3, 4, 5}), 6},
          {subset_mask({1, 2, 3, 4, 5, 6}), 1}};
}

inline unsigned orbit_min(unsigned mask) {
  unsigned best = mask;
  for (unsigned a = 1; a <= 6; ++a) best = std::min(best, scale_subset(mask, a));
  return best;
}

inline CheckResult subset_census_check() {
  const auto orbits = subset_orbit_census();
  std::vector<std::size_t> lengths;
  std::size_t total = 0;
  for (const auto& o : orbits) {
    lengths.push_back(o.length);
    total += o.length;
  }
  std::sort(lengths.rbegin(), lengths.rend());
  const std::vector<std::size_t> expect{6, 6, 6, 6, 6, 6, 6, 6, 6, 3, 3, 2, 1};
  bool reps_ok = true;
  std::vector<unsigned> covered;
  std::string witness;
  for (const auto& [mask, len] : named_subset_representatives()) {
    const unsigned key = orbit_min(mask);
    const auto it = std::find_if(orbits.begin(), orbits.end(), [&](const SubsetOrbit& o) { return o.rep == key; });
    if (it == orbits.end() || it->length != len || std::find(covered.begin(), covered.end(), key) != covered.end()) {
      reps_ok = false;
      if (witness.empty()) witness = subset_text(mask);
    }
    covered.push_back(key);
  }
  return make_check("structure.subset_census", orbits.size() == 13 && lengths == expect && total == 63 && reps_ok,
                    "13 orbits, lengths {6^9, 3^2, 2, 1}, sum 63, named representatives match",
                    std::to_string(orbits.size()) + " orbits, lengths " + orders_text(lengths) + ", sum " +
                        std::to_string(total) + (reps_ok ? ", representatives match" : ""),
                    witness.empty() ? "lengths " + orders_text(lengths) : witness);
}

/// The commutator form on Q/Z is nondegenerate, so abelian subgroups of Q
/// containing Z have order <= p^3; cross-checked by |C_Q(x)| = p^4 for every
/// non-central x and by the explicit abelian <Z, x5, x4>.
inline CheckResult q_lagrangian_check(const SContext& c) {
  const PolyTable& t = c.t;
  const unsigned p = c.p();
  const GramForm g = commutator_gram(t);
  const int det = g.determinant();
  const auto q = c.Q.elements();
  // C_Q(x) depends only on xZ; representatives have z = 0.
  std::vector<Id> reps;
  for (Id x : q)
    if (t.decode(x).z == 0 && x != t.identity()) reps.push_back(x);
  std::vector<std::size_t> bad(worker_count(reps.size()), 0);
  std::vector<Id> first(bad.size(), 0);
  parallel_chunks(reps.size(), [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t i = b; i < e; ++i) {
      std::size_t n = 0;
      for (Id y : q) n += t.mul(reps[i], y) == t.mul(y, reps[i]);
      if (n != ipow(p, 4) && bad[w]++ == 0) first[w] = reps[i];
    }
  });
  std::size_t bad_total = 0;
  Id witness = 0;
  for (std::size_t w = 0; w < bad.size(); ++w) {
    if (bad[w] && !bad_total) witness = first[w];
    bad_total += bad[w];
  }
  const Subgroup a = closure(t, {t.x(6), t.x(5), t.x(4)});
  const bool explicit_ok = is_abelian(t, a) && a.order() == ipow(p, 3);
  return make_check("structure.q_lagrangian", det != 0 && bad_total == 0 && explicit_ok,
                    "nondegenerate form on Q/Z; |C_Q(x)| = p^4 off Z; <Z, x5, x4> abelian of order p^3",
                    "det " + std::to_string(det) + ", " + std::to_string(reps.size() - bad_total) + " of " +
                        std::to_string(reps.size()) + " cosets with |C_Q(x)| = p^4" +
                        (explicit_ok ? ", <Z, x5, x4> abelian of order p^3" : ""),
                    det == 0 ? "degenerate form" : "x = " + format_word(t.word(witness)));
}

}  // namespace g2fk
