#pragma once

// Automorphisms of S induced by B = B_0 Q, their actions on sections of S,
// the commutator form on Q/Z, and the generating-pair count for R.

#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "g2fk/check.hpp"
#include "g2fk/engine.hpp"
#include "g2fk/s_context.hpp"

namespace g2fk {

/// Generator images plus the full carrier permutation. Only certified
/// automorphisms are used in scans.
struct Automorphism {
  std::string name;
  std::array<Id, 6> images{};
  std::vector<Id> perm;
  bool certified = false;

  Id operator()(Id x) const { return perm[x]; }
};

/// Certifies a full map as an automorphism: it must be a bijective
/// homomorphism and agree with the extension of its generator images.
template <WordTable G>
Automorphism certify_map(const G& g, std::string name, std::vector<Id> map) {
  Automorphism a;
  a.name = std::move(name);
  for (std::size_t k = 0; k < 6; ++k) a.images[k] = map[g.generators()[k]];
  const std::vector<Id> ext = extend_by_words(g, g, a.images);
  const HomCheck h = hom_check_map(g, g, g.generators(), std::move(map));
  a.perm = h.map;
  a.certified = h.homomorphism && h.bijective && ext == a.perm;
  return a;
}

/// psi after phi: x -> psi(phi(x)). Certified when both factors are.
inline Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  Automorphism c;
  c.name = psi.name + " o " + phi.name;
  c.perm.resize(phi.perm.size());
  for (std::size_t x = 0; x < c.perm.size(); ++x) c.perm[x] = psi.perm[phi.perm[x]];
  for (std::size_t k = 0; k < 6; ++k) c.images[k] = psi.perm[phi.images[k]];
  c.certified = phi.certified && psi.certified;
  return c;
}

/// c_s: x -> s^-1 x s.
inline Automorphism inner_aut(const PolyTable& t, Id s) {
  std::vector<Id> map(t.size());
  const Id si = t.inv(s);
  for (Id x = 0; x < t.size(); ++x) map[x] = t.mul(t.mul(si, x), s);
  return certify_map(t, "c_" + format_word(t.word(s)), std::move(map));
}

inline Automorphism b_aut(const PolyTable& t, const BElement& d) {
  std::vector<Id> map(t.size());
  const PolyModel& m = t.model();
  parallel_chunks(t.size(), [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t x = b; x < e; ++x) map[x] = t.encode(m.b_conjugate(t.decode(static_cast<Id>(x)), d));
  });
  return certify_map(t, "c_(" + std::to_string(d.t()) + ",[" + std::to_string(d.alpha()) + ",0;" +
                            std::to_string(d.gamma()) + "," + std::to_string(d.beta()) + "])",
                     std::move(map));
}

/// c_d for d = (t, diag(lambda, 1)). Fatal when certification fails.
inline Automorphism diag_aut(const PolyTable& t, int tt, int lambda) {
  const PrimeField& f = t.model().field();
  Automorphism a = b_aut(t, BElement::diagonal(f, tt, lambda));
  if (!a.certified) throw GroupError("diagonal map failed certification: model bug");
  return a;
}

/// All (p-1)^2 diagonal maps, indexed by (t-1)(p-1) + (lambda-1).
inline std::vector<Automorphism> all_diag_auts(const PolyTable& t) {
  std::vector<Automorphism> out;
  const int p = static_cast<int>(t.prime());
  for (int tt = 1; tt < p; ++tt)
    for (int l = 1; l < p; ++l) out.push_back(diag_aut(t, tt, l));
  return out;
}

inline CheckResult diag_certified_check(const SContext& c, const std::vector<Automorphism>& diags) {
  const std::size_t expected = (c.p() - 1) * (c.p() - 1);
  std::size_t ok = 0;
  std::string witness;
  for (const auto& a : diags) {
    if (a.certified) ++ok;
    else if (witness.empty()) witness = a.name;
  }
  return make_check("aut.diag_certified", ok == expected && diags.size() == expected,
                    std::to_string(expected) + " certified", std::to_string(ok) + " certified", witness);
}

/// c_d fixes x_6(1) exactly when t^2 lambda^3 = 1.
inline CheckResult center_criterion_scan(const SContext& c) {
  const PrimeField& f = c.field();
  const int p = f.p;
  std::size_t agree = 0, centralizing = 0;
  std::string witness;
  for (int tt = 1; tt < p; ++tt)
    for (int l = 1; l < p; ++l) {
      const PolyModel& m = c.t.model();
      const bool fixes = m.b_conjugate(m.generator(6, 1), BElement::diagonal(f, tt, l)) == m.generator(6, 1);
      const bool formula = f.mul(f.mul(tt, tt), f.pow(l, 3)) == 1;
      if (fixes == formula) ++agree;
      else if (witness.empty()) witness = "(t,lambda)=(" + std::to_string(tt) + "," + std::to_string(l) + ")";
      if (fixes) ++centralizing;
    }
  const std::size_t n = static_cast<std::size_t>((p - 1) * (p - 1));
  return make_check("aut.center_criterion", agree == n, std::to_string(n) + " of " + std::to_string(n) + " agree",
                    std::to_string(agree) + " of " + std::to_string(n) + " agree (" + std::to_string(centralizing) +
                        " centralize x_6)",
                    witness);
}

/// The scalar s with phi(x) in x^s N for every x in the cyclic section <x>N/N,
/// or -1 when there is none.
inline int induced_scalar(const PolyTable& t, const Automorphism& phi, Id x, const Subgroup& n) {
  const int p = static_cast<int>(t.prime());
  int s = -1;
  for (int k = 1; k < p && s < 0; ++k)
    if (n.contains(t.mul(t.inv(power(t, x, k)), phi(x)))) s = k;
  if (s < 0) return -1;
  for (int j = 1; j < p; ++j)
    if (!n.contains(t.mul(t.inv(power(t, x, static_cast<long long>(j) * s)), phi(power(t, x, j))))) return -1;
  return s;
}

/// Scalars of c_d on Q/Z4 (via x_2) and on R/Z4 (via x_1).
inline std::pair<int, int> scalar_action_report(const SContext& c, const Automorphism& d) {
  return {induced_scalar(c.t, d, c.t.x(2), c.Z4), induced_scalar(c.t, d, c.t.x(1), c.Z4)};
}

inline CheckResult scalar_action_check(const SContext& c, const std::vector<Automorphism>& diags) {
  const int p = static_cast<int>(c.p());
  std::size_t ok = 0;
  std::string witness;
  for (int tt = 1; tt < p; ++tt)
    for (int l = 1; l < p; ++l) {
      const auto [sq, sr] = scalar_action_report(c, diags[static_cast<std::size_t>((tt - 1) * (p - 1) + (l - 1))]);
      if (sq == tt && sr == l) ++ok;
      else if (witness.empty())
        witness = "(t,lambda)=(" + std::to_string(tt) + "," + std::to_string(l) + ") gives (" + std::to_string(sq) +
                  "," + std::to_string(sr) + ")";
    }
  const std::size_t n = static_cast<std::size_t>((p - 1) * (p - 1));
  return make_check("aut.scalar_action", ok == n, "(t, lambda) on (Q/Z4, R/Z4) for all " + std::to_string(n),
                    std::to_string(ok) + " of " + std::to_string(n) + " match", witness);
}

/// Alternating form on Q/Z over the basis (x2, x3, x4, x5): [u, w] = x_6(<u,w>).
struct GramForm {
  unsigned p = 0;
  Mat4 m{};

  bool alternating() const {
    for (int i = 0; i < 4; ++i) {
      if (m[i][i] != 0) return false;
      for (int j = 0; j < 4; ++j)
        if ((m[i][j] + m[j][i]) % static_cast<int>(p) != 0) return false;
    }
    return true;
  }
  int determinant() const {
    const PrimeField f(p);
    Mat4 a = m;
    int det = 1;
    for (int col = 0; col < 4; ++col) {
      int piv = -1;
      for (int r = col; r < 4; ++r)
        if (a[r][col]) piv = r;
      if (piv < 0) return 0;
      if (piv != col) {
        std::swap(a[piv], a[col]);
        det = f.neg(det);
      }
      det = f.mul(det, a[col][col]);
      const int inv = f.inv(a[col][col]);
      for (int r = col + 1; r < 4; ++r) {
        const int factor = f.mul(a[r][col], inv);
        for (int k = col; k < 4; ++k) a[r][k] = f.sub(a[r][k], f.mul(factor, a[col][k]));
      }
    }
    return det;
  }
  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < 4; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < 4; ++j) {
        const int v = m[i][j];
        s += (j ? " " : "") + std::to_string(2 * v > static_cast<int>(p) ? v - static_cast<int>(p) : v);
      }
    }
    return s + "]";
  }
};

inline GramForm commutator_gram(const PolyTable& t) {
  GramForm g;
  g.p = t.prime();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Id c = comm(t, t.x(i + 2), t.x(j + 2));
      const Word w = t.word(c);
      for (int k = 0; k < 5; ++k)
        if (w[static_cast<std::size_t>(k)] != 0) throw GroupError("commutator in Q is not central");
      g.m[i][j] = w[5];
    }
  return g;
}

/// The scalar m with a = m b entrywise, or 0 when there is none.
inline int proportionality(const PrimeField& f, const Mat4& a, const Mat4& b) {
  int m = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (b[i][j] == 0) {
        if (a[i][j] != 0) return 0;
        continue;
      }
      const int r = f.mul(a[i][j], f.inv(b[i][j]));
      if (m == 0) m = r;
      else if (r != m) return 0;
    }
  return m;
}

inline std::vector<CheckResult> gram_checks(const SContext& c) {
  const GramForm g = commutator_gram(c.t);
  const PrimeField& f = c.field();
  const PolyModel& model = c.t.model();
  Mat4 beta{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) beta[i][j] = model.beta(model.generator(i + 2, 1).v, model.generator(j + 2, 1).v);
  const int ratio = proportionality(f, g.m, beta);
  const int det = g.determinant();
  std::vector<CheckResult> out;
  out.push_back(make_check("aut.gram.form", g.alternating() && det != 0 && ratio != 0,
                           "alternating, nondegenerate, proportional to beta",
                           "gram " + g.to_string() + ", det " + std::to_string(det) + ", ratio to beta " +
                               std::to_string(f.symmetric(ratio)),
                           "gram " + g.to_string()));
  out.push_back(make_check("aut.gram.x4_x5", g.m[2][3] == 0 && g.m[0][3] != 0, "<x4,x5> = 0 and <x2,x5> != 0",
                           "<x4,x5> = " + std::to_string(g.m[2][3]) + ", <x2,x5> = " + std::to_string(f.symmetric(g.m[0][3])),
                           "[x4,x5] = x6(" + std::to_string(g.m[2][3]) + ")"));
  return out;
}

/// Matrix of the map induced on Q/Z (rows: images of x2..x5).
inline Mat4 induced_on_q_mod_z(const PolyTable& t, const Automorphism& a) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) {
    const Word w = t.word(a(t.x(i + 2)));
    if (w[0] != 0) throw GroupError("automorphism does not preserve Q");
    for (int j = 0; j < 4; ++j) m[i][j] = w[static_cast<std::size_t>(j + 1)];
  }
  return m;
}

/// The multiplier m with <u a, w a> = m <u, w>, or 0 if a is not a similitude.
inline int similitude_multiplier(const PolyTable& t, const GramForm& g, const Automorphism& a) {
  const PrimeField& f = t.model().field();
  const Mat4 m = induced_on_q_mod_z(t, a);
  Mat4 img{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      long long s = 0;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += static_cast<long long>(m[i][k]) * g.m[k][l] % f.p * m[j][l];
      img[i][j] = f.reduce(s);
    }
  return proportionality(f, img, g.m);
}

struct SimilitudeRun {
  std::size_t tested = 0, certified = 0, matching = 0;
  std::string witness;
};

/// Similitude test of the diagonal maps plus `random_count` random B elements.
inline CheckResult similitude_check(const SContext& c, const std::vector<Automorphism>& diags, std::size_t random_count,
                                    std::uint64_t seed, std::vector<Automorphism>* pool = nullptr) {
  const PrimeField& f = c.field();
  const int p = f.p;
  const GramForm g = commutator_gram(c.t);
  SimilitudeRun run;
  auto test = [&](const Automorphism& a, int t0, int alpha, int gamma, int beta) {
    ++run.tested;
    if (a.certified) ++run.certified;
    const int expect = f.mul(f.mul(t0, t0), f.pow(f.mul(alpha, beta), 3));
    const int got = similitude_multiplier(c.t, g, a);
    if (a.certified && got == expect) ++run.matching;
    else if (run.witness.empty())
      run.witness = "d=(" + std::to_string(t0) + ",[" + std::to_string(alpha) + ",0;" + std::to_string(gamma) + "," +
                    std::to_string(beta) + "]) multiplier " + std::to_string(got) + " expected " + std::to_string(expect);
  };
  for (int t0 = 1; t0 < p; ++t0)
    for (int l = 1; l < p; ++l) test(diags[static_cast<std::size_t>((t0 - 1) * (p - 1) + (l - 1))], t0, l, 0, 1);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> unit(1, p - 1), any(0, p - 1);
  for (std::size_t n = 0; n < random_count; ++n) {
    const int t0 = unit(rng), alpha = unit(rng), gamma = any(rng), beta = unit(rng);
    Automorphism a = b_aut(c.t, BElement(f, t0, alpha, gamma, beta));
    test(a, t0, alpha, gamma, beta);
    if (pool) pool->push_back(std::move(a));
  }
  return make_check("aut.similitude", run.matching == run.tested,
                    std::to_string(run.tested) + " certified similitudes with multiplier t^2 (det A)^3",
                    std::to_string(run.matching) + " of " + std::to_string(run.tested) + " (" +
                        std::to_string(run.certified) + " certified)",
                    run.witness);
}

/// Ordered pairs (x, y) of elements of r with <x, y> = r, counted by the
/// Frattini criterion: the images span r/Phi(r).
template <GroupTable G>
std::uint64_t generating_pair_count(const G& g, const Subgroup& r) {
  const FrattiniQuotient fq = frattini_quotient(g, r);
  if (fq.rank() != 2) throw GroupError("generating-pair count expects a 2-generator group");
  const int p = static_cast<int>(fq.p);
  std::vector<int> a, b;
  for (Id x : r.elements()) {
    const auto c = fq.coordinates(x);
    a.push_back(c[0]);
    b.push_back(c[1]);
  }
  const std::size_t n = a.size();
  std::vector<std::uint64_t> parts(worker_count(n), 0);
  parallel_chunks(n, [&](std::size_t lo, std::size_t hi, unsigned w) {
    std::uint64_t count = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const int ai = a[i], bi = b[i];
      for (std::size_t j = 0; j < n; ++j) count += (ai * b[j] - bi * a[j]) % p != 0;
    }
    parts[w] = count;
  });
  std::uint64_t total = 0;
  for (auto c : parts) total += c;
  return total;
}

struct PairAudit {
  std::size_t sampled = 0, agree = 0;
  std::string witness;
};

/// Literal closure of random pairs against the Frattini criterion.
template <GroupTable G>
PairAudit generating_pair_audit(const G& g, const Subgroup& r, std::size_t samples, std::uint64_t seed) {
  const FrattiniQuotient fq = frattini_quotient(g, r);
  const int p = static_cast<int>(fq.p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, r.order() - 1);
  PairAudit audit;
  for (std::size_t n = 0; n < samples; ++n) {
    const Id x = r.elements()[pick(rng)], y = r.elements()[pick(rng)];
    const auto cx = fq.coordinates(x), cy = fq.coordinates(y);
    const bool criterion = (cx[0] * cy[1] - cx[1] * cy[0]) % p != 0;
    const bool literal = closure(g, {x, y}).order() == r.order();
    ++audit.sampled;
    if (criterion == literal) ++audit.agree;
    else if (audit.witness.empty()) audit.witness = "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
  }
  return audit;
}

inline std::vector<CheckResult> generating_pair_checks(const SContext& c, std::size_t samples, std::uint64_t seed) {
  const std::uint64_t p = c.p();
  const std::uint64_t p3 = p * p * p, p4 = p3 * p, p5 = p4 * p, p7 = p5 * p * p;
  const std::uint64_t formula = (p5 - p3) * (p5 - p4);
  const std::uint64_t closed = p7 * (p * p - 1) * (p - 1);
  const std::uint64_t count = generating_pair_count(c.t, c.R);
  std::vector<CheckResult> out;
  out.push_back(make_check("aut.generating_pairs.count", count == formula && formula == closed,
                           std::to_string(formula) + " = p^7(p^2-1)(p-1) = " + std::to_string(closed),
                           std::to_string(count), "count " + std::to_string(count)));
  const PairAudit audit = generating_pair_audit(c.t, c.R, samples, seed);
  out.push_back(make_check("aut.generating_pairs.audit", audit.agree == audit.sampled,
                           std::to_string(audit.sampled) + " of " + std::to_string(audit.sampled) + " agree",
                           std::to_string(audit.agree) + " of " + std::to_string(audit.sampled) + " agree",
                           "pair " + audit.witness));
  return out;
}

/// Z(R) = Z2 and R/Z2 is extraspecial of order p^3 and exponent p.
inline CheckResult inn_r_structure(const SContext& c) {
  const Subgroup zr = center(c.t, c.R);
  const DenseTable inn = DenseTable::quotient(c.t, c.R, zr);
  const Subgroup all = whole_group(inn);
  const bool extra = is_extraspecial(inn, all);
  const std::size_t exp = exponent(inn, all);
  const bool ok = zr == c.Z2 && inn.size() == ipow(c.p(), 3) && extra && exp == c.p();
  return make_check("aut.inn_r", ok, "Z(R) = Z2, R/Z2 extraspecial of order p^3, exponent p",
                    std::string(zr == c.Z2 ? "Z(R) = Z2" : "Z(R) != Z2") + ", |R/Z(R)| = " + std::to_string(inn.size()) +
                        (extra ? ", extraspecial" : ", not extraspecial") + ", exponent " + std::to_string(exp),
                    "|Z(R)| = " + std::to_string(zr.order()));
}

/// Instances of [X, C_Aut(X)(Y)] <= C_X(Y) for X = S over the automorphisms
/// c_d c_s (d diagonal, s in S) that fix Y pointwise.
inline CheckResult ca_lemma_instance(const SContext& c, const std::vector<Automorphism>& diags, const Subgroup& y,
                                     const std::string& name) {
  const PolyTable& t = c.t;
  const Subgroup cy = centralizer(t, c.S, y);
  bool cy_normal = true;
  for (Id s : t.generators())
    for (Id z : cy.generators())
      if (!cy.contains(conj(t, z, s))) cy_normal = false;
  std::size_t fixing = 0, contained = 0;
  std::string witness;
  std::vector<std::array<Id, 6>> seen;
  for (const auto& d : diags) {
    for (Id s = 0; s < t.size(); ++s) {
      const Id si = t.inv(s);
      bool fixes = true;
      for (Id yg : y.generators())
        if (t.mul(t.mul(si, d(yg)), s) != yg) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      std::array<Id, 6> img{};
      for (std::size_t k = 0; k < 6; ++k) img[k] = t.mul(t.mul(si, d(t.generators()[k])), s);
      if (std::find(seen.begin(), seen.end(), img) != seen.end()) continue;
      seen.push_back(img);
      ++fixing;
      // C_S(Y) is normal, so [S, phi] lies in it once x^-1 phi(x) does for generators x.
      bool ok = cy_normal;
      for (std::size_t k = 0; k < 6 && ok; ++k) ok = cy.contains(t.mul(t.inv(t.generators()[k]), img[k]));
      if (ok) ++contained;
      else if (witness.empty()) witness = d.name + " then c_" + format_word(t.word(s));
    }
  }
  return make_check("aut.ca_lemma." + name, fixing > 0 && fixing == contained,
                    "[S, phi] <= C_S(" + name + ") for every available phi fixing " + name + " pointwise",
                    std::to_string(contained) + " of " + std::to_string(fixing) + " automorphisms (partial instance check)",
                    witness.empty() ? "no automorphism fixes " + name : witness);
}

/// The maps induced on S/Phi(S) in the basis (x1 Phi, x2 Phi): the diagonal
/// maps give all (p-1)^2 diagonal matrices and only the identity acts trivially.
inline CheckResult frattini_action_image(const SContext& c, const std::vector<Automorphism>& diags) {
  const PolyTable& t = c.t;
  const FrattiniQuotient fq = frattini_quotient(t, c.S);
  const int p = static_cast<int>(c.p());
  const PrimeField& f = c.field();
  // Change of basis from fq coordinates to (x1, x2).
  const auto e1 = fq.coordinates(t.x(1)), e2 = fq.coordinates(t.x(2));
  const int det = f.reduce(static_cast<long long>(e1[0]) * e2[1] - static_cast<long long>(e1[1]) * e2[0]);
  if (det == 0) throw GroupError("x1 and x2 do not span S/Phi(S)");
  const int dinv = f.inv(det);
  auto in_basis = [&](Id x) {
    const auto v = fq.coordinates(x);
    // Solve a e1 + b e2 = v.
    const int a = f.mul(dinv, f.reduce(static_cast<long long>(v[0]) * e2[1] - static_cast<long long>(v[1]) * e2[0]));
    const int b = f.mul(dinv, f.reduce(static_cast<long long>(e1[0]) * v[1] - static_cast<long long>(e1[1]) * v[0]));
    return std::array<int, 2>{a, b};
  };
  std::vector<std::array<int, 4>> images;
  bool diagonal = true;
  std::size_t trivial = 0;
  std::string witness;
  for (const auto& d : diags) {
    const auto r1 = in_basis(d(t.x(1))), r2 = in_basis(d(t.x(2)));
    const std::array<int, 4> m{r1[0], r1[1], r2[0], r2[1]};
    if (m[1] != 0 || m[2] != 0) {
      diagonal = false;
      if (witness.empty()) witness = d.name + " is not diagonal";
    }
    if (m == std::array<int, 4>{1, 0, 0, 1}) ++trivial;
    if (std::find(images.begin(), images.end(), m) == images.end()) images.push_back(m);
  }
  bool inner_trivial = true;
  for (Id s : t.generators()) {
    const Id si = t.inv(s);
    for (Id x : {t.x(1), t.x(2)})
      if (in_basis(t.mul(t.mul(si, x), s)) != in_basis(x)) inner_trivial = false;
  }
  if (!inner_trivial && witness.empty()) witness = "an inner automorphism acts nontrivially";
  const std::size_t inn = c.S.order() / c.Z.order();
  const std::size_t expected = static_cast<std::size_t>((p - 1) * (p - 1));
  bool inn_p_power = true;
  for (std::size_t o = inn; o > 1; o /= c.p())
    if (o % c.p()) inn_p_power = false;
  const bool ok = diagonal && images.size() == expected && trivial == 1 && inner_trivial && inn_p_power;
  if (!ok && witness.empty()) witness = std::to_string(images.size()) + " distinct induced maps";
  return make_check("aut.frattini_action", ok,
                    "diagonal image of order " + std::to_string(expected) + ", kernel Inn(S) of p-power order",
                    "image order " + std::to_string(images.size()) + (diagonal ? ", diagonal" : ", not diagonal") +
                        ", kernel = Inn(S) of order " + std::to_string(inn),
                    witness);
}

/// Re-certifies ceil(1%) of the pool size random composites from scratch.
inline CheckResult recertification_audit(const PolyTable& t, const std::vector<Automorphism>& pool, std::uint64_t seed) {
  const std::size_t n = std::max<std::size_t>(1, (pool.size() + 99) / 100);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t ok = 0;
  std::string witness;
  for (std::size_t i = 0; i < n; ++i) {
    const Automorphism comp = compose(pool[pick(rng)], pool[pick(rng)]);
    const Automorphism fresh = certify_map(t, comp.name, comp.perm);
    if (fresh.certified && fresh.images == comp.images) ++ok;
    else if (witness.empty()) witness = comp.name;
  }
  return make_check("aut.recert_audit", ok == n, std::to_string(n) + " composites re-certified",
                    std::to_string(ok) + " of " + std::to_string(n) + " re-certified (pool " + std::to_string(pool.size()) + ")",
                    witness);
}

}  // namespace g2fk
