#pragma once

// Exact algorithms on fully enumerated finite groups. Everything here works
// on any GroupTable; subgroups are passed around as Subgroup values.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <unordered_set>
#include <vector>

#include "g2fk/group.hpp"
#include "g2fk/parallel.hpp"

namespace g2fk {

/// Smallest subgroup containing gens, or nullopt once it exceeds max_order.
template <GroupTable G>
std::optional<Subgroup> closure_bounded(const G& g, std::span<const Id> gens, std::size_t max_order) {
  std::vector<Id> kept;
  for (Id x : gens)
    if (x != g.identity() && std::find(kept.begin(), kept.end(), x) == kept.end()) kept.push_back(x);
  IdSet seen(g.size());
  std::vector<Id> queue{g.identity()};
  seen.insert(g.identity());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Id e = queue[head];
    for (Id s : kept) {
      const Id n = g.mul(e, s);
      if (seen.insert(n)) {
        queue.push_back(n);
        if (queue.size() > max_order) return std::nullopt;
      }
    }
  }
  return Subgroup(std::move(seen), std::move(kept));
}

template <GroupTable G>
Subgroup closure(const G& g, std::span<const Id> gens) {
  return *closure_bounded(g, gens, g.size());
}

template <GroupTable G>
Subgroup closure(const G& g, std::initializer_list<Id> gens) {
  return closure(g, std::span<const Id>(gens.begin(), gens.size()));
}

template <GroupTable G>
Subgroup trivial_subgroup(const G& g) {
  return closure(g, std::span<const Id>{});
}

template <GroupTable G>
Subgroup whole_group(const G& g) {
  return closure(g, g.generators());
}

/// Join of two subgroups.
template <GroupTable G>
Subgroup join(const G& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Id> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return closure(g, gens);
}

/// Turns an element set that is known to be a subgroup into a Subgroup with a
/// small generating set, chosen greedily in id order.
template <GroupTable G>
Subgroup subgroup_from_set(const G& g, const IdSet& members) {
  std::vector<Id> gens;
  Subgroup cur = trivial_subgroup(g);
  for (Id x : members.to_vector()) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = closure(g, gens);
    if (!cur.set().is_subset_of(members)) throw GroupError("element set is not closed under multiplication");
  }
  if (cur.order() != members.count()) throw GroupError("element set is not a subgroup");
  return cur;
}

template <GroupTable G, class Pred>
Subgroup filter_subgroup(const G& g, const Subgroup& amb, Pred&& keep) {
  IdSet out(g.size());
  const auto elems = amb.elements();
  std::vector<std::vector<Id>> parts(worker_count(elems.size()));
  parallel_chunks(elems.size(), [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t i = b; i < e; ++i)
      if (keep(elems[i])) parts[w].push_back(elems[i]);
  });
  for (auto& part : parts)
    for (Id x : part) out.insert(x);
  return subgroup_from_set(g, out);
}

/// Elements of amb commuting with every element of targets.
template <GroupTable G>
Subgroup centralizer(const G& g, const Subgroup& amb, std::span<const Id> targets) {
  return filter_subgroup(g, amb, [&](Id x) {
    for (Id t : targets)
      if (g.mul(x, t) != g.mul(t, x)) return false;
    return true;
  });
}

template <GroupTable G>
Subgroup centralizer(const G& g, const Subgroup& amb, const Subgroup& target) {
  return centralizer(g, amb, target.generators());
}

template <GroupTable G>
Subgroup center(const G& g, const Subgroup& p) {
  return centralizer(g, p, p.generators());
}

template <GroupTable G>
Subgroup normalizer(const G& g, const Subgroup& amb, const Subgroup& h) {
  return filter_subgroup(g, amb, [&](Id x) {
    for (Id t : h.generators())
      if (!h.contains(conj(g, t, x))) return false;
    return true;
  });
}

/// Normal closure of `seed` under conjugation by `conjugators`.
template <GroupTable G>
Subgroup normal_closure(const G& g, std::span<const Id> conjugators, std::vector<Id> seed) {
  Subgroup n = closure(g, seed);
  bool grown = true;
  while (grown) {
    grown = false;
    const std::vector<Id> gens(n.generators().begin(), n.generators().end());
    for (Id x : gens) {
      for (Id c : conjugators) {
        const Id y = conj(g, x, c);
        if (!n.contains(y)) {
          seed.push_back(y);
          n = closure(g, seed);
          grown = true;
        }
      }
    }
  }
  return n;
}

/// [A,B]: the normal closure in <A,B> of the commutators of generators.
template <GroupTable G>
Subgroup commutator_subgroup(const G& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Id> seed;
  for (Id x : a.generators())
    for (Id y : b.generators()) seed.push_back(comm(g, x, y));
  std::vector<Id> conjugators(a.generators().begin(), a.generators().end());
  conjugators.insert(conjugators.end(), b.generators().begin(), b.generators().end());
  return normal_closure(g, conjugators, std::move(seed));
}

template <GroupTable G>
Subgroup derived_subgroup(const G& g, const Subgroup& p) {
  return commutator_subgroup(g, p, p);
}

/// Frattini subgroup of a p-group: [P,P] P^p.
template <GroupTable G>
Subgroup frattini(const G& g, const Subgroup& p) {
  Subgroup d = derived_subgroup(g, p);
  std::vector<Id> gens(d.generators().begin(), d.generators().end());
  for (Id x : p.elements()) {
    const Id y = power(g, x, g.prime());
    if (!d.contains(y)) {
      gens.push_back(y);
      d = closure(g, gens);
    }
  }
  return d;
}

template <GroupTable G>
std::size_t element_order(const G& g, Id x) {
  std::size_t n = 1;
  for (Id y = x; y != g.identity(); y = g.mul(y, x)) ++n;
  return n;
}

/// Maps element order to the number of elements of that order in p.
template <GroupTable G>
std::map<std::size_t, std::size_t> order_census(const G& g, const Subgroup& p) {
  const auto elems = p.elements();
  std::vector<std::map<std::size_t, std::size_t>> parts(worker_count(elems.size()));
  parallel_chunks(elems.size(), [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t i = b; i < e; ++i) ++parts[w][element_order(g, elems[i])];
  });
  std::map<std::size_t, std::size_t> out;
  for (auto& part : parts)
    for (auto [k, v] : part) out[k] += v;
  return out;
}

template <GroupTable G>
std::size_t exponent(const G& g, const Subgroup& p) {
  std::size_t e = 1;
  for (auto [order, count] : order_census(g, p)) e = std::lcm(e, order);
  return e;
}

template <GroupTable G>
bool is_abelian(const G& g, const Subgroup& p) {
  const auto gens = p.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
  return true;
}

template <GroupTable G>
bool is_elementary_abelian(const G& g, const Subgroup& p) {
  if (!is_abelian(g, p)) return false;
  for (Id x : p.generators())
    if (power(g, x, g.prime()) != g.identity()) return false;
  return true;
}

/// Z(P) = [P,P] = Phi(P).
template <GroupTable G>
bool is_special(const G& g, const Subgroup& p) {
  const Subgroup z = center(g, p);
  return z == derived_subgroup(g, p) && z == frattini(g, p) && z.order() > 1;
}

template <GroupTable G>
bool is_extraspecial(const G& g, const Subgroup& p) {
  const Subgroup z = center(g, p);
  return z.order() == g.prime() && z == derived_subgroup(g, p) && z == frattini(g, p);
}

/// A central series with the order of each term, from the bottom up.
struct SeriesReport {
  std::vector<Subgroup> terms;

  std::vector<std::size_t> orders() const {
    std::vector<std::size_t> out;
    for (const auto& t : terms) out.push_back(t.order());
    return out;
  }
  /// Number of nontrivial steps.
  std::size_t nilpotency_class() const { return terms.empty() ? 0 : terms.size() - 1; }
};

inline bool is_maximal_class(const SeriesReport& s, unsigned p) {
  if (s.terms.empty()) return false;
  std::size_t n = 0;
  for (std::size_t o = s.terms.back().order(); o > 1; o /= p) ++n;
  return n >= 2 && s.nilpotency_class() == n - 1;
}

/// 1 = Z_0 < Z_1 < ... < Z_c = P. Throws if P is not nilpotent.
template <GroupTable G>
SeriesReport upper_central_series(const G& g, const Subgroup& p) {
  SeriesReport s;
  s.terms.push_back(trivial_subgroup(g));
  while (s.terms.back().order() < p.order()) {
    const Subgroup& prev = s.terms.back();
    Subgroup next = filter_subgroup(g, p, [&](Id x) {
      for (Id y : p.generators())
        if (!prev.contains(comm(g, x, y))) return false;
      return true;
    });
    if (next.order() == prev.order()) throw GroupError("upper central series stalls: group is not nilpotent");
    s.terms.push_back(std::move(next));
  }
  return s;
}

/// Lower central series reported bottom-up: 1 = g_{c+1} < ... < g_1 = P.
template <GroupTable G>
SeriesReport lower_central_series(const G& g, const Subgroup& p) {
  std::vector<Subgroup> down{p};
  while (down.back().order() > 1) {
    Subgroup next = commutator_subgroup(g, down.back(), p);
    if (next.order() == down.back().order()) throw GroupError("lower central series stalls: group is not nilpotent");
    down.push_back(std::move(next));
  }
  SeriesReport s;
  s.terms.assign(down.rbegin(), down.rend());
  return s;
}

/// Coordinates on P/Phi(P), an F_p vector space.
struct FrattiniQuotient {
  Subgroup phi;
  std::vector<Id> basis;            // lifts of a basis of P/Phi(P)
  std::vector<std::int32_t> label;  // element id -> packed coordinate, -1 outside P
  unsigned p = 0;

  std::size_t rank() const { return basis.size(); }
  std::vector<int> coordinates(Id x) const {
    std::vector<int> c(rank());
    int packed = label.at(x);
    if (packed < 0) throw GroupError("element outside the subgroup");
    for (std::size_t i = rank(); i-- > 0;) {
      c[i] = packed % static_cast<int>(p);
      packed /= static_cast<int>(p);
    }
    return c;
  }
};

template <GroupTable G>
FrattiniQuotient frattini_quotient(const G& g, const Subgroup& p) {
  FrattiniQuotient fq;
  fq.p = g.prime();
  fq.phi = frattini(g, p);
  std::vector<Id> gens(fq.phi.generators().begin(), fq.phi.generators().end());
  Subgroup span = fq.phi;
  for (Id x : p.elements()) {
    if (span.contains(x)) continue;
    fq.basis.push_back(x);
    gens.push_back(x);
    span = closure(g, gens);
  }
  fq.label.assign(g.size(), -1);
  const std::size_t d = fq.basis.size();
  std::size_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) cells *= fq.p;
  for (std::size_t packed = 0; packed < cells; ++packed) {
    Id rep = g.identity();
    std::size_t rest = packed;
    std::vector<int> c(d);
    for (std::size_t i = d; i-- > 0;) {
      c[i] = static_cast<int>(rest % fq.p);
      rest /= fq.p;
    }
    for (std::size_t i = 0; i < d; ++i) rep = g.mul(rep, power(g, fq.basis[i], c[i]));
    for (Id f : fq.phi.elements()) fq.label[g.mul(rep, f)] = static_cast<std::int32_t>(packed);
  }
  return fq;
}

/// All maximal subgroups of a p-group: preimages of hyperplanes of P/Phi(P).
template <GroupTable G>
std::vector<Subgroup> maximal_subgroups(const G& g, const Subgroup& p) {
  const FrattiniQuotient fq = frattini_quotient(g, p);
  const std::size_t d = fq.rank();
  const int q = static_cast<int>(fq.p);
  std::vector<Subgroup> out;
  // Hyperplanes are kernels of functionals whose leading nonzero entry is 1.
  std::size_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) cells *= fq.p;
  for (std::size_t packed = 1; packed < cells; ++packed) {
    std::vector<int> f(d);
    std::size_t rest = packed;
    for (std::size_t i = d; i-- > 0;) {
      f[i] = static_cast<int>(rest % fq.p);
      rest /= fq.p;
    }
    const auto lead = std::find_if(f.begin(), f.end(), [](int c) { return c != 0; });
    if (*lead != 1) continue;
    const std::size_t l = static_cast<std::size_t>(lead - f.begin());
    // Kernel basis: e_j - f_j e_l for j != l.
    std::vector<Id> gens(fq.phi.generators().begin(), fq.phi.generators().end());
    for (std::size_t j = 0; j < d; ++j) {
      if (j == l) continue;
      gens.push_back(g.mul(fq.basis[j], power(g, fq.basis[l], (q - f[j]) % q)));
    }
    out.push_back(closure(g, gens));
  }
  return out;
}

/// Conjugacy classes of P under conjugation by P, each sorted, in order of
/// least element.
template <GroupTable G>
std::vector<std::vector<Id>> conjugacy_classes(const G& g, const Subgroup& p) {
  std::vector<std::vector<Id>> classes;
  IdSet done(g.size());
  for (Id x : p.elements()) {
    if (done.test(x)) continue;
    std::vector<Id> cls{x};
    done.insert(x);
    for (std::size_t head = 0; head < cls.size(); ++head)
      for (Id s : p.generators()) {
        const Id y = conj(g, cls[head], s);
        if (done.insert(y)) cls.push_back(y);
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Normal closure of n and x under the given conjugators, or nullopt once it
/// exceeds max_order. The visited set is closed under right multiplication by
/// the generators and under conjugation, which makes it the normal closure.
template <GroupTable G>
std::optional<Subgroup> normal_closure_bounded(const G& g, const Subgroup& n, Id x, std::span<const Id> conjugators,
                                               std::size_t max_order) {
  std::vector<Id> gens(n.generators().begin(), n.generators().end());
  gens.push_back(x);
  std::vector<Id> conj_inv;
  for (Id c : conjugators) conj_inv.push_back(g.inv(c));
  IdSet seen(g.size());
  std::vector<Id> queue{g.identity()};
  seen.insert(g.identity());
  auto visit = [&](Id y) {
    if (seen.insert(y)) queue.push_back(y);
    return queue.size() <= max_order;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Id e = queue[head];
    for (Id s : gens)
      if (!visit(g.mul(e, s))) return std::nullopt;
    for (std::size_t i = 0; i < conjugators.size(); ++i)
      if (!visit(g.mul(g.mul(conj_inv[i], e), conjugators[i]))) return std::nullopt;
  }
  return Subgroup(std::move(seen), std::move(gens));
}

/// Nontrivial normal subgroups of the whole table of order at most max_order,
/// found depth-first over class-closed joins. Sorted by (order, least element).
template <GroupTable G>
std::vector<Subgroup> bounded_normal_subgroups(const G& g, std::size_t max_order,
                                               const std::vector<std::vector<Id>>& classes) {
  std::vector<Subgroup> found;
  std::unordered_set<std::uint64_t> seen;
  std::vector<Subgroup> stack{trivial_subgroup(g)};
  while (!stack.empty()) {
    Subgroup n = std::move(stack.back());
    stack.pop_back();
    for (const auto& cls : classes) {
      if (n.contains(cls.front())) continue;
      if (n.order() + cls.size() > max_order) continue;
      auto next = normal_closure_bounded(g, n, cls.front(), g.generators(), max_order);
      if (!next) continue;
      if (!seen.insert(next->key()).second) continue;
      Subgroup compact = subgroup_from_set(g, next->set());
      found.push_back(compact);
      stack.push_back(std::move(compact));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.elements().front() < b.elements().front();
  });
  return found;
}

template <GroupTable G>
std::vector<Subgroup> bounded_normal_subgroups(const G& g, std::size_t max_order) {
  return bounded_normal_subgroups(g, max_order, conjugacy_classes(g, whole_group(g)));
}

/// Outcome of certifying a generator-image map as a homomorphism.
struct HomCheck {
  bool homomorphism = false;
  bool bijective = false;
  std::size_t image_size = 0;
  std::optional<std::pair<Id, Id>> witness;  // (generator index, element id)
  std::vector<Id> map;                        // full map on the domain
};

/// Extends the generator images through normal-form words of the domain and
/// tests f(s x) = f(s) f(x) for every standard generator s and every x.
template <WordTable G, GroupTable H>
std::vector<Id> extend_by_words(const G& dom, const H& cod, const std::array<Id, 6>& images) {
  std::vector<Id> map(dom.size());
  if constexpr (WordTable<H>) {
    // Images equal to the codomain's own standard generators: words carry over.
    if (std::equal(images.begin(), images.end(), cod.generators().begin(), cod.generators().end())) {
      parallel_chunks(dom.size(), [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t x = b; x < e; ++x) map[x] = cod.from_word(dom.word(static_cast<Id>(x)));
      });
      return map;
    }
  }
  // Word exponents lie in [0, p); tabulate the powers of each image.
  const unsigned p = dom.prime();
  std::array<std::vector<Id>, 6> powers;
  for (std::size_t k = 0; k < 6; ++k) {
    powers[k].push_back(cod.identity());
    for (unsigned e = 1; e < p; ++e) powers[k].push_back(cod.mul(powers[k].back(), images[k]));
  }
  parallel_chunks(dom.size(), [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t x = b; x < e; ++x) {
      const Word w = dom.word(static_cast<Id>(x));
      Id acc = cod.identity();
      for (std::size_t k = 0; k < 6; ++k)
        if (w[k] != 0) acc = cod.mul(acc, powers[k][static_cast<std::size_t>(w[k])]);
      map[x] = acc;
    }
  });
  return map;
}

template <GroupTable G, GroupTable H>
HomCheck hom_check_map(const G& dom, const H& cod, std::span<const Id> dom_gens, std::vector<Id> map) {
  HomCheck r;
  r.map = std::move(map);
  std::vector<std::optional<std::pair<Id, Id>>> first(worker_count(dom.size()));
  parallel_chunks(dom.size(), [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t x = b; x < e && !first[w]; ++x)
      for (std::size_t k = 0; k < dom_gens.size(); ++k) {
        const Id s = dom_gens[k];
        if (r.map[dom.mul(s, static_cast<Id>(x))] != cod.mul(r.map[s], r.map[x])) {
          first[w] = std::pair<Id, Id>{static_cast<Id>(k), static_cast<Id>(x)};
          break;
        }
      }
  });
  for (auto& f : first)
    if (f) {
      r.witness = f;
      break;
    }
  r.homomorphism = !r.witness.has_value();
  IdSet img(cod.size());
  for (Id y : r.map) img.insert(y);
  r.image_size = img.count();
  r.bijective = r.image_size == dom.size() && dom.size() == cod.size();
  return r;
}

template <WordTable G, GroupTable H>
HomCheck hom_check(const G& dom, const H& cod, const std::array<Id, 6>& images) {
  return hom_check_map(dom, cod, dom.generators(), extend_by_words(dom, cod, images));
}

}  // namespace g2fk
