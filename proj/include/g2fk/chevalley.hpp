#pragma once

// The unipotent group U of G_2(p) generated by six root-group matrices in
// the 8-dimensional representation, with normal forms in the root order
// alpha, beta, alpha+beta, alpha+2beta, alpha+3beta, 2alpha+3beta.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "g2fk/field.hpp"
#include "g2fk/group.hpp"

namespace g2fk {

enum class RootLabel : int { A = 0, B, AB, A2B, A3B, A2_3B };

inline constexpr std::array<RootLabel, 6> kRoots{RootLabel::A,   RootLabel::B,   RootLabel::AB,
                                                 RootLabel::A2B, RootLabel::A3B, RootLabel::A2_3B};

inline std::string_view root_name(RootLabel r) {
  static constexpr std::array<std::string_view, 6> names{"a", "b", "a+b", "a+2b", "a+3b", "2a+3b"};
  return names[static_cast<std::size_t>(r)];
}

/// Six parameters, one per root in the fixed order.
using RootWord = Word;

struct Mat8 {
  std::array<std::uint8_t, 64> e{};

  static Mat8 identity() {
    Mat8 m;
    for (int i = 0; i < 8; ++i) m.e[static_cast<std::size_t>(9 * i)] = 1;
    return m;
  }
  int operator()(int r, int c) const { return e[static_cast<std::size_t>(8 * r + c)]; }
  void set(int r, int c, int v) { e[static_cast<std::size_t>(8 * r + c)] = static_cast<std::uint8_t>(v); }
  friend bool operator==(const Mat8&, const Mat8&) = default;
};

struct Mat8Hash {
  std::size_t operator()(const Mat8& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : m.e) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class ChevalleyModel {
 public:
  explicit ChevalleyModel(unsigned p) : f_(p) {}

  unsigned prime() const { return static_cast<unsigned>(f_.p); }
  const PrimeField& field() const { return f_; }

  Mat8 multiply(const Mat8& a, const Mat8& b) const {
    Mat8 r;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        int s = 0;
        for (int k = 0; k < 8; ++k) s += a(i, k) * b(k, j);
        r.set(i, j, s % f_.p);
      }
    return r;
  }

  /// The printed root matrix x_r(lambda); entries are 1-based in the comments.
  Mat8 root_matrix(RootLabel r, int lambda) const {
    const int l = f_.reduce(lambda);
    const int nl = f_.neg(l);
    const int l2 = f_.mul(l, l);
    Mat8 m = Mat8::identity();
    auto put = [&](int row, int col, int v) { m.set(row - 1, col - 1, v); };
    switch (r) {
      case RootLabel::A2_3B:
        put(7, 1, nl);
        put(8, 2, l);
        break;
      case RootLabel::A3B:
        put(6, 1, nl);
        put(8, 3, l);
        break;
      case RootLabel::A2B:
        put(4, 1, nl);
        put(5, 1, l);
        put(6, 2, nl);
        put(7, 3, l);
        put(8, 1, l2);
        put(8, 4, nl);
        put(8, 5, l);
        break;
      case RootLabel::AB:
        put(3, 1, nl);
        put(4, 2, nl);
        put(5, 2, l);
        put(7, 2, l2);
        put(7, 4, nl);
        put(7, 5, l);
        put(8, 6, l);
        break;
      case RootLabel::B:
        put(3, 2, nl);
        put(7, 6, l);
        break;
      case RootLabel::A:
        put(2, 1, nl);
        put(4, 3, l);
        put(5, 3, nl);
        put(6, 3, l2);
        put(6, 4, l);
        put(6, 5, nl);
        put(8, 7, l);
        break;
    }
    return m;
  }

  Mat8 evaluate(const RootWord& w) const {
    Mat8 m = Mat8::identity();
    for (std::size_t k = 0; k < 6; ++k)
      if (w[k] != 0) m = multiply(m, root_matrix(kRoots[k], w[k]));
    return m;
  }

  /// Peels the root parameters off in order; each is read from an entry that
  /// only that root group (and none later in the order) touches. Throws when
  /// the residue is not the identity, i.e. m is not in U.
  RootWord normal_form(const Mat8& m) const {
    RootWord w{};
    Mat8 rest = m;
    static constexpr std::array<std::pair<int, int>, 6> kPivot{
        {{1, 0}, {2, 1}, {2, 0}, {3, 0}, {5, 0}, {6, 0}}};
    for (std::size_t k = 0; k < 6; ++k) {
      const auto [r, c] = kPivot[k];
      w[k] = f_.neg(rest(r, c));
      if (w[k] != 0) rest = left_root_multiply(kRoots[k], f_.neg(w[k]), rest);
    }
    if (!(rest == Mat8::identity())) throw GroupError("matrix is not an element of U");
    return w;
  }

  /// x_r(lambda) * m by row operations; root matrices are I plus a few
  /// strictly lower entries, so rows are updated bottom-up.
  Mat8 left_root_multiply(RootLabel r, int lambda, const Mat8& m) const {
    const Mat8 x = root_matrix(r, lambda);
    Mat8 out = m;
    for (int i = 7; i > 0; --i)
      for (int k = 0; k < i; ++k) {
        const int v = x(i, k);
        if (v == 0) continue;
        for (int j = 0; j < 8; ++j) out.set(i, j, (out(i, j) + v * m(k, j)) % f_.p);
      }
    return out;
  }

  Mat8 inverse(const Mat8& m) const {
    // (I + N)^-1 = sum (-N)^k for nilpotent N.
    Mat8 n = m;
    for (int i = 0; i < 8; ++i) n.set(i, i, 0);
    Mat8 neg;
    for (std::size_t i = 0; i < 64; ++i) neg.e[i] = static_cast<std::uint8_t>(f_.neg(n.e[i]));
    Mat8 acc = Mat8::identity();
    Mat8 term = Mat8::identity();
    for (int k = 1; k < 8; ++k) {
      term = multiply(term, neg);
      for (std::size_t i = 0; i < 64; ++i) acc.e[i] = static_cast<std::uint8_t>((acc.e[i] + term.e[i]) % f_.p);
    }
    return acc;
  }

 private:
  PrimeField f_;
};

/// U as a GroupTable. Ids are the mixed-radix encoding of the root word.
class ChevalleyTable {
 public:
  std::size_t size() const { return mats_.size(); }
  unsigned prime() const { return model_.prime(); }
  Id identity() const { return 0; }
  std::span<const Id> generators() const { return gens_; }
  const ChevalleyModel& model() const { return model_; }

  Id mul(Id a, Id b) const { return encode(model_.normal_form(model_.multiply(mats_[a], mats_[b]))); }
  Id inv(Id a) const { return inv_[a]; }

  Word word(Id a) const {
    Word w{};
    std::size_t rest = a;
    for (int i = 5; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(rest % prime());
      rest /= prime();
    }
    return w;
  }
  Id from_word(const Word& w) const { return encode(w); }
  Id encode(const RootWord& w) const {
    std::size_t id = 0;
    for (int c : w) id = id * prime() + static_cast<std::size_t>(model_.field().reduce(c));
    return static_cast<Id>(id);
  }
  const Mat8& matrix(Id a) const { return mats_[a]; }

  /// x_r(lambda) as an id.
  Id x(RootLabel r, int lambda = 1) const {
    RootWord w{};
    w[static_cast<std::size_t>(r)] = lambda;
    return encode(w);
  }

  /// Statistics of the generating closure that produced the table.
  std::size_t closure_size() const { return closure_size_; }

  friend ChevalleyTable generate_u(unsigned p);
  friend ChevalleyTable chevalley_from_words(unsigned p, const std::vector<std::array<std::uint8_t, 6>>& words);

 private:
  explicit ChevalleyTable(unsigned p) : model_(p) {}

  ChevalleyModel model_;
  std::vector<Mat8> mats_;
  std::vector<Id> inv_;
  std::vector<Id> gens_;
  std::size_t closure_size_ = 0;
};

/// Closes the six generators x_r(1) under multiplication, interning matrices,
/// then tags every element with its root word and certifies the tag by
/// re-evaluation. Fatal if the closure exceeds p^6.
inline ChevalleyTable generate_u(unsigned p) {
  require_supported_prime(p);
  if (p > 11) throw GroupError("full enumeration of U is limited to p <= 11");
  ChevalleyTable t(p);
  const ChevalleyModel& m = t.model_;
  std::size_t expected = 1;
  for (int i = 0; i < 6; ++i) expected *= p;

  std::vector<Mat8> gens;
  for (RootLabel r : kRoots) gens.push_back(m.root_matrix(r, 1));
  std::unordered_map<Mat8, std::uint32_t, Mat8Hash> seen;
  std::vector<Mat8> queue{Mat8::identity()};
  seen.emplace(queue.front(), 0);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const Mat8& g : gens) {
      Mat8 n = m.multiply(queue[head], g);
      if (seen.emplace(n, static_cast<std::uint32_t>(queue.size())).second) {
        queue.push_back(n);
        if (queue.size() > expected)
          throw GroupError("closure exceeds p^6 elements: matrix transcription error");
      }
    }
  t.closure_size_ = queue.size();
  if (queue.size() != expected) throw GroupError("closure has " + std::to_string(queue.size()) + " elements, expected p^6");

  t.mats_.resize(expected);
  std::vector<bool> filled(expected, false);
  for (const Mat8& mat : queue) {
    const RootWord w = m.normal_form(mat);
    if (!(m.evaluate(w) == mat)) throw GroupError("normal form does not re-evaluate to its matrix");
    const Id id = t.encode(w);
    if (filled[id]) throw GroupError("two matrices share a normal form");
    filled[id] = true;
    t.mats_[id] = mat;
  }
  t.inv_.resize(expected);
  for (Id a = 0; a < expected; ++a) t.inv_[a] = t.encode(m.normal_form(m.inverse(t.mats_[a])));
  for (RootLabel r : kRoots) t.gens_.push_back(t.x(r, 1));
  return t;
}

/// Rebuilds U from root words listed in id order, evaluating each word.
inline ChevalleyTable chevalley_from_words(unsigned p, const std::vector<std::array<std::uint8_t, 6>>& words) {
  require_supported_prime(p);
  ChevalleyTable t(p);
  const ChevalleyModel& m = t.model_;
  t.mats_.resize(words.size());
  for (std::size_t id = 0; id < words.size(); ++id) {
    RootWord w{};
    for (std::size_t r = 0; r < 6; ++r) w[r] = words[id][r];
    if (t.encode(w) != id) throw GroupError("root word out of id order at element " + std::to_string(id));
    t.mats_[id] = m.evaluate(w);
  }
  t.inv_.resize(words.size());
  for (Id a = 0; a < words.size(); ++a) t.inv_[a] = t.encode(m.normal_form(m.inverse(t.mats_[a])));
  for (RootLabel r : kRoots) t.gens_.push_back(t.x(r, 1));
  t.closure_size_ = words.size();
  return t;
}

}  // namespace g2fk
