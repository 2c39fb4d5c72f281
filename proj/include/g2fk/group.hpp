#pragma once

// Fully enumerated finite groups: element ids, the table concept the engine
// is written against, subgroup values, and explicit Cayley tables.

#include <algorithm>
#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace g2fk {

using Id = std::uint32_t;
using Word = std::array<int, 6>;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite group whose elements are the dense ids [0, size()).
template <class G>
concept GroupTable = requires(const G& g, Id a, Id b) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.prime() } -> std::convertible_to<unsigned>;
  { g.mul(a, b) } -> std::same_as<Id>;
  { g.inv(a) } -> std::same_as<Id>;
  { g.identity() } -> std::same_as<Id>;
  { g.generators() } -> std::convertible_to<std::span<const Id>>;
};

/// A table whose elements have a normal form x_1^{w_1} ... x_6^{w_6} in six
/// standard generators, so maps can be extended from generator images.
template <class G>
concept WordTable = GroupTable<G> && requires(const G& g, Id a, const Word& w) {
  { g.word(a) } -> std::same_as<Word>;
  { g.from_word(w) } -> std::same_as<Id>;
};

inline std::string format_word(const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < 6; ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

template <GroupTable G>
Id power(const G& g, Id x, long long e) {
  if (e < 0) {
    x = g.inv(x);
    e = -e;
  }
  Id acc = g.identity();
  Id base = x;
  while (e) {
    if (e & 1) acc = g.mul(acc, base);
    e >>= 1;
    if (e) base = g.mul(base, base);
  }
  return acc;
}

/// x^y = y^-1 x y
template <GroupTable G>
Id conj(const G& g, Id x, Id y) {
  return g.mul(g.mul(g.inv(y), x), y);
}

/// [a,b] = a^-1 b^-1 a b
template <GroupTable G>
Id comm(const G& g, Id a, Id b) {
  return g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
}

class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }
  bool test(Id i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool insert(Id i) {
    auto& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool is_subset_of(const IdSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  std::vector<Id> to_vector() const {
    std::vector<Id> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        out.push_back(static_cast<Id>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
    return out;
  }
  friend bool operator==(const IdSet&, const IdSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A subgroup of an ambient table, stored as a sorted id list plus a bitset.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(IdSet members, std::vector<Id> gens)
      : set_(std::move(members)), members_(set_.to_vector()), gens_(std::move(gens)) {}

  std::size_t order() const { return members_.size(); }
  bool contains(Id x) const { return set_.test(x); }
  std::span<const Id> elements() const { return members_; }
  std::span<const Id> generators() const { return gens_; }
  const IdSet& set() const { return set_; }
  std::size_t universe() const { return set_.universe(); }

  bool is_subgroup_of(const Subgroup& o) const { return set_.is_subset_of(o.set_); }

  /// FNV-1a over the sorted id list; canonical for a given ambient table.
  std::uint64_t key() const {
    std::uint64_t h = 1469598103934665603ull;
    for (Id x : members_) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  IdSet set_;
  std::vector<Id> members_;
  std::vector<Id> gens_;
};

/// Explicit Cayley table, used for small groups and quotients.
class DenseTable {
 public:
  std::size_t size() const { return n_; }
  unsigned prime() const { return p_; }
  Id mul(Id a, Id b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
  Id inv(Id a) const { return inv_[a]; }
  Id identity() const { return identity_; }
  std::span<const Id> generators() const { return gens_; }

  bool has_words() const { return !words_.empty(); }
  Word word(Id a) const {
    if (words_.empty()) throw GroupError("dense table carries no normal forms");
    return words_[a];
  }
  Id from_word(const Word& w) const {
    if (words_.empty()) throw GroupError("dense table carries no normal forms");
    auto it = word_index_.find(pack(w));
    if (it == word_index_.end()) throw GroupError("word outside the table");
    return it->second;
  }

  /// Materializes the full product table of a small group, keeping ids.
  template <GroupTable G>
  static DenseTable from(const G& g) {
    if (g.size() > 4096) throw GroupError("dense table limited to 4096 elements");
    DenseTable t;
    t.p_ = g.prime();
    t.n_ = g.size();
    t.identity_ = g.identity();
    t.gens_.assign(g.generators().begin(), g.generators().end());
    t.mul_.resize(t.n_ * t.n_);
    t.inv_.resize(t.n_);
    for (Id a = 0; a < t.n_; ++a) {
      t.inv_[a] = g.inv(a);
      for (Id b = 0; b < t.n_; ++b) t.mul_[static_cast<std::size_t>(a) * t.n_ + b] = g.mul(a, b);
    }
    if constexpr (WordTable<G>) {
      t.words_.resize(t.n_);
      for (Id a = 0; a < t.n_; ++a) {
        t.words_[a] = g.word(a);
        t.word_index_.emplace(pack(t.words_[a]), a);
      }
    }
    return t;
  }

  /// The quotient H/N, with cosets numbered by their least element.
  template <GroupTable G>
  static DenseTable quotient(const G& g, const Subgroup& h, const Subgroup& n) {
    if (!n.is_subgroup_of(h)) throw GroupError("quotient: N is not contained in H");
    for (Id x : h.generators())
      for (Id y : n.generators())
        if (!n.contains(conj(g, y, x))) throw GroupError("quotient: N is not normal in H");
    std::unordered_map<Id, Id> label;
    std::vector<Id> reps;
    for (Id x : h.elements()) {
      if (label.count(x)) continue;
      const Id c = static_cast<Id>(reps.size());
      reps.push_back(x);
      for (Id y : n.elements()) label.emplace(g.mul(x, y), c);
    }
    DenseTable t;
    t.p_ = g.prime();
    t.n_ = reps.size();
    if (t.n_ > 4096) throw GroupError("dense table limited to 4096 elements");
    t.identity_ = label.at(g.identity());
    t.mul_.resize(t.n_ * t.n_);
    t.inv_.resize(t.n_);
    for (Id a = 0; a < t.n_; ++a) {
      t.inv_[a] = label.at(g.inv(reps[a]));
      for (Id b = 0; b < t.n_; ++b)
        t.mul_[static_cast<std::size_t>(a) * t.n_ + b] = label.at(g.mul(reps[a], reps[b]));
    }
    for (Id x : h.generators()) {
      const Id c = label.at(x);
      if (c != t.identity_ && std::find(t.gens_.begin(), t.gens_.end(), c) == t.gens_.end())
        t.gens_.push_back(c);
    }
    return t;
  }

 private:
  static std::uint64_t pack(const Word& w) {
    std::uint64_t k = 0;
    for (int c : w) k = k * 64 + static_cast<std::uint64_t>(c);
    return k;
  }

  unsigned p_ = 0;
  std::size_t n_ = 0;
  Id identity_ = 0;
  std::vector<Id> mul_;
  std::vector<Id> inv_;
  std::vector<Id> gens_;
  std::vector<Word> words_;
  std::unordered_map<std::uint64_t, Id> word_index_;
};

}  // namespace g2fk
