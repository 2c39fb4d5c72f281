#pragma once

// Binary cache of a group table: "G2FK", version (1 byte), p (2 bytes LE),
// model tag (1 byte), element count (4 bytes LE), then the 6 normal-form
// coordinates of every element in id order, one byte each.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "g2fk/chevalley.hpp"
#include "g2fk/poly_model.hpp"

namespace g2fk {

inline constexpr std::uint8_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderBytes = 12;

enum class ModelTag : std::uint8_t { Poly = 1, Chevalley = 2 };

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Coords = std::array<std::uint8_t, 6>;

inline std::vector<Coords> table_coordinates(const PolyTable& t) {
  std::vector<Coords> out(t.size());
  for (Id x = 0; x < t.size(); ++x) out[x] = t.coordinates(x);
  return out;
}

inline std::vector<Coords> table_coordinates(const ChevalleyTable& t) {
  std::vector<Coords> out(t.size());
  for (Id x = 0; x < t.size(); ++x) {
    const Word w = t.word(x);
    for (std::size_t r = 0; r < 6; ++r) out[x][r] = static_cast<std::uint8_t>(w[r]);
  }
  return out;
}

inline std::vector<std::uint8_t> encode_cache(unsigned p, ModelTag tag, const std::vector<Coords>& coords) {
  std::vector<std::uint8_t> out{'G', '2', 'F', 'K', kCacheVersion, static_cast<std::uint8_t>(p & 0xff),
                                static_cast<std::uint8_t>(p >> 8), static_cast<std::uint8_t>(tag)};
  const auto n = static_cast<std::uint32_t>(coords.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  out.reserve(kCacheHeaderBytes + 6 * coords.size());
  for (const auto& c : coords) out.insert(out.end(), c.begin(), c.end());
  return out;
}

struct CacheContents {
  unsigned p = 0;
  ModelTag tag = ModelTag::Poly;
  std::vector<Coords> coords;
};

inline CacheContents decode_cache(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kCacheHeaderBytes) throw CacheError("cache truncated: header incomplete");
  if (bytes[0] != 'G' || bytes[1] != '2' || bytes[2] != 'F' || bytes[3] != 'K') throw CacheError("cache has bad magic");
  if (bytes[4] != kCacheVersion)
    throw CacheError("cache version " + std::to_string(bytes[4]) + " does not match " + std::to_string(kCacheVersion));
  CacheContents c;
  c.p = bytes[5] | (static_cast<unsigned>(bytes[6]) << 8);
  if (bytes[7] != static_cast<std::uint8_t>(ModelTag::Poly) && bytes[7] != static_cast<std::uint8_t>(ModelTag::Chevalley))
    throw CacheError("cache has unknown model tag " + std::to_string(bytes[7]));
  c.tag = static_cast<ModelTag>(bytes[7]);
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(bytes[8 + static_cast<std::size_t>(i)]) << (8 * i);
  if (bytes.size() != kCacheHeaderBytes + 6 * static_cast<std::size_t>(n))
    throw CacheError("cache truncated: expected " + std::to_string(kCacheHeaderBytes + 6 * static_cast<std::size_t>(n)) +
                     " bytes, found " + std::to_string(bytes.size()));
  c.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < 6; ++k) c.coords[i][k] = bytes[kCacheHeaderBytes + 6 * i + k];
  return c;
}

inline void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CacheError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string cache_file_name(unsigned p, ModelTag tag) {
  return std::string(tag == ModelTag::Poly ? "poly" : "chevalley") + "-p" + std::to_string(p) + ".g2fk";
}

/// Checks the header against the request and that every record is the
/// normal form of its id.
inline void validate_layout(const CacheContents& c, unsigned p, ModelTag tag) {
  if (c.p != p) throw CacheError("cache is for p = " + std::to_string(c.p) + ", requested " + std::to_string(p));
  if (c.tag != tag) throw CacheError("cache model tag mismatch");
  std::size_t n = 1;
  for (int i = 0; i < 6; ++i) n *= p;
  if (c.coords.size() != n) throw CacheError("cache holds " + std::to_string(c.coords.size()) + " elements, expected p^6");
  for (std::size_t id = 0; id < n; ++id) {
    std::size_t v = 0;
    for (std::uint8_t x : c.coords[id]) {
      if (x >= p) throw CacheError("cache coordinate out of range at element " + std::to_string(id));
      v = v * p + x;
    }
    if (v != id) throw CacheError("cache record " + std::to_string(id) + " is out of order");
  }
}

/// Closure spot checks: products of random triples stay in range and
/// associate, and agree with the model multiplication.
template <GroupTable G, class ModelProduct>
void spot_check(const G& t, std::size_t samples, std::uint64_t seed, ModelProduct&& model_product) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Id> pick(0, static_cast<Id>(t.size() - 1));
  for (std::size_t i = 0; i < samples; ++i) {
    const Id a = pick(rng), b = pick(rng), c = pick(rng);
    const Id ab = t.mul(a, b);
    if (ab >= t.size() || ab != model_product(a, b)) throw CacheError("cache spot check failed: product out of table");
    if (t.mul(ab, c) != t.mul(a, t.mul(b, c))) throw CacheError("cache spot check failed: associativity");
  }
}

inline constexpr std::size_t kSpotChecks = 1000;

inline PolyTable load_poly_cache(const std::filesystem::path& path, unsigned p, std::uint64_t seed = 1) {
  const CacheContents c = decode_cache(read_file(path));
  validate_layout(c, p, ModelTag::Poly);
  PolyTable t(p);
  const PolyModel& m = t.model();
  spot_check(t, kSpotChecks, seed, [&](Id a, Id b) { return t.encode(m.s_multiply(t.decode(a), t.decode(b))); });
  return t;
}

inline ChevalleyTable load_chevalley_cache(const std::filesystem::path& path, unsigned p, std::uint64_t seed = 1) {
  const CacheContents c = decode_cache(read_file(path));
  validate_layout(c, p, ModelTag::Chevalley);
  ChevalleyTable t = chevalley_from_words(p, c.coords);
  const ChevalleyModel& m = t.model();
  spot_check(t, kSpotChecks, seed, [&](Id a, Id b) {
    const Mat8 prod = m.multiply(t.matrix(a), t.matrix(b));
    const Id id = t.encode(m.normal_form(prod));
    if (!(t.matrix(id) == prod)) throw CacheError("cache spot check failed: normal form does not re-evaluate");
    return id;
  });
  return t;
}

inline void save_cache(const std::filesystem::path& path, const PolyTable& t) {
  write_file(path, encode_cache(t.prime(), ModelTag::Poly, table_coordinates(t)));
}

inline void save_cache(const std::filesystem::path& path, const ChevalleyTable& t) {
  write_file(path, encode_cache(t.prime(), ModelTag::Chevalley, table_coordinates(t)));
}

}  // namespace g2fk
