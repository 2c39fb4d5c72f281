#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "g2fk/cache.hpp"

using namespace g2fk;

namespace {

std::filesystem::path temp_dir() {
  auto d = std::filesystem::temp_directory_path() / "g2fk_cache_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("header layout") {
  const PolyTable t(5);
  const auto bytes = encode_cache(5, ModelTag::Poly, table_coordinates(t));
  REQUIRE(bytes.size() == 15625 * 6 + kCacheHeaderBytes);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "G2FK");
  CHECK(bytes[4] == kCacheVersion);
  CHECK(bytes[5] == 5);
  CHECK(bytes[6] == 0);
  CHECK(bytes[7] == 1);
  // 15625 = 0x3D09, little-endian.
  CHECK(bytes[8] == 0x09);
  CHECK(bytes[9] == 0x3D);
  CHECK(bytes[10] == 0);
  CHECK(bytes[11] == 0);
  // Element 1 is x_6(1): coordinates (a, v0..v3, z) = (0,0,0,0,0,1).
  CHECK(bytes[kCacheHeaderBytes + 6 + 5] == 1);
}

TEST_CASE("p = 7 cache size") {
  const PolyTable t(7);
  CHECK(encode_cache(7, ModelTag::Poly, table_coordinates(t)).size() == 117649u * 6 + 12);
}

TEST_CASE("poly round trip") {
  const auto path = temp_dir() / "poly-p5.g2fk";
  const PolyTable t(5);
  save_cache(path, t);
  const PolyTable u = load_poly_cache(path, 5);
  REQUIRE(u.size() == t.size());
  for (Id x = 0; x < t.size(); x += 7) {
    CHECK(u.coordinates(x) == t.coordinates(x));
    CHECK(u.mul(x, x / 3) == t.mul(x, x / 3));
  }
}

TEST_CASE("chevalley round trip") {
  const auto path = temp_dir() / "chevalley-p5.g2fk";
  const ChevalleyTable t = generate_u(5);
  save_cache(path, t);
  const ChevalleyTable u = load_chevalley_cache(path, 5);
  REQUIRE(u.size() == t.size());
  for (Id x = 0; x < t.size(); ++x) {
    REQUIRE(u.matrix(x) == t.matrix(x));
    REQUIRE(u.inv(x) == t.inv(x));
  }
}

TEST_CASE("corrupted caches are refused") {
  const auto path = temp_dir() / "bad.g2fk";
  const PolyTable t(5);
  const auto good = encode_cache(5, ModelTag::Poly, table_coordinates(t));

  auto bytes = good;
  bytes[0] = 'X';
  write_file(path, bytes);
  CHECK_THROWS_WITH(load_poly_cache(path, 5), Catch::Matchers::ContainsSubstring("magic"));

  bytes = good;
  bytes[4] = kCacheVersion + 1;
  write_file(path, bytes);
  CHECK_THROWS_WITH(load_poly_cache(path, 5), Catch::Matchers::ContainsSubstring("version"));

  bytes = good;
  bytes.resize(bytes.size() - 3);
  write_file(path, bytes);
  CHECK_THROWS_WITH(load_poly_cache(path, 5), Catch::Matchers::ContainsSubstring("truncated"));

  bytes = good;
  bytes.resize(7);
  write_file(path, bytes);
  CHECK_THROWS_WITH(load_poly_cache(path, 5), Catch::Matchers::ContainsSubstring("truncated"));

  bytes = good;
  std::swap(bytes[kCacheHeaderBytes + 5], bytes[kCacheHeaderBytes + 11]);
  write_file(path, bytes);
  CHECK_THROWS_AS(load_poly_cache(path, 5), CacheError);

  write_file(path, good);
  CHECK_THROWS_WITH(load_poly_cache(path, 7), Catch::Matchers::ContainsSubstring("p = 5"));
  CHECK_THROWS_AS(load_chevalley_cache(path, 5), CacheError);
}
