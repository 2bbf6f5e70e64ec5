#include <cstring>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hecke/coefficient_cache.hpp"
#include "hecke/error.hpp"

using namespace hecke;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  fs::path p = fs::temp_directory_path() / ("hecke-test-" + std::string(name));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("save then load is bitwise identical") {
    FieldData f = build_field(47);
    auto ch = characters(f);
    auto t = r_coefficients(f, ch[1], 1, 4000);
    fs::path dir = scratch_dir("roundtrip");
    std::string path = cache_path(dir.string(), 47, 1);
    save_table(t, path);
    auto u = load_table(path, 47, 1);
    REQUIRE(u.N == t.N);
    CHECK(std::memcmp(u.r.data(), t.r.data(), t.r.size() * sizeof(double)) == 0);
    fs::remove_all(dir);
  }

  TEST_CASE("header mismatch is rejected") {
    FieldData f = build_field(47);
    auto ch = characters(f);
    auto t = r_coefficients(f, ch[1], 1, 500);
    fs::path dir = scratch_dir("mismatch");
    std::string path = (dir / "t.bin").string();
    save_table(t, path);
    CHECK_THROWS_AS(load_table(path, 47, 2), DomainError);
    CHECK_THROWS_AS(load_table(path, 23, 1), DomainError);
    CHECK(cache_key(47, 1) != cache_key(47, 2));
    fs::remove_all(dir);
  }

  TEST_CASE("truncated or corrupted file fails the checksum") {
    FieldData f = build_field(23);
    auto ch = characters(f);
    auto t = r_coefficients(f, ch[1], 1, 500);
    fs::path dir = scratch_dir("trunc");
    std::string path = (dir / "t.bin").string();
    save_table(t, path);
    auto size = fs::file_size(path);
    fs::resize_file(path, size - 8);
    CHECK_THROWS_AS(load_table(path, 23, 1), Error);
    save_table(t, path);
    {
      std::fstream io(path, std::ios::in | std::ios::out | std::ios::binary);
      io.seekp(static_cast<std::streamoff>(size - 3));
      io.put('\x7f');
    }
    CHECK_THROWS_AS(load_table(path, 23, 1), Error);
    fs::resize_file(path, 10);
    CHECK_THROWS_AS(load_table(path, 23, 1), Error);
    fs::remove_all(dir);
  }

  TEST_CASE("cached_coefficients extends a shorter table") {
    FieldData f = build_field(47);
    auto ch = characters(f);
    fs::path dir = scratch_dir("extend");
    auto a = cached_coefficients(f, ch[1], 1, 800, dir.string());
    auto b = cached_coefficients(f, ch[1], 1, 6000, dir.string());
    auto c = cached_coefficients(f, ch[1], 1, 300, dir.string());
    auto fresh = r_coefficients(f, ch[1], 1, 6000);
    CHECK(b.r == fresh.r);
    CHECK(c.N == 300);
    CHECK(std::equal(c.r.begin(), c.r.end(), fresh.r.begin()));
    CHECK(load_table(cache_path(dir.string(), 47, 1), 47, 1).N == 6000);
    fs::remove_all(dir);
  }
}
