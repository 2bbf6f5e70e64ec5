#include "hecke/coefficient_cache.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

namespace {

constexpr char kMagic[8] = {'H', 'K', 'C', 'O', 'E', 'F', 0, 0};
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 + 8 + 8 + 8;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::string encode_payload(const std::vector<double>& r) {
  std::string out;
  out.reserve((r.size() - 1) * 8);
  for (std::size_t n = 1; n < r.size(); ++n) put_u64(out, std::bit_cast<std::uint64_t>(r[n]));
  return out;
}

}  // namespace

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t cache_key(std::uint64_t D, std::size_t char_index) {
  std::string buf;
  put_u64(buf, D);
  put_u64(buf, char_index);
  put_u32(buf, kCacheVersion);
  return fnv1a(buf.data(), buf.size());
}

std::string default_cache_dir() {
  const char* env = std::getenv("HECKE_CACHE_DIR");
  if (env && *env) return env;
  return ".hecke-cache";
}

std::string cache_path(const std::string& dir, std::uint64_t D, std::size_t char_index) {
  char name[40];
  std::snprintf(name, sizeof name, "coef-%016llx.bin", static_cast<unsigned long long>(cache_key(D, char_index)));
  return (std::filesystem::path(dir) / name).string();
}

void save_table(const CoefficientTable& t, const std::string& path) {
  std::string payload = encode_payload(t.r);
  std::string head(kMagic, 8);
  put_u32(head, kCacheVersion);
  put_u32(head, static_cast<std::uint32_t>(t.char_index));
  put_u64(head, t.D);
  put_u64(head, t.N);
  put_u64(head, cache_key(t.D, t.char_index));
  put_u64(head, fnv1a(payload.data(), payload.size()));
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write coefficient cache " + tmp);
    out.write(head.data(), static_cast<std::streamsize>(head.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw Error("short write on coefficient cache " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

CoefficientTable load_table(const std::string& path, std::uint64_t D, std::size_t char_index) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open coefficient cache " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < kHeaderBytes) throw Error("coefficient cache " + path + " is truncated (checksum failure)");
  const auto* u = reinterpret_cast<const unsigned char*>(bytes.data());
  if (std::memcmp(u, kMagic, 8) != 0) throw DomainError("coefficient cache " + path + " has a bad magic number");
  std::uint32_t version = get_u32(u + 8), ch = get_u32(u + 12);
  std::uint64_t d = get_u64(u + 16), N = get_u64(u + 24), key = get_u64(u + 32), sum = get_u64(u + 40);
  if (version != kCacheVersion || ch != char_index || d != D || key != cache_key(D, char_index)) {
    std::ostringstream os;
    os << "coefficient cache " << path << " header mismatch: file has (D=" << d << ", char=" << ch
       << ", version=" << version << "), wanted (D=" << D << ", char=" << char_index << ", version=" << kCacheVersion
       << ")";
    throw DomainError(os.str());
  }
  std::size_t payload = bytes.size() - kHeaderBytes;
  if (payload != N * 8 || fnv1a(u + kHeaderBytes, payload) != sum)
    throw Error("coefficient cache " + path + " failed its checksum");
  CoefficientTable t;
  t.D = D;
  t.char_index = char_index;
  t.N = N;
  t.r.resize(N + 1);
  t.r[0] = 0.0;
  for (std::size_t n = 1; n <= N; ++n) t.r[n] = std::bit_cast<double>(get_u64(u + kHeaderBytes + 8 * (n - 1)));
  return t;
}

CoefficientTable cached_coefficients(const FieldData& field, const HeckeCharacter& psi, std::size_t char_index,
                                     std::uint64_t N, const std::string& dir) {
  std::string path = cache_path(dir, field.D, char_index);
  CoefficientTable t;
  bool have = false;
  if (std::filesystem::exists(path)) {
    t = load_table(path, field.D, char_index);
    have = true;
  }
  if (!have) {
    t = r_coefficients(field, psi, char_index, N);
    save_table(t, path);
  } else if (t.N < N) {
    extend_coefficients(t, field, psi, N);
    save_table(t, path);
  }
  if (t.N > N) {
    t.r.resize(N + 1);
    t.N = N;
  }
  return t;
}

}  // namespace hecke
