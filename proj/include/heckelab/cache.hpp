#pragma once

// Persistent binary cache for Kazhdan-Lusztig tables.
//
// One file per root-system type.  Layout (all integers little-endian):
//   magic     8 bytes  "HCLKLTB\0"
//   version   u32
//   label     u32 length + bytes
//   rank      u32
//   count     u64
//   records   count frames, each:  u32 payload length, payload bytes,
//             u64 FNV-1a checksum of the payload.
// A record payload holds (y, u, P_{y,u}) as  i32 y.w, rank x i32 y.x,
// i32 u.w, rank x i32 u.x, u32 #coeffs, #coeffs x i64.
//
// Loading is tolerant: a wrong magic/version/label drops the whole file, a
// failed per-record checksum drops that record; everything dropped is
// simply recomputed.  Stores are atomic (temp file + rename) and dump the
// table's full memo, so a store after a warm run rewrites repaired data.

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "heckelab/hecke_im.hpp"

namespace heckelab {

struct CacheStats {
  bool enabled = false;
  bool file_present = false;
  std::uint64_t loaded = 0;    // records accepted from disk
  std::uint64_t rejected = 0;  // records dropped (checksum/format)
  std::uint64_t stored = 0;    // records written back
};

namespace cachedetail {

inline constexpr char kMagic[8] = {'H', 'C', 'L', 'K', 'L', 'T', 'B', '\0'};
inline constexpr std::uint32_t kVersion = 1;

inline std::uint64_t fnv1a(const std::uint8_t* p, std::size_t n) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(std::uint8_t(v >> (8 * i)));
}
inline void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(std::uint8_t(v >> (8 * i)));
}
inline void put_i32(std::vector<std::uint8_t>& b, std::int32_t v) {
  put_u32(b, std::uint32_t(v));
}
inline void put_i64(std::vector<std::uint8_t>& b, std::int64_t v) {
  put_u64(b, std::uint64_t(v));
}

struct Reader {
  const std::uint8_t* p = nullptr;
  std::size_t n = 0, pos = 0;
  bool ok = true;

  bool take(void* out, std::size_t k) {
    if (!ok || pos + k > n) {
      ok = false;
      return false;
    }
    std::memcpy(out, p + pos, k);
    pos += k;
    return true;
  }
  std::uint32_t u32() {
    std::uint8_t raw[4] = {0, 0, 0, 0};
    take(raw, 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | raw[i];
    return v;
  }
  std::uint64_t u64() {
    std::uint8_t raw[8] = {0};
    take(raw, 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | raw[i];
    return v;
  }
  std::int32_t i32() { return std::int32_t(u32()); }
  std::int64_t i64() { return std::int64_t(u64()); }
  std::size_t remaining() const { return ok ? n - pos : 0; }
};

inline void put_elt(std::vector<std::uint8_t>& b, const ExtAffineElt& e) {
  put_i32(b, e.w);
  for (int c : e.x) put_i32(b, c);
}

inline bool get_elt(Reader& r, int rank, ExtAffineElt& e) {
  e.w = r.i32();
  e.x.assign(rank, 0);
  for (int i = 0; i < rank; ++i) e.x[i] = r.i32();
  return r.ok;
}

}  // namespace cachedetail

inline std::filesystem::path kl_cache_file(const std::filesystem::path& dir,
                                           const std::string& label) {
  return dir / ("kl-" + label + ".bin");
}

// Preloads every intact record of `file` into the table's memo.
inline CacheStats load_kl_cache(const KLTable& kl,
                                const std::filesystem::path& file) {
  namespace cd = cachedetail;
  CacheStats st;
  st.enabled = true;
  std::ifstream in(file, std::ios::binary);
  if (!in) return st;
  st.file_present = true;
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  cd::Reader r{bytes.data(), bytes.size(), 0, true};

  char magic[8] = {0};
  if (!r.take(magic, 8) || std::memcmp(magic, cd::kMagic, 8) != 0) {
    st.rejected = 1;
    return st;
  }
  if (r.u32() != cd::kVersion) {
    st.rejected = 1;
    return st;
  }
  const std::string& label = kl.group().datum().label();
  std::uint32_t label_len = r.u32();
  std::string file_label(label_len, '\0');
  if (label_len > 16 || !r.take(file_label.data(), label_len) ||
      file_label != label) {
    st.rejected = 1;
    return st;
  }
  const int rank = kl.group().datum().rank();
  if (r.u32() != std::uint32_t(rank)) {
    st.rejected = 1;
    return st;
  }
  std::uint64_t count = r.u64();

  for (std::uint64_t k = 0; r.ok && k < count; ++k) {
    std::uint32_t len = r.u32();
    if (!r.ok || len > r.remaining() || len > (1u << 20)) break;
    const std::uint8_t* payload = r.p + r.pos;
    r.pos += len;
    std::uint64_t sum = r.u64();
    if (!r.ok) break;
    if (cd::fnv1a(payload, len) != sum) {
      ++st.rejected;
      continue;
    }
    cd::Reader rec{payload, len, 0, true};
    ExtAffineElt y, u;
    if (!cd::get_elt(rec, rank, y) || !cd::get_elt(rec, rank, u)) {
      ++st.rejected;
      continue;
    }
    std::uint32_t ncoef = rec.u32();
    if (!rec.ok || std::uint64_t(ncoef) * 8 != rec.remaining()) {
      ++st.rejected;
      continue;
    }
    QPoly p(ncoef);
    for (std::uint32_t i = 0; i < ncoef; ++i) p[i] = rec.i64();
    kl.preload(y, u, p);
    ++st.loaded;
  }
  return st;
}

// Writes the table's full memo; atomic via temp file + rename.  Throws on
// I/O failure so callers can surface it.
inline CacheStats store_kl_cache(const KLTable& kl,
                                 const std::filesystem::path& file) {
  namespace cd = cachedetail;
  CacheStats st;
  st.enabled = true;
  const std::string& label = kl.group().datum().label();
  const int rank = kl.group().datum().rank();

  std::vector<std::uint8_t> out;
  out.insert(out.end(), cd::kMagic, cd::kMagic + 8);
  cd::put_u32(out, cd::kVersion);
  cd::put_u32(out, std::uint32_t(label.size()));
  out.insert(out.end(), label.begin(), label.end());
  cd::put_u32(out, std::uint32_t(rank));
  cd::put_u64(out, kl.memo().size());
  for (const auto& [key, poly] : kl.memo()) {
    std::vector<std::uint8_t> payload;
    cd::put_elt(payload, key.first);
    cd::put_elt(payload, key.second);
    cd::put_u32(payload, std::uint32_t(poly.size()));
    for (long long c : poly) cd::put_i64(payload, c);
    cd::put_u32(out, std::uint32_t(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    cd::put_u64(out, cd::fnv1a(payload.data(), payload.size()));
    ++st.stored;
  }

  std::filesystem::create_directories(file.parent_path());
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw std::runtime_error("cache: cannot open " + tmp.string());
    o.write(reinterpret_cast<const char*>(out.data()),
            std::streamsize(out.size()));
    if (!o) throw std::runtime_error("cache: write failed " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
  return st;
}

}  // namespace heckelab
