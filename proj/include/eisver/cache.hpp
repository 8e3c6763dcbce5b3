#pragma once

// On-disk cache of cuspidal Hecke matrices, one text file per (N, n):
//
//   heckecache v1 N=<N> n=<n> rows=<r> cols=<c> sha256=<hex>
//   <entry>
//   ...
//
// Entries are decimal, row-major, one per line.  The checksum covers the
// entry lines (each terminated by a newline).

#include "eisver/hecke.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace eisver {

inline std::string sha256_hex(const std::string& data)
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256_hex: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

inline std::string cache_body(const IntMatrix& m)
{
  std::string body;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      body += m(i, j).get_str();
      body += '\n';
    }
  return body;
}

inline std::string cache_header(std::int64_t level, std::int64_t n, const IntMatrix& m, const std::string& body)
{
  std::ostringstream h;
  h << "heckecache v1 N=" << level << " n=" << n << " rows=" << m.rows() << " cols=" << m.cols()
    << " sha256=" << sha256_hex(body);
  return h.str();
}

inline std::string serialize_cache_entry(std::int64_t level, std::int64_t n, const IntMatrix& m)
{
  const std::string body = cache_body(m);
  return cache_header(level, n, m, body) + "\n" + body;
}

/// Parses a cache file; nullopt on any mismatch, malformed entry or bad checksum.
inline std::optional<IntMatrix> parse_cache_entry(const std::string& text, std::int64_t level, std::int64_t n)
{
  const auto nl = text.find('\n');
  if (nl == std::string::npos) return std::nullopt;
  std::istringstream h(text.substr(0, nl));
  std::string magic, version, fn, fi, fr, fc, fs;
  if (!(h >> magic >> version >> fn >> fi >> fr >> fc >> fs)) return std::nullopt;
  std::string extra;
  if (h >> extra) return std::nullopt;
  if (magic != "heckecache" || version != "v1") return std::nullopt;
  if (fn != "N=" + std::to_string(level) || fi != "n=" + std::to_string(n)) return std::nullopt;
  if (fr.rfind("rows=", 0) != 0 || fc.rfind("cols=", 0) != 0 || fs.rfind("sha256=", 0) != 0) return std::nullopt;
  std::size_t rows = 0, cols = 0;
  try {
    std::size_t pos = 0;
    rows = std::stoul(fr.substr(5), &pos);
    if (pos != fr.size() - 5) return std::nullopt;
    cols = std::stoul(fc.substr(5), &pos);
    if (pos != fc.size() - 5) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  const std::string body = text.substr(nl + 1);
  if (sha256_hex(body) != fs.substr(7)) return std::nullopt;
  IntMatrix m(rows, cols);
  std::size_t start = 0;
  for (std::size_t k = 0; k < rows * cols; ++k) {
    const auto end = body.find('\n', start);
    if (end == std::string::npos) return std::nullopt;
    if (m(k / cols, k % cols).set_str(body.substr(start, end - start), 10) != 0) return std::nullopt;
    start = end + 1;
  }
  if (start != body.size()) return std::nullopt;
  return m;
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, std::int64_t level, std::int64_t n)
{
  return dir / ("hecke_N" + std::to_string(level) + "_n" + std::to_string(n) + ".txt");
}

/// Writes via a unique temporary file in the same directory, then renames.
inline void write_cache_entry(const std::filesystem::path& dir, std::int64_t level, std::int64_t n, const IntMatrix& m)
{
  static std::atomic<unsigned long> counter{0};
  std::filesystem::create_directories(dir);
  const auto target = cache_file(dir, level, n);
  std::ostringstream tmpname;
  tmpname << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
          << counter++;
  const auto tmp = dir / tmpname.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_cache_entry: cannot open " + tmp.string());
    out << serialize_cache_entry(level, n, m);
    out.flush();
    if (!out) throw std::runtime_error("write_cache_entry: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

inline std::optional<IntMatrix> read_cache_entry(const std::filesystem::path& dir, std::int64_t level, std::int64_t n)
{
  std::ifstream in(cache_file(dir, level, n), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cache_entry(ss.str(), level, n);
}

struct CacheStats {
  std::atomic<std::size_t> hits{0};
  std::atomic<std::size_t> misses{0};
  std::atomic<std::size_t> rejected{0};
};

/// Provider that reads matrices from dir, recomputing and rewriting any that
/// are missing or fail validation.
inline HeckeProvider caching_provider(const ManinSpace& space, std::filesystem::path dir, CacheStats* stats = nullptr)
{
  return [&space, dir = std::move(dir), stats](std::int64_t n) {
    const std::int64_t level = space.level();
    const std::size_t dim = space.cuspidal_rank();
    const bool present = std::filesystem::exists(cache_file(dir, level, n));
    if (auto m = read_cache_entry(dir, level, n); m && m->rows() == dim && m->cols() == dim) {
      if (stats) ++stats->hits;
      return *m;
    }
    if (stats) ++(present ? stats->rejected : stats->misses);
    IntMatrix m = hecke_matrix(space, n);
    write_cache_entry(dir, level, n, m);
    return m;
  };
}

} // namespace eisver
