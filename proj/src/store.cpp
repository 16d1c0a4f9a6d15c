#include "stlab/store.hpp"

#include <sys/file.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <string_view>

#include "stlab/curve_family.hpp"
#include "stlab/errors.hpp"
#include "stlab/finite_field.hpp"
#include "stlab/point_count.hpp"

namespace stlab {

namespace {

constexpr std::string_view kHeaderPrefix = "# stlab-cache v1 family=";

template <typename T>
bool parse_field(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string header_for(std::uint64_t fp) { return std::string(kHeaderPrefix) + hex16(fp); }

// RAII advisory lock on an open stdio stream.
class FileLock {
 public:
  explicit FileLock(std::FILE* f) : fd_(fileno(f)) {
    if (::flock(fd_, LOCK_EX) != 0) throw CacheError("could not lock trace cache");
  }
  ~FileLock() { ::flock(fd_, LOCK_UN); }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

}  // namespace

TraceCache TraceCache::open(const std::filesystem::path& path, const FamilyPoly& fam) {
  TraceCache cache;
  cache.path_ = path;
  cache.fingerprint_ = fam.fingerprint();

  std::ifstream in(path);
  if (!in) return cache;

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) return cache;  // empty file: fresh cache
  ++lineno;
  if (line.rfind(kHeaderPrefix, 0) != 0) {
    throw CacheError(path.string() + ":1: missing stlab-cache v1 header");
  }
  const std::string stored = line.substr(kHeaderPrefix.size());
  if (stored != hex16(cache.fingerprint_)) {
    throw CacheError(path.string() + ": cache belongs to family " + stored + ", not " + hex16(cache.fingerprint_));
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto bad = [&](const std::string& why) {
      return CacheError(path.string() + ":" + std::to_string(lineno) + ": " + why);
    };
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw bad("malformed row '" + line + "'");
    const std::string_view sv(line);
    std::uint64_t p = 0;
    std::uint64_t t = 0;
    std::int64_t a = 0;
    if (!parse_field(sv.substr(0, c1), p) || !parse_field(sv.substr(c1 + 1, c2 - c1 - 1), t) ||
        !parse_field(sv.substr(c2 + 1), a)) {
      throw bad("malformed row '" + line + "'");
    }
    if (p <= 3 || t >= p) throw bad("row out of range '" + line + "'");
    if (!hasse_ok(a, p)) throw bad("row violates the Hasse bound '" + line + "'");
    const auto [it, inserted] = cache.rows_.emplace(Key{p, t}, a);
    if (!inserted && it->second != a) throw bad("conflicting duplicate row '" + line + "'");
  }
  return cache;
}

TraceCache::TraceCache(TraceCache&& other) noexcept
    : path_(std::move(other.path_)),
      fingerprint_(other.fingerprint_),
      rows_(std::move(other.rows_)),
      pending_(std::move(other.pending_)) {
  other.pending_.clear();
}

TraceCache& TraceCache::operator=(TraceCache&& other) noexcept {
  if (this != &other) {
    try {
      flush();
    } catch (...) {
    }
    path_ = std::move(other.path_);
    fingerprint_ = other.fingerprint_;
    rows_ = std::move(other.rows_);
    pending_ = std::move(other.pending_);
    other.pending_.clear();
  }
  return *this;
}

TraceCache::~TraceCache() {
  try {
    flush();
  } catch (...) {
  }
}

std::optional<std::int64_t> TraceCache::get(std::uint64_t p, std::int64_t t) const {
  const auto it = rows_.find({p, reduce_mod(t, p)});
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

void TraceCache::put(const TraceRecord& rec) {
  if (rec.p <= 3) throw CacheError("put: prime must exceed 3");
  if (!hasse_ok(rec.a, rec.p)) {
    throw CacheError("put: record violates the Hasse bound (p=" + std::to_string(rec.p) +
                     ", a=" + std::to_string(rec.a) + ")");
  }
  const Key key{rec.p, reduce_mod(rec.t, rec.p)};
  const auto [it, inserted] = rows_.emplace(key, rec.a);
  if (!inserted) {
    if (it->second != rec.a) {
      throw CacheError("put: conflicting trace for (p=" + std::to_string(rec.p) + ", t=" +
                       std::to_string(key.second) + "): stored " + std::to_string(it->second) +
                       ", new " + std::to_string(rec.a));
    }
    return;
  }
  pending_.emplace(key, rec.a);
}

void TraceCache::flush() {
  if (pending_.empty() || path_.empty()) return;
  std::FILE* f = std::fopen(path_.c_str(), "a+");
  if (!f) throw CacheError("cannot open trace cache " + path_.string() + " for writing");
  {
    FileLock lock(f);
    std::fseek(f, 0, SEEK_END);
    if (std::ftell(f) == 0) std::fprintf(f, "%s\n", header_for(fingerprint_).c_str());
    for (const auto& [key, a] : pending_) {
      std::fprintf(f, "%llu,%llu,%lld\n", static_cast<unsigned long long>(key.first),
                   static_cast<unsigned long long>(key.second), static_cast<long long>(a));
    }
    std::fflush(f);
  }
  const bool failed = std::ferror(f) != 0;
  std::fclose(f);
  if (failed) throw CacheError("write error on trace cache " + path_.string());
  pending_.clear();
}

std::size_t TraceCache::prime_count() const {
  std::set<std::uint64_t> primes;
  for (const auto& [key, a] : rows_) primes.insert(key.first);
  return primes.size();
}

}  // namespace stlab
