#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <utility>

namespace stlab {

class FamilyPoly;
struct TraceRecord;

/// Persistent trace cache for one family.
///
/// File layout (line oriented, append-only):
///
///     # stlab-cache v1 family=<hex16>
///     p,t,a
///     ...
///
/// Keys are (p, t mod p): the trace only depends on the residue of the
/// parameter. New rows are buffered and appended in ascending (p, t) order by
/// flush(); the destructor flushes. Reads may run concurrently, writes must
/// come from a single thread. The append window holds an advisory flock.
class TraceCache {
 public:
  /// Loads `path` (creating nothing until the first flush). Throws CacheError
  /// on a fingerprint mismatch or a malformed row (the message carries the
  /// line number).
  static TraceCache open(const std::filesystem::path& path, const FamilyPoly& fam);

  TraceCache(TraceCache&& other) noexcept;
  TraceCache& operator=(TraceCache&& other) noexcept;
  TraceCache(const TraceCache&) = delete;
  TraceCache& operator=(const TraceCache&) = delete;
  ~TraceCache();

  std::optional<std::int64_t> get(std::uint64_t p, std::int64_t t) const;

  /// Throws CacheError when the record violates the Hasse bound or conflicts
  /// with a stored trace. Re-putting an identical record is a no-op.
  void put(const TraceRecord& rec);

  void flush();

  std::uint64_t fingerprint() const { return fingerprint_; }
  const std::filesystem::path& path() const { return path_; }
  std::size_t size() const { return rows_.size(); }
  std::size_t pending() const { return pending_.size(); }
  /// Number of distinct primes with at least one stored row.
  std::size_t prime_count() const;

 private:
  TraceCache() = default;

  using Key = std::pair<std::uint64_t, std::uint64_t>;

  std::filesystem::path path_;
  std::uint64_t fingerprint_ = 0;
  std::map<Key, std::int64_t> rows_;
  std::map<Key, std::int64_t> pending_;
};

}  // namespace stlab
