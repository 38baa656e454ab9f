#pragma once

// Root-cache file: a JSON document keyed by a canonical hash of
// (kind, tag, geometry, N, M, z, xi, hbar), storing canonicalized roots and
// residuals. Entries are re-validated against the Bethe residual gate before
// use; stale or corrupt entries are recomputed by the caller.

#include <optional>
#include <string>
#include <vector>

#include "gcm/bethe.hpp"

namespace gcm {

struct CacheKey {
    std::string kind = "boundary";  // "boundary" or "atype"
    std::string tag;                // gl20/gl11/gl02, empty for atype
    Geometry geometry = Geometry::TwoN;
    int N = 0;
    int M = 0;
    std::vector<cplx> z;
    cplx xi{0.0};   // omega for the A-type kind
    cplx hbar{1.0};
};

/// Canonical serialization of the key (fixed %.17g formatting).
std::string cache_key_string(const CacheKey& key);

/// FNV-1a 64-bit hash of the canonical serialization, as a hex string.
std::string cache_key_hash(const CacheKey& key);

class RootCache {
  public:
    /// Load a cache file; a missing or unreadable file yields an empty cache.
    static RootCache load(const std::string& path);
    void save(const std::string& path) const;

    std::optional<std::vector<BetheRoots>> find(const CacheKey& key) const;
    void put(const CacheKey& key, const std::vector<BetheRoots>& roots);
    /// Absorb every entry of another cache (later entries win on collision).
    void merge(const RootCache& other);

    std::size_t size() const { return entries_.size(); }
    /// Render the cache contents as a JSON report or CSV table.
    std::string render(const std::string& format) const;

  private:
    struct Entry {
        std::string key_string;
        std::vector<BetheRoots> roots;
    };
    std::vector<std::pair<std::string, Entry>> entries_;  // hash -> entry, sorted
};

}  // namespace gcm
