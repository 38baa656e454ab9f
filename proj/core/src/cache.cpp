#include "gcm/cache.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gcm {

namespace {

using nlohmann::json;

std::string fmt_c(cplx v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
    return buf;
}

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

std::string cache_key_string(const CacheKey& key) {
    std::ostringstream os;
    os << key.kind << '|' << key.tag << '|'
       << (key.geometry == Geometry::TwoN ? "2N" : "2N+1") << '|' << key.N << '|' << key.M
       << '|';
    for (const cplx& z : key.z) os << fmt_c(z) << ';';
    os << '|' << fmt_c(key.xi) << '|' << fmt_c(key.hbar);
    return os.str();
}

std::string cache_key_hash(const CacheKey& key) {
    const std::string s = cache_key_string(key);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RootCache RootCache::load(const std::string& path) {
    RootCache cache;
    std::ifstream in(path);
    if (!in) return cache;
    json doc;
    try {
        in >> doc;
        for (const auto& [hash, e] : doc.at("entries").items()) {
            Entry entry;
            entry.key_string = e.at("key").get<std::string>();
            for (const auto& rs : e.at("roots")) {
                BetheRoots r;
                for (const auto& m : rs.at("mu")) r.mu.push_back(complex_from_json(m));
                r.residual = rs.at("residual").get<double>();
                r.admissible = rs.at("admissible").get<bool>();
                entry.roots.push_back(std::move(r));
            }
            cache.entries_.emplace_back(hash, std::move(entry));
        }
    } catch (const json::exception&) {
        cache.entries_.clear();  // corrupt cache: treat as empty, callers recompute
    }
    std::sort(cache.entries_.begin(), cache.entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return cache;
}

void RootCache::save(const std::string& path) const {
    json entries = json::object();
    for (const auto& [hash, entry] : entries_) {
        json roots = json::array();
        for (const BetheRoots& r : entry.roots) {
            json mus = json::array();
            for (const cplx& m : r.mu) mus.push_back(complex_to_json(m));
            roots.push_back(
                {{"mu", mus}, {"residual", r.residual}, {"admissible", r.admissible}});
        }
        entries[hash] = {{"key", entry.key_string}, {"roots", roots}};
    }
    const json doc = {{"schema_version", 1}, {"entries", entries}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cache file: " + path);
    out << doc.dump(2) << '\n';
}

std::optional<std::vector<BetheRoots>> RootCache::find(const CacheKey& key) const {
    const std::string h = cache_key_hash(key);
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), h,
                                     [](const auto& e, const std::string& v) { return e.first < v; });
    if (it == entries_.end() || it->first != h) return std::nullopt;
    if (it->second.key_string != cache_key_string(key)) return std::nullopt;  // hash collision
    return it->second.roots;
}

void RootCache::merge(const RootCache& other) {
    for (const auto& [hash, entry] : other.entries_) {
        const auto it =
            std::lower_bound(entries_.begin(), entries_.end(), hash,
                             [](const auto& e, const std::string& v) { return e.first < v; });
        if (it != entries_.end() && it->first == hash)
            it->second = entry;
        else
            entries_.insert(it, {hash, entry});
    }
}

void RootCache::put(const CacheKey& key, const std::vector<BetheRoots>& roots) {
    const std::string h = cache_key_hash(key);
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), h,
                                     [](const auto& e, const std::string& v) { return e.first < v; });
    if (it != entries_.end() && it->first == h) {
        it->second = Entry{cache_key_string(key), roots};
        return;
    }
    entries_.insert(it, {h, Entry{cache_key_string(key), roots}});
}

std::string RootCache::render(const std::string& format) const {
    if (format == "csv") {
        std::ostringstream os;
        os << "hash,key,set_index,residual,admissible,mu\n";
        for (const auto& [hash, entry] : entries_) {
            for (std::size_t i = 0; i < entry.roots.size(); ++i) {
                const BetheRoots& r = entry.roots[i];
                os << hash << ",\"" << entry.key_string << "\"," << i << ',' << r.residual
                   << ',' << (r.admissible ? 1 : 0) << ",\"";
                for (std::size_t k = 0; k < r.mu.size(); ++k)
                    os << (k ? ";" : "") << fmt_c(r.mu[k]);
                os << "\"\n";
            }
            if (entry.roots.empty())
                os << hash << ",\"" << entry.key_string << "\",,,,\n";
        }
        return os.str();
    }
    json out = json::object();
    for (const auto& [hash, entry] : entries_) {
        json roots = json::array();
        for (const BetheRoots& r : entry.roots) {
            json mus = json::array();
            for (const cplx& m : r.mu) mus.push_back(complex_to_json(m));
            roots.push_back(
                {{"mu", mus}, {"residual", r.residual}, {"admissible", r.admissible}});
        }
        out[hash] = {{"key", entry.key_string}, {"roots", roots}};
    }
    return json{{"schema_version", 1}, {"entries", out}}.dump(2) + "\n";
}

}  // namespace gcm
