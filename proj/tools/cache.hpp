#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qh/serialize.hpp"

namespace qh {

class ResultCache {
public:
    // QH_CACHE, else $XDG_CACHE_HOME/qh, else ~/.cache/qh; disabled when none is known
    static ResultCache from_env();

    ResultCache() = default;
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }
    const std::filesystem::path& dir() const { return dir_; }

    static std::string key(const ContinuedFraction& cf, int color, Family start, bool canonical);

    std::optional<json> load(const std::string& key) const;
    // written to a temporary file and renamed into place
    void store(const std::string& key, const json& record) const;

private:
    std::filesystem::path dir_;
};

// write a whole file atomically (temporary file in the same directory, then rename)
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qh
