#include "cache.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "qh/version.hpp"

namespace qh {

namespace fs = std::filesystem;

ResultCache ResultCache::from_env() {
    if (const char* d = std::getenv("QH_CACHE"); d && *d) return ResultCache(d);
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return ResultCache(fs::path(x) / "qh");
    if (const char* h = std::getenv("HOME"); h && *h) return ResultCache(fs::path(h) / ".cache" / "qh");
    return ResultCache();
}

std::string ResultCache::key(const ContinuedFraction& cf, int color, Family start, bool canonical) {
    std::ostringstream os;
    os << "v" << kEngineVersion << "_cf";
    for (int a : cf.entries) os << "-" << a;
    os << "_j" << color << "_" << (start == Family::UP ? "up" : "op") << "_" << (canonical ? "canonical" : "raw");
    return os.str();
}

std::optional<json> ResultCache::load(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    try {
        json entry = json::parse(in);
        if (entry.at("engine_version").get<std::string>() != kEngineVersion) return std::nullopt;
        return entry.at("record");
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void ResultCache::store(const std::string& key, const json& record) const {
    if (!enabled()) return;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    json entry = {{"engine_version", kEngineVersion},
                  {"created_at", std::chrono::duration_cast<std::chrono::seconds>(now).count()},
                  {"record", record}};
    try {
        fs::create_directories(dir_);
        write_file_atomic(dir_ / (key + ".json"), entry.dump());
    } catch (const std::exception&) {
    }
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    static std::atomic<unsigned long> counter{0};
    std::ostringstream name;
    name << "." << path.filename().string() << ".tmp-" << ::getpid() << "-"
         << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-" << counter++;
    fs::path tmp = path.parent_path() / name.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

}  // namespace qh
