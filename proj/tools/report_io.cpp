#include "report_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "entmap/errors.hpp"
#include "entmap/version.hpp"

namespace entmap::cli {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("ENTMAP_LOG");
        if (!env) return 0;
        return std::atoi(env);
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[entmap] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[entmap:debug] " << msg << '\n';
}

std::string config_header(const nlohmann::json& config) {
    return std::string("# entmap ") + kVersion + " config=" + config.dump();
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file " + path.string());
    out << body;
    if (!out) throw Error("failed writing " + path.string());
}

void write_json_report(const std::filesystem::path& path, const nlohmann::json& config,
                       nlohmann::json payload) {
    payload["version"] = kVersion;
    payload["config"] = config;
    write_text_file(path, payload.dump(2) + "\n");
}

} // namespace entmap::cli
