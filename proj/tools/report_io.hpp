#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace entmap::cli {

/// Decimal string with 17 significant digits, locale-independent; enough to
/// round-trip any double bit-exactly.
std::string format_double(double v);

/// 0 = warnings, 1 = info, 2 = debug; read once from ENTMAP_LOG.
int log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

/// "# entmap <version> config=<sorted-key json>" — the reproducibility
/// header every output file starts with.
std::string config_header(const nlohmann::json& config);

void write_text_file(const std::filesystem::path& path, const std::string& body);

/// JSON report with version + config + payload, 2-space indent, sorted keys.
void write_json_report(const std::filesystem::path& path, const nlohmann::json& config,
                       nlohmann::json payload);

} // namespace entmap::cli
