#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace subwcli {

inline constexpr const char* kToolVersion = "0.1.0";

/// "%.17g" so every data value round-trips exactly.
std::string fmt17(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Per-run provenance record. Wall time and the manifest itself are the only
/// outputs allowed to differ between identical runs.
class RunManifest {
public:
    RunManifest(std::string command, std::uint64_t seed, nlohmann::json config_snapshot);
    void add_output(const std::filesystem::path& path);
    void write(const std::filesystem::path& dir, double wall_seconds) const;

private:
    std::string command_;
    std::uint64_t seed_;
    nlohmann::json config_;
    std::vector<std::string> outputs_;
};

}  // namespace subwcli
