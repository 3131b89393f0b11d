#include "run_output.hpp"

#include <cstdio>
#include <fstream>

#include "subw/errors.hpp"

namespace subwcli {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw subw::config_error("cannot write " + path.string());
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw subw::config_error("cannot write " + path.string());
    out << text;
}

RunManifest::RunManifest(std::string command, std::uint64_t seed,
                         nlohmann::json config_snapshot)
    : command_(std::move(command)), seed_(seed), config_(std::move(config_snapshot)) {}

void RunManifest::add_output(const std::filesystem::path& path) {
    outputs_.push_back(path.filename().string());
}

void RunManifest::write(const std::filesystem::path& dir, double wall_seconds) const {
    nlohmann::json j;
    j["command"] = command_;
    j["config"] = config_;
    j["seed"] = seed_;
    j["tool_version"] = kToolVersion;
    j["wall_time_s"] = wall_seconds;
    j["outputs"] = outputs_;
    write_text(dir / (command_ + "_manifest.json"), j.dump(2) + "\n");
}

}  // namespace subwcli
