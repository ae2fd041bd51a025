#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace uavplan {

// Shortest round-trip decimal representation ('.' decimal separator,
// locale-independent). Identical input bits give identical text.
std::string format_double(double v);

// Writes via a temp file in the same directory and renames into place.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

// Provenance record written next to every output set.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::vector<std::uint64_t> seeds;
    std::string version;
    std::vector<std::string> outputs;
    double duration_s = 0.0;
};

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

}  // namespace uavplan
