#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgeom/linalg.hpp"

namespace qgeom::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Collects what a command read and wrote; written next to the primary output.
class RunManifest {
public:
    RunManifest(std::string command, const CLI::App& sub);

    void input(const std::filesystem::path& p) { inputs_.push_back(p.string()); }
    void output(const std::filesystem::path& p) { outputs_.push_back(p.string()); }
    void seed(std::uint64_t s) { seeds_.push_back(s); }
    nlohmann::json& extra() { return extra_; }

    /// Writes `<primary>.manifest.json` atomically.
    void write(const std::filesystem::path& primary) const;

private:
    std::string command_;
    nlohmann::json parameters_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::vector<std::uint64_t> seeds_;
    nlohmann::json extra_ = nlohmann::json::object();
    std::chrono::steady_clock::time_point start_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// Feature rows of a CSV file; `header` skips the first line.
RMatrix read_rows(const std::filesystem::path& path, bool header);

nlohmann::json to_json(const RVector& v);
nlohmann::json to_json(const CMatrix& m);

RVector to_vector(const std::vector<double>& v);

}  // namespace qgeom::cli
