#pragma once

// Batch front end: a JSON job config in, a JSON report (and for transport and
// develop, a CSV point cloud) out.
//
// Exit codes: 0 pass, 1 residual above tolerance, 2 config or domain error.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "cartanflat/errors.hpp"

namespace cartanflat::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { pass = 0, fail = 1, invalid = 2 };

/// Schema violation; `path` is a JSON pointer to the offending field.
class ConfigError : public Error {
public:
    ConfigError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::string> command;
    std::optional<std::size_t> grid;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
};

struct Outcome {
    int exit_code = invalid;
    nlohmann::json report;
    /// Point cloud for transport/develop, empty otherwise.
    std::string csv;
};

/// Validates and runs one job. Never throws for bad configs or singular
/// metrics; those come back as exit code 2 with an "error" object.
Outcome run(const nlohmann::json& config, const Overrides& overrides = {});

/// Names, charts and metric text of every preset.
nlohmann::json list_presets();

/// Report text: sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& report);

}  // namespace cartanflat::cli
