#pragma once

// Command-line surface of the qcanon tool: argument parsing, dispatch to the
// library, and text/json/latex rendering of reports.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcanon/matgrid.hpp"

namespace qcanon::cli {

struct Invocation {
    std::string command;  // cell|basis|bar|product|minor|graph|conjecture|verify
    std::string format = "text";
    std::string spec = "generic";
    std::optional<std::string> cacheDir;
    bool timing = false;
    std::optional<MatIdx> matrix;
    std::optional<MatIdx> left;
    std::optional<MatIdx> right;
    std::vector<int> rows;  // margins for cell, indices for minor
    std::vector<int> cols;
    int n = 2;
    std::optional<int> maxMass;
    int maxEntry = 2;
    std::string variant = "all";
    std::string family = "square";  // square|two-by-three
    std::string suite;
    unsigned threads = 0;
};

/// argv without the program name. Throws UsageError with an actionable message.
Invocation parse_invocation(const std::vector<std::string>& args);

struct Outcome {
    std::string output;  // rendered in the requested format, newline-terminated
    int exitCode = 0;    // 0 ok, 1 verified failure or runtime error
    nlohmann::json report;
};

/// Runs a validated invocation; library warnings (cache fallbacks) go to warn.
Outcome execute(const Invocation& inv, std::ostream& warn);

/// --cache-dir, else $QCANON_CACHE, else ./.qcanon-cache.
std::filesystem::path resolve_cache_dir(const Invocation& inv);

/// Parse, execute and print; returns the process exit code (2 on usage errors).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcanon::cli
