#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "knotrep/deform.hpp"

namespace knotrep {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string command; // alex | rep | cohomology | verify | deform | paper-suite | table
    // knot selector (exactly one)
    std::string knot_name;
    std::string braid_text;
    std::string pd_text;
    std::string presentation_text;

    std::string lambda_expr; // root(POLY, HINT) or a complex literal
    std::string module_spec; // sl:N | R:M | C:alpha
    int n = 0;

    std::string backend = "exact"; // exact | numeric
    int precision = 256;
    std::string cocycle = "auto"; // auto | comma-separated rationals
    double t_step = 0.01;
    int order = 0; // formal series order for `deform` (0 = skip)
    int burnside_cap = 0; // 0 = default 2n-2

    std::string format = "json"; // json | text
    std::string out_path;
    std::string table_path;
    int jobs = 1;
    bool tietze = false;
    bool timings = false; // timings break byte-stability; off by default
    double rep_tol = 1e-10;
};

struct Report {
    Json doc;
    int exit_code = 0;

    std::string render(const std::string& format) const;
};

// exit code 0 on success, 2 on hypothesis failure (expected negative), 1 on error
Report run(const RunConfig& cfg);

// ---- paper-number suite -----------------------------------------------------

struct PaperCheckResult {
    int criterion = 0;     // 1..8
    std::string id;        // e.g. "2.sl6"
    std::string name;
    bool pass = false;
    std::string details;
    long long millis = 0;
};

struct PaperSuiteConfig {
    std::string backend = "exact";
    int precision = 256;
    std::string table_path;
    int jobs = 1;
    bool timings = false;
};

std::vector<PaperCheckResult> run_paper_suite(const PaperSuiteConfig& cfg);

} // namespace knotrep
