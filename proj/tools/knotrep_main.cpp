#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "knotrep/cli.hpp"

using knotrep::RunConfig;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--backend", cfg.backend, "scalar backend: exact|numeric")->default_str("exact");
    cmd->add_option("--precision", cfg.precision, "numeric precision in bits (>= 64)")->default_val(256);
    cmd->add_option("--format", cfg.format, "output format: json|text")->default_str("json");
    cmd->add_option("--out", cfg.out_path, "write the report to a file instead of stdout");
    cmd->add_option("--table", cfg.table_path, "knot table path (default: KNOTREP_TABLE or built-in)");
    cmd->add_flag("--timings", cfg.timings, "include timings in the report (breaks byte-stability)");
}

void add_knot_selector(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--knot", cfg.knot_name, "knot name from the table (e.g. 4_1)");
    cmd->add_option("--braid", cfg.braid_text, "braid word, e.g. \"1 -2 1 -2\" or \"s1 s2^-1\"");
    cmd->add_option("--pd", cfg.pd_text, "PD code as JSON, e.g. [[1,4,2,5],[3,6,4,1],[5,2,6,3]]");
    cmd->add_option("--presentation", cfg.presentation_text,
                    "explicit presentation, e.g. \"<S,T | S T S T^-1 S^-1 T^-1>\"");
    cmd->add_flag("--tietze", cfg.tietze, "reduce to a two-generator presentation first");
}

void add_lambda(CLI::App* cmd, RunConfig& cfg, bool required = true) {
    auto* o = cmd->add_option("--lambda", cfg.lambda_expr,
                              "eigenvalue: root(POLY_IN_x, HINT) or a complex literal a+bi");
    if (required) o->required();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reducible metabelian SL(n) representations of knot groups: "
                 "Alexander polynomials, twisted cohomology dimensions, deformations"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* alex = app.add_subcommand("alex", "Alexander polynomial of a knot");
    add_knot_selector(alex, cfg);
    add_common(alex, cfg);

    auto* rep = app.add_subcommand("rep", "generator images of rho_{lambda,n}^z");
    add_knot_selector(rep, cfg);
    add_lambda(rep, cfg);
    rep->add_option("--n", cfg.n, "compose with the n-dimensional symmetric power (default 2)");
    rep->add_option("--cocycle", cfg.cocycle, "auto or comma-separated rational values per generator")
        ->default_str("auto");
    add_common(rep, cfg);

    auto* coh = app.add_subcommand("cohomology", "twisted cochain dimensions for one module");
    add_knot_selector(coh, cfg);
    add_lambda(coh, cfg);
    coh->add_option("--module", cfg.module_spec, "module: sl:N | R:M | C:alpha")->required();
    add_common(coh, cfg);

    auto* verify = app.add_subcommand("verify", "hypotheses + smoothness certificate at (knot, lambda, n)");
    add_knot_selector(verify, cfg);
    add_lambda(verify, cfg);
    verify->add_option("--n", cfg.n, "target dimension n")->required();
    add_common(verify, cfg);

    auto* deform = app.add_subcommand("deform", "Newton deformation along a transverse cocycle");
    add_knot_selector(deform, cfg);
    add_lambda(deform, cfg);
    deform->add_option("--n", cfg.n, "target dimension n")->required();
    deform->add_option("--t", cfg.t_step, "deformation step in (0, 0.1]")->default_val(0.01);
    deform->add_option("--order", cfg.order, "also integrate a formal series to this order");
    deform->add_option("--tol", cfg.rep_tol, "Newton residual tolerance")->default_val(1e-10);
    add_common(deform, cfg);

    auto* suite = app.add_subcommand("paper-suite", "replay every reference number and property check");
    suite->add_option("--jobs", cfg.jobs, "worker threads")->default_val(1);
    add_common(suite, cfg);

    auto* table = app.add_subcommand("table", "list the bundled knot table");
    add_common(table, cfg);

    CLI11_PARSE(app, argc, argv);

    for (auto* sub : {alex, rep, coh, verify, deform, suite, table})
        if (sub->parsed()) cfg.command = sub->get_name();

    knotrep::Report report = knotrep::run(cfg);
    std::string rendered = report.render(cfg.format);
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) {
            std::cerr << "cannot write to " << cfg.out_path << "\n";
            return 1;
        }
        f << rendered;
    } else {
        std::cout << rendered;
    }
    return report.exit_code;
}
