// wco-lab: JSON job driver for weighted composition operators on the kernel
// spaces of the unit ball.  See docs/ for the job schema; exit codes:
// 0 ok, 2 malformed job/flags, 3 domain violation, 4 numerical failure.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wco/job.hpp"

namespace {

int run(const std::string& command, const std::string& job_path, const std::string& out_path,
        const wco::JobOverrides& ov) {
    nlohmann::json doc;
    {
        std::ifstream in(job_path);
        if (!in) {
            std::cerr << "error: cannot open job file '" << job_path << "'\n";
            return 2;
        }
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    try {
        if (doc.is_object()) doc["command"] = command;  // the subcommand is authoritative
        const wco::JobSpec job = wco::parse_job(doc, ov);
        const nlohmann::ordered_json rep = wco::run_job(job);
        const std::string text = rep.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot open output file '" << out_path << "'\n";
                return 4;
            }
            out << text;
        }
        return 0;
    } catch (const wco::JobParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted composition operators on the kernel spaces of the unit ball"};
    app.require_subcommand(1);

    std::string job_path, out_path;
    wco::JobOverrides ov;
    static const char* kCommands[] = {"classify", "adjoint", "compose",
                                      "verify",   "spectrum", "compress"};
    static const char* kHelp[] = {
        "run all structure classifiers on the operator",
        "compute the adjoint symbol (kernel-type weights only)",
        "multiply operator by operator2",
        "check the closed-form identity suite",
        "exact and compression spectra with cross-checks",
        "dump the truncated matrix of the operator"};
    for (int i = 0; i < 6; ++i) {
        CLI::App* sub = app.add_subcommand(kCommands[i], kHelp[i]);
        sub->add_option("--job", job_path, "job file (JSON)")->required();
        sub->add_option("--out", out_path, "write the report here instead of stdout");
        sub->add_option("--degree", ov.degree, "override space.degree_cap");
        sub->add_option("--tol-symbol", ov.tol_symbol, "override the symbol tolerance");
        sub->add_option("--tol-matrix", ov.tol_matrix, "override the matrix tolerance");
        sub->add_option("--seed", ov.seed, "override the sampling seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    return run(command, job_path, out_path, ov);
}
