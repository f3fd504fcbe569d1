#pragma once
// JSON job specifications and reports.  One job = one operator (or two, for
// compose / pair checks) + one command.  Schema conventions: lower_snake_case
// keys, complex numbers as [re, im], matrices as row-major nested arrays.
//
// Exit-code contract used by the CLI driver:
//   2 = malformed job (JSON syntax, missing/ill-typed fields, unknown command)
//   3 = domain violation (gamma <= 0, |point| >= 1, denominator bound, ...)
//   4 = numerical failure (overflow, eigensolver breakdown)

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wco/spectra.hpp"

namespace wco {

struct JobParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double symbol = 1e-9;
    double matrix = 1e-8;
};

// CLI flags layered over the job file.
struct JobOverrides {
    std::optional<int> degree;
    std::optional<double> tol_symbol;
    std::optional<double> tol_matrix;
    std::optional<std::uint64_t> seed;
};

struct JobSpec {
    std::string command;  // classify | adjoint | compose | verify | spectrum | compress
    SpaceParams space;
    Tolerances tol;
    std::uint64_t seed = 0;
    int samples = 100;
    WcoSymbol op1;
    std::optional<WcoSymbol> op2;
};

// Structural problems throw JobParseError; mathematical violations surface as
// the library's std::domain_error / std::invalid_argument.
JobSpec parse_job(const nlohmann::json& doc, const JobOverrides& overrides = {});

// Runs the command and returns the report, including a timing_ms field.
nlohmann::ordered_json run_job(const JobSpec& job);

// Serialization helpers (shared with tests).
nlohmann::ordered_json complex_to_json(cplx v);
nlohmann::ordered_json vector_to_json(const Eigen::VectorXcd& v);
nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXcd& m);
cplx complex_from_json(const nlohmann::json& j);
Eigen::VectorXcd vector_from_json(const nlohmann::json& j, int expected_size);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, int rows, int cols);
nlohmann::ordered_json symbol_to_json(const WcoSymbol& W);

}  // namespace wco
