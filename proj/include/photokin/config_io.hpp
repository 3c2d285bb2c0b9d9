#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <string>

#include "photokin/experiments.hpp"
#include "photokin/field.hpp"
#include "photokin/model.hpp"

namespace photokin {

/// Parses a problem description from JSON text. Top-level keys: the scalar
/// bounds and constants (L, T, lambda0, lambda_star, a1, a2, mu) and the
/// six ingredient functions (c0, C0, f, I, epsA, epsB). Each function is
/// {"builtin": name, "params": [...]} or {"table": {"x": [...], "y": [...]}};
/// C0 may also be the string "derive". Unknown keys are rejected by name.
[[nodiscard]] ProblemSpec parse_problem_config(const std::string& text);
[[nodiscard]] ProblemSpec load_problem_config(const std::filesystem::path& path);

/// Inverse of parse_problem_config, canonical field order, round-trip
/// precision.
[[nodiscard]] std::string problem_config_json(const ProblemSpec& spec);

/// Concentration table as CSV: provenance comment lines first
/// (# key=value), a header row, then one line per node with columns
/// j,n,x,t,c,c_B in full round-trip precision. Row-major: n outer,
/// j inner.
void write_field_csv(std::ostream& out, const SolutionField& c, const SolutionField& cB,
                     const std::map<std::string, std::string>& provenance);
void write_field_csv(const std::filesystem::path& path, const SolutionField& c,
                     const SolutionField& cB,
                     const std::map<std::string, std::string>& provenance);

struct LoadedField {
    SolutionField c;
    SolutionField cB;
    std::map<std::string, std::string> provenance;
};

/// Reads back what write_field_csv produced, bit for bit.
[[nodiscard]] LoadedField read_field_csv(const std::filesystem::path& path);

/// Two-column series CSV: t plus one named value column.
void write_series_csv(const std::filesystem::path& path, const std::string& value_name,
                      const std::vector<double>& t, const std::vector<double>& values);

/// Study table: scheme,theta,error,order,seconds.
void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report);

}  // namespace photokin
