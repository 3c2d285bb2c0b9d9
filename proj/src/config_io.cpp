#include "photokin/config_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "photokin/numerics.hpp"

namespace photokin {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument("config: " + message);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown key '" + item.key() + "' in " + where);
    }
}

double require_number(const json& obj, const char* key) {
    if (!obj.contains(key)) fail(std::string("missing key '") + key + "'");
    const json& value = obj.at(key);
    if (!value.is_number()) fail(std::string("'") + key + "' must be a number");
    return value.get<double>();
}

std::vector<double> number_array(const json& value, const std::string& where) {
    if (!value.is_array()) fail(where + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (const json& element : value) {
        if (!element.is_number()) fail(where + " must contain only numbers");
        out.push_back(element.get<double>());
    }
    return out;
}

FunctionSpec parse_function(const json& value, const std::string& where) {
    if (!value.is_object()) fail(where + " must be an object");
    reject_unknown_keys(value, {"builtin", "params", "table"}, where);
    const bool has_builtin = value.contains("builtin");
    const bool has_table = value.contains("table");
    if (has_builtin == has_table)
        fail(where + " must have exactly one of 'builtin' or 'table'");
    try {
        if (has_builtin) {
            const json& name = value.at("builtin");
            if (!name.is_string()) fail(where + ".builtin must be a string");
            std::vector<double> params;
            if (value.contains("params")) params = number_array(value.at("params"), where + ".params");
            return FunctionSpec::builtin(name.get<std::string>(), std::move(params));
        }
        const json& table = value.at("table");
        if (value.contains("params")) fail(where + " cannot combine 'table' with 'params'");
        if (!table.is_object()) fail(where + ".table must be an object");
        reject_unknown_keys(table, {"x", "y"}, where + ".table");
        if (!table.contains("x") || !table.contains("y"))
            fail(where + ".table needs both 'x' and 'y'");
        return FunctionSpec::table(number_array(table.at("x"), where + ".table.x"),
                                   number_array(table.at("y"), where + ".table.y"));
    } catch (const std::invalid_argument& err) {
        const std::string what = err.what();
        if (what.rfind("config:", 0) == 0) throw;
        fail(where + ": " + what);
    }
}

json function_json(const FunctionSpec& spec) {
    json out = json::object();
    if (spec.is_table()) {
        out["table"] = {{"x", spec.table_x()}, {"y", spec.table_y()}};
    } else {
        out["builtin"] = spec.builtin_name();
        out["params"] = spec.params();
    }
    return out;
}

double parse_double_token(const std::string& token, const std::string& where) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) fail("bad number '" + token + "' in " + where);
    return value;
}

std::size_t parse_index_token(const std::string& token, const std::string& where) {
    std::size_t value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) fail("bad index '" + token + "' in " + where);
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream stream(line);
    while (std::getline(stream, token, ',')) out.push_back(token);
    return out;
}

const std::string& provenance_value(const std::map<std::string, std::string>& provenance,
                                    const char* key) {
    auto it = provenance.find(key);
    if (it == provenance.end()) fail(std::string("field file is missing '# ") + key + "='");
    return it->second;
}

}  // namespace

ProblemSpec parse_problem_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        fail(std::string("not valid JSON: ") + err.what());
    }
    if (!root.is_object()) fail("top level must be an object");
    reject_unknown_keys(root,
                        {"L", "T", "lambda0", "lambda_star", "a1", "a2", "mu", "c0", "C0", "f",
                         "I", "epsA", "epsB"},
                        "problem object");

    ProblemSpec spec;
    spec.L = require_number(root, "L");
    spec.T = require_number(root, "T");
    spec.lambda0 = require_number(root, "lambda0");
    spec.lambda_star = require_number(root, "lambda_star");
    spec.a1 = require_number(root, "a1");
    spec.a2 = require_number(root, "a2");
    spec.mu = require_number(root, "mu");

    for (const char* key : {"c0", "f", "I", "epsA", "epsB"}) {
        if (!root.contains(key)) fail(std::string("missing key '") + key + "'");
    }
    spec.c0 = parse_function(root.at("c0"), "'c0'");
    spec.f = parse_function(root.at("f"), "'f'");
    spec.I = parse_function(root.at("I"), "'I'");
    spec.epsA = parse_function(root.at("epsA"), "'epsA'");
    spec.epsB = parse_function(root.at("epsB"), "'epsB'");

    if (!root.contains("C0")) fail("missing key 'C0' (use \"derive\" to integrate c0)");
    const json& C0 = root.at("C0");
    if (C0.is_string()) {
        if (C0.get<std::string>() != "derive")
            fail("'C0' must be a function object or the string \"derive\"");
        spec.C0.reset();
    } else {
        spec.C0 = parse_function(C0, "'C0'");
    }
    return spec;
}

ProblemSpec load_problem_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_config(buffer.str());
}

std::string problem_config_json(const ProblemSpec& spec) {
    json root = json::object();
    root["L"] = spec.L;
    root["T"] = spec.T;
    root["lambda0"] = spec.lambda0;
    root["lambda_star"] = spec.lambda_star;
    root["a1"] = spec.a1;
    root["a2"] = spec.a2;
    root["mu"] = spec.mu;
    root["c0"] = function_json(spec.c0);
    root["C0"] = spec.C0 ? function_json(*spec.C0) : json("derive");
    root["f"] = function_json(spec.f);
    root["I"] = function_json(spec.I);
    root["epsA"] = function_json(spec.epsA);
    root["epsB"] = function_json(spec.epsB);
    return root.dump(2) + "\n";
}

void write_field_csv(std::ostream& out, const SolutionField& c, const SolutionField& cB,
                     const std::map<std::string, std::string>& provenance) {
    const GridSpec& grid = c.grid();
    if (cB.rows() != c.rows() || cB.cols() != c.cols())
        throw std::invalid_argument("write_field_csv: field shapes differ");

    std::map<std::string, std::string> merged = provenance;
    merged["scheme"] = c.scheme_name();
    merged["Nx"] = std::to_string(grid.Nx);
    merged["Nt"] = std::to_string(grid.Nt);
    merged["Nl"] = std::to_string(grid.Nl);
    merged["dx"] = format_round_trip(grid.dx);
    merged["dt"] = format_round_trip(grid.dt);
    merged["dl"] = format_round_trip(grid.dl);
    merged["lambda0"] = format_round_trip(grid.lambda0);
    for (const auto& [key, value] : merged) out << "# " << key << '=' << value << '\n';

    out << "j,n,x,t,c,c_B\n";
    for (std::size_t n = 0; n < c.rows(); ++n) {
        for (std::size_t j = 0; j < c.cols(); ++j) {
            out << j << ',' << n << ',' << format_round_trip(grid.x(j)) << ','
                << format_round_trip(grid.t(n)) << ',' << format_round_trip(c.at(n, j)) << ','
                << format_round_trip(cB.at(n, j)) << '\n';
        }
    }
}

void write_field_csv(const std::filesystem::path& path, const SolutionField& c,
                     const SolutionField& cB,
                     const std::map<std::string, std::string>& provenance) {
    std::ofstream out(path);
    if (!out) fail("cannot open " + path.string() + " for writing");
    write_field_csv(out, c, cB, provenance);
    if (!out) fail("write to " + path.string() + " failed");
}

LoadedField read_field_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path.string());

    LoadedField loaded;
    std::string line;
    bool header_seen = false;
    GridSpec grid;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=', 2);
            if (eq == std::string::npos) fail("malformed comment line '" + line + "'");
            loaded.provenance[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            if (line != "j,n,x,t,c,c_B") fail("unexpected header '" + line + "'");
            grid.Nx = parse_index_token(provenance_value(loaded.provenance, "Nx"), "Nx");
            grid.Nt = parse_index_token(provenance_value(loaded.provenance, "Nt"), "Nt");
            grid.Nl = parse_index_token(provenance_value(loaded.provenance, "Nl"), "Nl");
            grid.dx = parse_double_token(provenance_value(loaded.provenance, "dx"), "dx");
            grid.dt = parse_double_token(provenance_value(loaded.provenance, "dt"), "dt");
            grid.dl = parse_double_token(provenance_value(loaded.provenance, "dl"), "dl");
            grid.lambda0 =
                parse_double_token(provenance_value(loaded.provenance, "lambda0"), "lambda0");
            const std::string& scheme = provenance_value(loaded.provenance, "scheme");
            loaded.c = SolutionField(grid, scheme);
            loaded.cB = SolutionField(grid, "product(" + scheme + ")");
            header_seen = true;
            continue;
        }
        const std::vector<std::string> tokens = split_csv_line(line);
        if (tokens.size() != 6) fail("expected 6 columns, got line '" + line + "'");
        const std::size_t j = parse_index_token(tokens[0], "column j");
        const std::size_t n = parse_index_token(tokens[1], "column n");
        if (j > grid.Nx || n > grid.Nt) fail("node (" + tokens[1] + "," + tokens[0] + ") is outside the declared grid");
        loaded.c.at(n, j) = parse_double_token(tokens[4], "column c");
        loaded.cB.at(n, j) = parse_double_token(tokens[5], "column c_B");
    }
    if (!header_seen) fail(path.string() + " holds no field data");
    return loaded;
}

void write_series_csv(const std::filesystem::path& path, const std::string& value_name,
                      const std::vector<double>& t, const std::vector<double>& values) {
    if (t.size() != values.size())
        throw std::invalid_argument("write_series_csv: length mismatch");
    std::ofstream out(path);
    if (!out) fail("cannot open " + path.string() + " for writing");
    out << "t," << value_name << '\n';
    for (std::size_t i = 0; i < t.size(); ++i)
        out << format_round_trip(t[i]) << ',' << format_round_trip(values[i]) << '\n';
    if (!out) fail("write to " + path.string() + " failed");
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report) {
    std::ofstream out(path);
    if (!out) fail("cannot open " + path.string() + " for writing");
    out << "scheme,theta,error,order,seconds\n";
    for (const ConvergenceRow& row : report.rows) {
        out << report.scheme << ',' << format_round_trip(row.theta) << ','
            << format_round_trip(row.error) << ','
            << (std::isnan(row.order) ? std::string("") : format_round_trip(row.order)) << ','
            << format_round_trip(row.seconds) << '\n';
    }
    if (!out) fail("write to " + path.string() + " failed");
}

}  // namespace photokin
