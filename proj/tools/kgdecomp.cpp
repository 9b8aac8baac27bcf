// kgdecomp: command-line front end over the C interface.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgdecomp/kgdecomp.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

struct Failure {
    int exit_code;
    std::string error;
    std::string detail;
};

[[noreturn]] void usage(const std::string& detail) {
    throw Failure{kExitUsage, "InvalidArgument", detail};
}

void check(kgd_status status) {
    if (status == KGD_OK) {
        return;
    }
    const int code = status == KGD_INVALID_ARGUMENT ? kExitUsage : kExitSolver;
    throw Failure{code, kgd_status_name(status), kgd_last_error()};
}

enum class Kind { real, integer, text, flag };

struct Field {
    const char* name;
    Kind kind;
    const char* help;
};

const std::vector<Field>& fields() {
    static const std::vector<Field> all{
        {"m", Kind::real, "rest mass"},
        {"alpha", Kind::real, "Hulthen screening parameter"},
        {"s0", Kind::real, "scalar coupling, leading term"},
        {"v0", Kind::real, "vector coupling, leading term"},
        {"s1", Kind::real, "scalar coupling, linear term"},
        {"s2", Kind::real, "scalar coupling, quadratic term"},
        {"v1", Kind::real, "vector coupling, linear term"},
        {"v2", Kind::real, "vector coupling, quadratic term"},
        {"n", Kind::integer, "oscillator level"},
        {"order", Kind::integer, "highest perturbation order (1-3)"},
        {"lambda", Kind::real, "perturbation strength"},
        {"rmin", Kind::real, "first grid node (0: start one spacing from the origin)"},
        {"rmax", Kind::real, "last grid node"},
        {"h", Kind::real, "grid spacing"},
        {"states", Kind::integer, "number of oracle states (0: no oracle)"},
        {"format", Kind::text, "json, csv or table"},
        {"out", Kind::text, "write sampled amplitudes to this path"},
        {"raw", Kind::flag, "also emit the unscaled chi_raw and phi_raw columns"},
        {"derive-linear", Kind::flag, "derive (s1, v1) from the closed-form constraint"},
        {"quick", Kind::flag, "fewer draws and coarser grids"},
    };
    return all;
}

const Field& field(const std::string& name) {
    for (const auto& f : fields()) {
        if (name == f.name) {
            return f;
        }
    }
    usage("unknown key '" + name + "'");
}

struct CommandSpec {
    const char* name;
    const char* help;
    std::vector<std::string> keys;
    std::vector<std::string> required;
};

const std::vector<CommandSpec>& commands() {
    static const std::vector<CommandSpec> all{
        {"hulthen",
         "self-consistent ground state of the Hulthen scalar/vector pair",
         {"m", "alpha", "s0", "v0", "rmin", "rmax", "h", "states", "format", "out", "raw"},
         {"m", "alpha", "s0", "v0"}},
        {"coulombic",
         "Coulomb plus oscillator pair in closed form",
         {"n", "m", "s0", "s1", "s2", "v0", "v1", "v2", "derive-linear", "rmin", "rmax", "h", "states", "format", "out",
          "raw"},
         {"m", "s0", "s2"}},
        {"perturb",
         "relativistic correction of the Coulomb plus oscillator ground state by logarithmic perturbation",
         {"m", "s0", "s1", "s2", "v0", "v1", "v2", "derive-linear", "order", "lambda", "rmin", "rmax", "h", "format",
          "out"},
         {"m", "s0", "s2"}},
        {"oracle",
         "finite-difference Klein-Gordon eigenvalues (Hulthen pair when --alpha is given)",
         {"m", "alpha", "s0", "s1", "s2", "v0", "v1", "v2", "rmax", "h", "states"},
         {"m"}},
        {"verify", "cross-validate closed forms, residuals and the oracle", {"quick", "format"}, {}},
    };
    return all;
}

double grid_scale() {
    const char* env = std::getenv("KGDECOMP_GRID_SCALE");
    if (!env || !*env) {
        return 1.0;
    }
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (*end != '\0' || !std::isfinite(v) || v <= 0.0) {
        usage(std::string("KGDECOMP_GRID_SCALE must be a positive number, got '") + env + "'");
    }
    return v;
}

json defaults(const std::string& command) {
    const double h = 1e-3 / grid_scale();
    json d;
    if (command == "verify") {
        d["quick"] = false;
        d["format"] = "table";
        return d;
    }
    for (const char* k : {"s0", "s1", "s2", "v0", "v1", "v2"}) {
        d[k] = 0.0;
    }
    d["n"] = 0;
    d["order"] = 3;
    d["lambda"] = 1.0;
    d["rmin"] = 1e-3;
    d["rmax"] = 40.0;
    d["h"] = h;
    d["states"] = command == "oracle" ? 1 : 0;
    d["format"] = "json";
    d["raw"] = false;
    d["derive-linear"] = false;
    return d;
}

// Type-checks one value for `key`, from a flag or a config file.
json checked(const std::string& key, const json& value) {
    const Field& f = field(key);
    switch (f.kind) {
        case Kind::real:
            if (!value.is_number() || !std::isfinite(value.get<double>())) {
                usage("'" + key + "' must be a finite number");
            }
            return value.get<double>();
        case Kind::integer:
            if (!value.is_number_integer()) {
                usage("'" + key + "' must be an integer");
            }
            return value.get<long long>();
        case Kind::text:
            if (!value.is_string()) {
                usage("'" + key + "' must be a string");
            }
            return value;
        case Kind::flag:
            if (!value.is_boolean()) {
                usage("'" + key + "' must be true or false");
            }
            return value;
    }
    return value;
}

json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Failure{kExitSolver, "IOError", "cannot open config file '" + path + "'"};
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        usage("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

// flags > config entry > defaults.  Keys a command does not take are errors.
json resolve(const CommandSpec& spec, const json& flags, const json& entry) {
    json out = defaults(spec.name);
    auto accepts = [&](const std::string& key) {
        return std::find(spec.keys.begin(), spec.keys.end(), key) != spec.keys.end();
    };
    if (!entry.is_object()) {
        usage("config entries must be JSON objects");
    }
    for (const auto& [key, value] : entry.items()) {
        if (!accepts(key)) {
            usage("config key '" + key + "' does not apply to '" + spec.name + "'");
        }
        out[key] = checked(key, value);
    }
    for (const auto& [key, value] : flags.items()) {
        out[key] = value;
    }
    for (const auto& key : spec.required) {
        if (!flags.contains(key) && !entry.contains(key)) {
            usage("'" + std::string(spec.name) + "' needs --" + key);
        }
    }
    // Echo in the command's key order so output is independent of input order.
    json ordered;
    for (const auto& key : spec.keys) {
        if (out.contains(key)) {
            ordered[key] = out[key];
        }
    }
    return ordered;
}

double real(const json& in, const char* key) {
    return in.at(key).get<double>();
}

int integer(const json& in, const char* key) {
    const auto v = in.at(key).get<long long>();
    if (v < 0 || v > 1000000) {
        usage(std::string("'") + key + "' is out of range");
    }
    return static_cast<int>(v);
}

kgd_grid_spec grid_of(const json& in) {
    return {real(in, "rmin"), real(in, "rmax"), real(in, "h")};
}

kgd_power_pair power_pair(const json& in) {
    return {real(in, "s0"), real(in, "s1"), real(in, "s2"), real(in, "v0"), real(in, "v1"), real(in, "v2")};
}

std::string format_of(const json& in) {
    const auto f = in.at("format").get<std::string>();
    const bool verify = in.contains("quick");
    if (verify ? (f != "json" && f != "table") : (f != "json" && f != "csv")) {
        usage(verify ? "verify --format must be json or table" : "--format must be json or csv");
    }
    return f;
}

struct TableDeleter {
    void operator()(kgd_table* t) const { kgd_table_free(t); }
};
using Table = std::unique_ptr<kgd_table, TableDeleter>;

std::string csv(const kgd_table* t, size_t limit) {
    std::string s;
    const size_t cols = std::min(kgd_table_columns(t), limit);
    for (size_t c = 0; c < cols; ++c) {
        s += (c ? "," : "") + std::string(kgd_table_column_name(t, c));
    }
    s += '\n';
    char buf[32];
    for (size_t r = 0; r < kgd_table_rows(t); ++r) {
        for (size_t c = 0; c < cols; ++c) {
            std::snprintf(buf, sizeof buf, "%.16e", kgd_table_column(t, c)[r]);
            if (c) {
                s += ',';
            }
            s += buf;
        }
        s += '\n';
    }
    return s;
}

json records(const kgd_table* t, size_t limit) {
    json arr = json::array();
    const size_t cols = std::min(kgd_table_columns(t), limit);
    for (size_t r = 0; r < kgd_table_rows(t); ++r) {
        json rec;
        for (size_t c = 0; c < cols; ++c) {
            rec[kgd_table_column_name(t, c)] = kgd_table_column(t, c)[r];
        }
        arr.push_back(std::move(rec));
    }
    return arr;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
        throw Failure{kExitSolver, "IOError", "cannot write '" + path + "'"};
    }
}

// What a command produces: the JSON document and, optionally, a sampled table.
struct Outcome {
    json doc;
    Table table;
    size_t columns = SIZE_MAX;  // leading table columns to emit
    bool passed = true;
};

json warnings_of(size_t count, const std::function<const char*(size_t)>& at) {
    json w = json::array();
    for (size_t i = 0; i < count; ++i) {
        w.push_back(at(i));
    }
    return w;
}

json oracle_block(const kgd_status status, const std::vector<double>& energies, double closed, double box, double h) {
    check(status);
    json o;
    o["rmax"] = box;
    o["h"] = h;
    o["energies"] = energies;
    o["gap"] = energies.front() - closed;
    return o;
}

Outcome run_hulthen(const json& in) {
    const double m = real(in, "m");
    const kgd_hulthen_pair pair{real(in, "s0"), real(in, "v0"), real(in, "alpha")};
    const kgd_grid_spec grid = grid_of(in);
    kgd_hulthen* raw_handle = nullptr;
    check(kgd_hulthen_solve(m, pair, &grid, &raw_handle));
    const std::unique_ptr<kgd_hulthen, void (*)(kgd_hulthen*)> h(raw_handle, kgd_hulthen_free);
    kgd_hulthen_summary s{};
    check(kgd_hulthen_summary_get(h.get(), &s));

    Outcome out;
    json r;
    r["E"] = s.E;
    r["eps"] = s.eps;
    r["deps"] = s.deps;
    r["delta"] = s.delta;
    r["residual_nr"] = s.residual_nr;
    r["residual_rel"] = s.residual_rel;
    r["A"] = s.A;
    r["B"] = s.B;
    r["U0"] = s.U0;
    r["exponent_sign"] = s.exponent_sign;
    json roots = json::array();
    for (size_t i = 0; i < kgd_hulthen_root_count(h.get()); ++i) {
        roots.push_back(kgd_hulthen_root(h.get(), i));
    }
    r["roots"] = roots;
    r["warnings"] = warnings_of(kgd_hulthen_warning_count(h.get()),
                                [&](size_t i) { return kgd_hulthen_warning(h.get(), i); });
    out.doc["results"] = r;

    if (const int k = integer(in, "states"); k > 0) {
        const double box = kgd_oracle_default_box(m, s.E);
        std::vector<double> energies(static_cast<size_t>(k));
        const auto status =
            kgd_oracle_kg_hulthen(m, pair, {0.0, box, grid.h}, energies.size(), energies.data(), nullptr);
        out.doc["oracle"] = oracle_block(status, energies, s.E, box, grid.h);
    }
    if (in.contains("out") || format_of(in) == "csv") {
        kgd_table* t = nullptr;
        check(kgd_hulthen_wavefunction(h.get(), grid, in.at("raw").get<bool>() ? 1 : 0, &t));
        out.table.reset(t);
    }
    return out;
}

Outcome run_coulombic(const json& in) {
    const double m = real(in, "m");
    const int n = integer(in, "n");
    const kgd_grid_spec grid = grid_of(in);
    kgd_coulombic* raw_handle = nullptr;
    check(kgd_coulombic_solve(n, m, power_pair(in), in.at("derive-linear").get<bool>() ? 1 : 0, &grid, &raw_handle));
    const std::unique_ptr<kgd_coulombic, void (*)(kgd_coulombic*)> c(raw_handle, kgd_coulombic_free);
    kgd_coulombic_summary s{};
    check(kgd_coulombic_summary_get(c.get(), &s));

    Outcome out;
    json r;
    r["E"] = s.E;
    r["eps"] = s.eps;
    r["deps"] = s.E * s.E - m * m - s.eps;
    r["residual_nr"] = s.residual_nr;
    r["constraint_residual"] = s.constraint_residual;
    r["g_residual"] = s.g_residual;
    r["a"] = s.a;
    r["b"] = s.b;
    r["c"] = s.c;
    r["iterations"] = s.iterations;
    r["degenerate"] = s.degenerate != 0;
    const auto& p = s.effective_pair;
    r["pair"] = {{"s0", p.s0}, {"s1", p.s1}, {"s2", p.s2}, {"v0", p.v0}, {"v1", p.v1}, {"v2", p.v2}};
    r["warnings"] = warnings_of(kgd_coulombic_warning_count(c.get()),
                                [&](size_t i) { return kgd_coulombic_warning(c.get(), i); });
    out.doc["results"] = r;

    if (const int k = integer(in, "states"); k > 0 && !s.degenerate) {
        const double box = kgd_oracle_default_box(m, s.E);
        std::vector<double> energies(static_cast<size_t>(k));
        const auto status = kgd_oracle_kg_power(m, p, {0.0, box, grid.h}, energies.size(), energies.data(), nullptr);
        out.doc["oracle"] = oracle_block(status, energies, s.E, box, grid.h);
    }
    if (in.contains("out") || format_of(in) == "csv") {
        kgd_table* t = nullptr;
        check(kgd_coulombic_wavefunction(c.get(), grid, in.at("raw").get<bool>() ? 1 : 0, &t));
        out.table.reset(t);
    }
    return out;
}

Outcome run_perturb(const json& in) {
    const double m = real(in, "m");
    const int order = integer(in, "order");
    const double lambda = real(in, "lambda");
    const kgd_grid_spec grid = grid_of(in);
    kgd_coulombic* base_handle = nullptr;
    check(kgd_coulombic_solve(0, m, power_pair(in), in.at("derive-linear").get<bool>() ? 1 : 0, &grid, &base_handle));
    const std::unique_ptr<kgd_coulombic, void (*)(kgd_coulombic*)> base(base_handle, kgd_coulombic_free);
    kgd_coulombic_summary b{};
    check(kgd_coulombic_summary_get(base.get(), &b));
    if (b.degenerate) {
        throw Failure{kExitSolver, "NoBoundState", "S = -V pair has no bound base state to perturb"};
    }

    kgd_series* series_handle = nullptr;
    check(kgd_series_run_power(m, b.E, b.effective_pair, b.effective_pair, order, lambda, grid, &series_handle));
    const std::unique_ptr<kgd_series, void (*)(kgd_series*)> series(series_handle, kgd_series_free);

    Outcome out;
    const double deps = kgd_series_energy_shift(series.get(), lambda, 0);
    const double e2 = m * m + b.eps + deps;
    json r;
    r["E"] = e2 >= 0.0 ? json(std::sqrt(e2)) : json(nullptr);
    r["eps"] = b.eps;
    r["deps"] = deps;
    json by_order = json::array();
    for (int k = 1; k <= kgd_series_order(series.get()); ++k) {
        by_order.push_back(kgd_series_deps(series.get(), k));
    }
    r["deps_by_order"] = by_order;
    r["base_E"] = b.E;
    r["residual_nr"] = b.residual_nr;
    json w = warnings_of(kgd_coulombic_warning_count(base.get()),
                         [&](size_t i) { return kgd_coulombic_warning(base.get(), i); });
    for (size_t i = 0; i < kgd_series_warning_count(series.get()); ++i) {
        w.push_back(kgd_series_warning(series.get(), i));
    }
    if (e2 < 0.0) {
        w.push_back("m^2 + eps + deps < 0: corrected energy is complex");
    }
    r["warnings"] = w;
    out.doc["results"] = r;

    if (in.contains("out") || format_of(in) == "csv") {
        kgd_table* t = nullptr;
        check(kgd_series_table(series.get(), m, &t));
        out.table.reset(t);
        out.columns = 4;  // r, chi, phi, psi; the dW_k columns stay in the C interface
    }
    return out;
}

Outcome run_oracle(const json& in) {
    const double m = real(in, "m");
    const int k = integer(in, "states");
    if (k < 1) {
        usage("--states must be at least 1 for the oracle");
    }
    const bool hulthen = in.contains("alpha");
    const double h = real(in, "h");
    const double box = real(in, "rmax");
    std::vector<double> energies(static_cast<size_t>(k));
    std::vector<double> eigenvalues(static_cast<size_t>(k));
    if (hulthen) {
        check(kgd_oracle_kg_hulthen(m, {real(in, "s0"), real(in, "v0"), real(in, "alpha")}, {0.0, box, h},
                                    energies.size(), energies.data(), eigenvalues.data()));
    } else {
        check(kgd_oracle_kg_power(m, power_pair(in), {0.0, box, h}, energies.size(), energies.data(),
                                  eigenvalues.data()));
    }
    Outcome out;
    json r;
    r["E"] = energies.front();
    r["eps"] = eigenvalues.front();
    r["energies"] = energies;
    r["eigenvalues"] = eigenvalues;
    r["potential"] = hulthen ? "hulthen" : "power-series";
    r["rmax"] = box;
    r["h"] = h;
    r["warnings"] = json::array();
    out.doc["results"] = r;
    return out;
}

Outcome run_verify(const json& in) {
    kgd_report* handle = nullptr;
    check(kgd_verify(in.at("quick").get<bool>() ? 1 : 0, grid_scale(), &handle));
    const std::unique_ptr<kgd_report, void (*)(kgd_report*)> report(handle, kgd_report_free);
    Outcome out;
    json checks = json::array();
    for (size_t i = 0; i < kgd_report_count(report.get()); ++i) {
        kgd_check c{};
        check(kgd_report_check(report.get(), i, &c));
        checks.push_back({{"group", c.group},
                          {"name", c.name},
                          {"passed", c.passed != 0},
                          {"value", c.value},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
    }
    out.passed = kgd_report_all_passed(report.get()) != 0;
    out.doc["results"] = {{"passed", out.passed}, {"checks", checks}};
    return out;
}

std::string verify_table(const json& doc) {
    std::ostringstream os;
    char buf[256];
    int failures = 0;
    for (const auto& c : doc.at("results").at("checks")) {
        const bool ok = c.at("passed").get<bool>();
        failures += ok ? 0 : 1;
        const double value = c.at("value").is_null() ? std::nan("") : c.at("value").get<double>();
        std::snprintf(buf, sizeof buf, "%-4s [%d] %-44s %11.3e  (limit %.3e)  ", ok ? "ok" : "FAIL",
                      c.at("group").get<int>(), c.at("name").get<std::string>().c_str(), value,
                      c.at("tolerance").get<double>());
        os << buf << c.at("detail").get<std::string>() << '\n';
    }
    os << (failures ? std::to_string(failures) + " check(s) failed\n" : "all checks passed\n");
    return os.str();
}

Outcome dispatch(const std::string& command, const json& in) {
    if (command == "hulthen") {
        return run_hulthen(in);
    }
    if (command == "coulombic") {
        return run_coulombic(in);
    }
    if (command == "perturb") {
        return run_perturb(in);
    }
    if (command == "oracle") {
        return run_oracle(in);
    }
    return run_verify(in);
}

// Runs one resolved configuration; returns the exit code.
int execute(const std::string& command, const json& in, bool list_mode, json* collected) {
    Outcome outcome = dispatch(command, in);
    json doc;
    doc["command"] = command;
    doc["inputs"] = in;
    for (auto& [k, v] : outcome.doc.items()) {
        doc[k] = v;
    }
    const std::string format = in.contains("format") ? format_of(in) : "json";
    if (list_mode) {
        collected->push_back(doc);
        return outcome.passed ? kExitOk : kExitVerify;
    }
    if (command == "verify" && format == "table") {
        std::cout << verify_table(doc);
    } else if (format == "csv" && outcome.table) {
        const std::string text = csv(outcome.table.get(), outcome.columns);
        if (in.contains("out")) {
            write_file(in.at("out").get<std::string>(), text);
            std::cout << doc.dump(2) << '\n';
        } else {
            std::cout << text;
        }
    } else {
        if (outcome.table && in.contains("out")) {
            write_file(in.at("out").get<std::string>(), records(outcome.table.get(), outcome.columns).dump(2) + "\n");
        }
        std::cout << doc.dump(2) << '\n';
    }
    return outcome.passed ? kExitOk : kExitVerify;
}

void report_failure(const Failure& f) {
    json err;
    err["error"] = f.error;
    err["detail"] = f.detail;
    std::cerr << err.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Klein-Gordon s-wave bound states by chi/phi decomposition"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");
    app.set_version_flag("--version", std::string(kgd_version()));

    // Flag values land here as JSON so they merge with config entries uniformly.
    std::map<std::string, json> given;
    std::map<std::string, std::optional<double>> reals;
    std::map<std::string, std::optional<long long>> ints;
    std::map<std::string, std::optional<std::string>> texts;
    std::map<std::string, std::string> config_paths;
    std::map<std::string, CLI::App*> subs;

    for (const auto& spec : commands()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->set_help_flag("--help", "print this help and exit");  // frees --h for the grid spacing
        subs[spec.name] = sub;
        for (const auto& key : spec.keys) {
            const Field& f = field(key);
            const std::string flag = "--" + key;
            const std::string id = std::string(spec.name) + "/" + key;
            switch (f.kind) {
                case Kind::real: sub->add_option(flag, reals[id], f.help); break;
                case Kind::integer: sub->add_option(flag, ints[id], f.help); break;
                case Kind::text: sub->add_option(flag, texts[id], f.help); break;
                case Kind::flag: sub->add_flag(flag, f.help); break;
            }
        }
        sub->add_option("--config", config_paths[spec.name], "JSON object (or array of objects) with flag-named keys");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_failure({kExitUsage, "InvalidArgument", e.what()});
        return kExitUsage;
    }

    try {
        const CommandSpec* spec = nullptr;
        for (const auto& s : commands()) {
            if (subs[s.name]->parsed()) {
                spec = &s;
            }
        }
        const std::string command = spec->name;
        CLI::App* sub = subs[command];
        for (const auto& key : spec->keys) {
            const std::string id = command + "/" + key;
            switch (field(key).kind) {
                case Kind::real:
                    if (reals[id]) {
                        given[key] = checked(key, *reals[id]);
                    }
                    break;
                case Kind::integer:
                    if (ints[id]) {
                        given[key] = *ints[id];
                    }
                    break;
                case Kind::text:
                    if (texts[id]) {
                        given[key] = *texts[id];
                    }
                    break;
                case Kind::flag:
                    if (sub->count("--" + key) > 0) {
                        given[key] = true;
                    }
                    break;
            }
        }
        json flags = json::object();
        for (const auto& [k, v] : given) {
            flags[k] = v;
        }

        const std::string& config_path = config_paths[command];
        const json config = config_path.empty() ? json::object() : read_config(config_path);
        if (config.is_array()) {
            if (flags.contains("out")) {
                usage("--out cannot be combined with a config list");
            }
            json collected = json::array();
            int code = kExitOk;
            for (const auto& entry : config) {
                json in = resolve(*spec, flags, entry);
                in["format"] = "json";
                in.erase("out");
                code = std::max(code, execute(command, in, true, &collected));
            }
            std::cout << collected.dump(2) << '\n';
            return code;
        }
        const json in = resolve(*spec, flags, config);
        if (in.contains("format")) {
            format_of(in);
        }
        return execute(command, in, false, nullptr);
    } catch (const Failure& f) {
        report_failure(f);
        return f.exit_code;
    } catch (const std::exception& e) {
        report_failure({kExitSolver, "InternalError", e.what()});
        return kExitSolver;
    }
}
