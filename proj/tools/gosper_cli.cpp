// Command-line front end for the product-scheme library: list the catalog,
// evaluate a scheme, verify it against the reference oracles, measure its
// convergence rate, or canonicalize a scheme file.
//
// Exit codes: 0 success, 2 usage/parse/domain errors, 3 verification that
// ran but did not reach the requested accuracy.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gosper/errors.hpp"
#include "gosper/eval.hpp"
#include "gosper/schemes.hpp"

namespace {

using namespace gosper;

std::vector<std::filesystem::path> scheme_search_dirs() {
    std::vector<std::filesystem::path> dirs;
    const char* env = std::getenv("GOSPER_SCHEME_PATH");
    if (!env) return dirs;
    std::string raw(env);
    size_t start = 0;
    while (start <= raw.size()) {
        size_t colon = raw.find(':', start);
        std::string piece = raw.substr(
            start, colon == std::string::npos ? std::string::npos
                                              : colon - start);
        if (!piece.empty()) dirs.emplace_back(piece);
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    return dirs;
}

SchemeDef load_scheme_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open scheme file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_scheme(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line, e.column);
    } catch (const DomainError& e) {
        throw DomainError(path.string() + ": " + e.what());
    }
}

SchemeDef resolve_scheme(const std::string& name,
                         const std::string& file_flag) {
    if (!file_flag.empty()) return load_scheme_file(file_flag);
    if (const SchemeDef* s = find_scheme(name)) return *s;
    for (const auto& dir : scheme_search_dirs()) {
        std::filesystem::path candidate = dir / (name + ".scheme");
        std::error_code ec;
        if (std::filesystem::exists(candidate, ec))
            return load_scheme_file(candidate);
    }
    throw DomainError("unknown scheme '" + name + "'");
}

ParamMap parse_param_flags(const std::vector<std::string>& raw) {
    ParamMap out;
    for (const auto& flag : raw) {
        size_t eq = flag.find('=');
        if (eq == std::string::npos || eq == 0)
            throw DomainError("bad --param '" + flag +
                              "' (expected name=value with a rational value)");
        std::string name = flag.substr(0, eq);
        std::string value = flag.substr(eq + 1);
        try {
            out[name] = Rational(value);
        } catch (const DomainError&) {
            throw DomainError("bad --param value '" + value + "' for '" +
                              name + "' (integers or p/q only)");
        }
    }
    return out;
}

int run_list(const std::string& format) {
    struct Row {
        const SchemeDef* def;
        SchemeDef loaded;
        std::string source;
        std::string error;  // nonempty for files that failed to parse
    };
    std::vector<Row> rows;
    for (const auto& s : catalog()) rows.push_back({&s, {}, "builtin", {}});
    for (const auto& dir : scheme_search_dirs()) {
        std::error_code ec;
        std::vector<std::filesystem::path> files;
        for (std::filesystem::directory_iterator it(dir, ec), end;
             !ec && it != end; it.increment(ec)) {
            if (it->path().extension() == ".scheme")
                files.push_back(it->path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& path : files) {
            Row row;
            row.def = nullptr;
            row.source = path.string();
            // A malformed file must not take the whole listing down; show it
            // with its error instead.
            try {
                row.loaded = load_scheme_file(path);
            } catch (const Error& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    if (format == "json") {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& row : rows) {
            if (!row.error.empty()) {
                nlohmann::json j;
                j["source"] = row.source;
                j["error"] = row.error;
                out.push_back(std::move(j));
                continue;
            }
            const SchemeDef& s = row.def ? *row.def : row.loaded;
            nlohmann::json j;
            j["name"] = s.name;
            j["dim"] = s.dim;
            j["summary"] = s.summary;
            j["source"] = row.source;
            j["finite"] = s.finite;
            nlohmann::json params = nlohmann::json::object();
            for (const auto& [name, value] : s.params)
                params[name] = value.to_string();
            j["params"] = params;
            nlohmann::json targets = nlohmann::json::array();
            for (const auto& t : s.targets) targets.push_back(t.to_string());
            j["targets"] = targets;
            out.push_back(std::move(j));
        }
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& row : rows) {
            if (!row.error.empty()) {
                std::cout << row.source << ": invalid (" << row.error << ")\n";
                continue;
            }
            const SchemeDef& s = row.def ? *row.def : row.loaded;
            std::cout << s.name << " (dim " << s.dim;
            if (s.finite) std::cout << ", finite";
            if (row.source != "builtin") std::cout << ", " << row.source;
            std::cout << "): targets";
            for (const auto& t : s.targets) {
                try {
                    std::cout << ' ' << t.resolve(s.params).to_string();
                } catch (const Error&) {
                    std::cout << ' ' << t.to_string();
                }
            }
            if (!s.params.empty()) {
                std::cout << "; params";
                for (const auto& [name, value] : s.params)
                    std::cout << ' ' << name << "=" << value.to_string();
            }
            std::cout << '\n';
            if (!s.summary.empty()) std::cout << "  " << s.summary << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Accelerated series for zeta-type constants as infinite products of "
        "unitriangular matrix factors"};
    app.require_subcommand(1);

    // Shared option storage.
    std::string scheme_name;
    std::string scheme_file;
    std::string format = "text";
    std::vector<std::string> param_flags;
    long terms = 100;
    std::string backend_flag = "rational";
    long precision = 0;
    int digits = 30;
    long rate_from = 50;
    long rate_to = 100;
    std::string parse_file;

    auto add_scheme_flags = [&](CLI::App* cmd) {
        cmd->add_option("--scheme", scheme_name, "built-in scheme name");
        cmd->add_option("--scheme-file", scheme_file,
                        "path to a scheme definition file");
        cmd->add_option("--param", param_flags,
                        "override a scheme parameter, name=value (rational)");
    };

    CLI::App* cmd_list = app.add_subcommand("list", "list available schemes");
    cmd_list->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* cmd_eval = app.add_subcommand(
        "eval", "multiply a scheme's factors and report its components");
    add_scheme_flags(cmd_eval);
    cmd_eval->add_option("--terms", terms, "number of factors (default 100)");
    cmd_eval->add_option("--backend", backend_flag, "rational or float")
        ->check(CLI::IsMember({"rational", "float"}));
    cmd_eval->add_option("--precision", precision,
                         "float precision in bits (required with float)");
    cmd_eval->add_option("--digits", digits,
                         "printed decimal digits (default 30)");
    cmd_eval->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "drive a scheme until it provably reaches a digit goal");
    add_scheme_flags(cmd_verify);
    cmd_verify->add_option("--digits", digits,
                           "digits to verify against the oracle (default 30)");
    cmd_verify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* cmd_rate = app.add_subcommand(
        "rate", "measure digits gained per factor over a term window");
    add_scheme_flags(cmd_rate);
    cmd_rate->add_option("--from", rate_from,
                         "window start in factors (default 50)");
    cmd_rate->add_option("--to", rate_to,
                         "window end in factors (default 100)");
    cmd_rate->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* cmd_parse = app.add_subcommand(
        "parse", "validate a scheme file and print its canonical form");
    cmd_parse->add_option("file", parse_file, "scheme file to check")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_list->parsed()) return run_list(format);

        if (cmd_parse->parsed()) {
            SchemeDef scheme = load_scheme_file(parse_file);
            std::cout << render_scheme(scheme);
            return 0;
        }

        if (scheme_name.empty() && scheme_file.empty())
            throw DomainError("pass --scheme or --scheme-file");
        SchemeDef scheme = resolve_scheme(scheme_name, scheme_file);
        apply_params(scheme, parse_param_flags(param_flags));
        validate(scheme);

        if (cmd_eval->parsed()) {
            EvalOptions options;
            options.backend = backend_from_name(backend_flag);
            options.terms = terms;
            options.precision = precision;
            options.digits = digits;
            EvalReport report = evaluate_scheme(scheme, options);
            if (format == "json")
                std::cout << to_json(report);
            else if (format == "csv")
                std::cout << to_csv(report);
            else
                std::cout << to_text(report);
            return 0;
        }

        if (cmd_verify->parsed()) {
            VerifyOptions options;
            options.digits = digits;
            VerifyReport report = verify_scheme(scheme, options);
            if (format == "json")
                std::cout << to_json(report);
            else
                std::cout << to_text(report);
            return report.ok ? 0 : 3;
        }

        if (cmd_rate->parsed()) {
            RateOptions options;
            options.from = rate_from;
            options.to = rate_to;
            RateReport report = measure_rate(scheme, options);
            if (format == "json")
                std::cout << to_json(report);
            else
                std::cout << to_text(report);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
