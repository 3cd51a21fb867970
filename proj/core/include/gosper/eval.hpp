#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gosper/numeric.hpp"
#include "gosper/schemes.hpp"

namespace gosper {

enum class Backend { Rational, Float };

std::string backend_name(Backend backend);
Backend backend_from_name(const std::string& name);

struct EvalOptions {
    Backend backend = Backend::Rational;
    long terms = 100;    // ignored by finite schemes (a note says so)
    long precision = 0;  // bits; required for the float backend
    int digits = 30;     // printed digits; oracle carries 10 more
};

struct TargetReport {
    std::string descriptor;  // resolved target, e.g. "zeta(3)"
    std::string value;       // decimal approximation to `digits`
    std::string exact;       // "p/q" under the rational backend, else empty
    std::string oracle;      // independent reference, same digit count
    // -log10 of the relative error against the oracle, capped at digits+10
    // (the oracle's own guard).
    double matched_digits = 0;
    // Tail heuristic from the next factor, when the scheme contracts.
    std::optional<double> estimated_digits;
};

struct EvalReport {
    std::string scheme;
    std::string summary;
    ParamMap params;
    std::string backend;
    long precision = 0;  // 0 under the rational backend
    long terms = 0;      // factors actually multiplied
    std::string alpha_prefix;  // A-block scale after `terms` factors, 5 sig
    double prefix_log10 = 0;
    std::vector<TargetReport> targets;
    std::vector<std::string> notes;
};

EvalReport evaluate_scheme(const SchemeDef& scheme, const EvalOptions& options);

std::string to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);
std::string to_csv(const EvalReport& report);
std::string to_text(const EvalReport& report);

struct VerifyOptions {
    int digits = 30;
    long max_terms = 10000;
};

struct VerifyTarget {
    std::string descriptor;
    double matched_digits = 0;
    bool ok = false;
};

struct VerifyReport {
    std::string scheme;
    int digits = 0;
    long terms = 0;        // factors consumed
    bool converged = false;  // tail estimate reached the goal under the cap
    bool ok = false;         // converged and every target matched
    std::vector<VerifyTarget> targets;
};

// Doubles the term count from 16 until the tail estimate clears `digits`
// (or the cap strikes), then scores every component against its oracle.
VerifyReport verify_scheme(const SchemeDef& scheme,
                           const VerifyOptions& options);
std::string to_json(const VerifyReport& report);
std::string to_text(const VerifyReport& report);

struct RateOptions {
    long from = 50;
    long to = 100;
};

struct RateTarget {
    std::string descriptor;
    // Least-squares slope of matched digits over the window: decimal digits
    // gained per extra factor.
    double digits_per_term = 0;
};

struct RateReport {
    std::string scheme;
    long from = 0;
    long to = 0;
    // -log10 |alpha| at the window's end: the single-factor contraction.
    double alpha_rate = 0;
    std::vector<RateTarget> targets;
};

RateReport measure_rate(const SchemeDef& scheme, const RateOptions& options);
std::string to_json(const RateReport& report);
std::string to_text(const RateReport& report);

}  // namespace gosper
