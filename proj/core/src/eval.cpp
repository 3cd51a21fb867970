#include "gosper/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gosper/banded.hpp"
#include "gosper/errors.hpp"
#include "gosper/reference.hpp"

#include <json.hpp>

namespace gosper {

namespace {

using nlohmann::json;

long float_bits_for(int digits) {
    long bits = static_cast<long>(std::ceil((digits + 15) * 3.3219280948874));
    return std::max(bits + 32, BigFloat::min_precision);
}

std::string decimal(const Scalar& value, int digits) {
    if (value.is_rational()) return to_decimal(value.rational(), digits);
    return to_decimal(value.floating(), digits);
}

// -log10 of the relative error, capped at the oracle's guard.
double matched_against(const Scalar& value, const BigFloat& oracle, int cap) {
    BigFloat v = to_float(value, oracle.precision());
    BigFloat diff = v - oracle;
    if (diff.is_zero()) return cap;
    double rel = diff.log10_abs() - oracle.log10_abs();
    return std::min(-rel, static_cast<double>(cap));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string backend_name(Backend backend) {
    return backend == Backend::Rational ? "rational" : "float";
}

Backend backend_from_name(const std::string& name) {
    if (name == "rational") return Backend::Rational;
    if (name == "float") return Backend::Float;
    throw DomainError("unknown backend '" + name +
                      "' (expected rational or float)");
}

EvalReport evaluate_scheme(const SchemeDef& scheme,
                           const EvalOptions& options) {
    validate(scheme);
    if (options.digits < 1 || options.digits > 100000)
        throw DomainError("digit count must be between 1 and 100000");
    if (options.backend == Backend::Float &&
        options.precision < BigFloat::min_precision)
        throw DomainError("float backend needs a precision of at least " +
                          std::to_string(BigFloat::min_precision) + " bits");

    EvalReport report;
    report.scheme = scheme.name;
    report.summary = scheme.summary;
    report.params = scheme.params;
    report.backend = backend_name(options.backend);
    report.precision =
        options.backend == Backend::Float ? options.precision : 0;

    std::optional<long> fixed = scheme_term_count(scheme);
    long terms = fixed ? *fixed : options.terms;
    if (!fixed && terms < 0)
        throw DomainError("term count must be >= 0, got " +
                          std::to_string(terms));
    if (fixed && options.terms != *fixed)
        report.notes.push_back(
            "finite scheme: multiplied exactly " + std::to_string(*fixed) +
            " factors; the requested term count does not apply");
    report.terms = terms;

    bool rational = options.backend == Backend::Rational;
    BandAccumulator acc =
        rational ? BandAccumulator(scheme.dim)
                 : BandAccumulator(scheme.dim, options.precision);
    for (long k = 1; k <= terms; ++k)
        acc.accumulate(rational ? factor_at(scheme, k)
                                : factor_at(scheme, k, options.precision));

    report.alpha_prefix = decimal(acc.alpha_prefix(), 5);
    report.prefix_log10 = log10_abs(acc.alpha_prefix());

    ErrorEstimate estimate;
    bool have_estimate = false;
    if (!fixed && terms > 0) {
        BandFactor next = rational
                              ? factor_at(scheme, terms + 1)
                              : factor_at(scheme, terms + 1, options.precision);
        estimate = error_estimate(acc, next);
        have_estimate = true;
        if (estimate.exact) {
            report.notes.push_back(
                "a factor's A block vanished: the remaining tail is exactly "
                "zero and the value is the full product");
        } else {
            bool any = false;
            for (const auto& e : estimate.estimated_digits) any = any || e;
            if (!any)
                report.notes.push_back(
                    "no tail estimate: the factors do not contract");
        }
    }
    if (fixed)
        report.notes.push_back("finite product: the result is exact, no tail");

    int oracle_digits = options.digits + 10;
    for (int ell = 1; ell <= scheme.dim; ++ell) {
        TargetReport target;
        ResolvedConstant resolved =
            scheme.targets[static_cast<size_t>(ell - 1)].resolve(
                scheme.params);
        target.descriptor = resolved.to_string();
        const Scalar& value = acc.component(ell);
        target.value = decimal(value, options.digits);
        if (value.is_rational()) target.exact = value.rational().to_string();
        BigFloat oracle = oracle_value(resolved, oracle_digits);
        target.oracle = decimal(Scalar(oracle), options.digits);
        target.matched_digits = matched_against(value, oracle, oracle_digits);
        if (have_estimate)
            target.estimated_digits =
                estimate.estimated_digits[static_cast<size_t>(ell - 1)];
        report.targets.push_back(std::move(target));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json params_to_json(const ParamMap& params) {
    json out = json::object();
    for (const auto& [name, value] : params) out[name] = value.to_string();
    return out;
}

ParamMap params_from_json(const json& j) {
    ParamMap out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = Rational(it.value().get<std::string>());
    return out;
}

}  // namespace

std::string to_json(const EvalReport& report) {
    json j;
    j["scheme"] = report.scheme;
    j["summary"] = report.summary;
    j["params"] = params_to_json(report.params);
    j["backend"] = report.backend;
    j["precision"] = report.precision;
    j["terms"] = report.terms;
    j["alpha_prefix"] = report.alpha_prefix;
    // JSON has no -inf; a vanished prefix (exact zero) is stored as null.
    if (std::isfinite(report.prefix_log10))
        j["prefix_log10"] = report.prefix_log10;
    else
        j["prefix_log10"] = nullptr;
    j["targets"] = json::array();
    for (const auto& t : report.targets) {
        json jt;
        jt["descriptor"] = t.descriptor;
        jt["value"] = t.value;
        if (t.exact.empty())
            jt["exact"] = nullptr;
        else
            jt["exact"] = t.exact;
        jt["oracle"] = t.oracle;
        jt["matched_digits"] = t.matched_digits;
        if (t.estimated_digits)
            jt["estimated_digits"] = *t.estimated_digits;
        else
            jt["estimated_digits"] = nullptr;
        j["targets"].push_back(std::move(jt));
    }
    j["notes"] = report.notes;
    return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad report JSON: ") + e.what(), 1, 1);
    }
    try {
        EvalReport report;
        report.scheme = j.at("scheme").get<std::string>();
        report.summary = j.at("summary").get<std::string>();
        report.params = params_from_json(j.at("params"));
        report.backend = j.at("backend").get<std::string>();
        report.precision = j.at("precision").get<long>();
        report.terms = j.at("terms").get<long>();
        report.alpha_prefix = j.at("alpha_prefix").get<std::string>();
        const json& jp = j.at("prefix_log10");
        report.prefix_log10 = jp.is_null()
                                  ? -std::numeric_limits<double>::infinity()
                                  : jp.get<double>();
        for (const auto& jt : j.at("targets")) {
            TargetReport t;
            t.descriptor = jt.at("descriptor").get<std::string>();
            t.value = jt.at("value").get<std::string>();
            if (!jt.at("exact").is_null())
                t.exact = jt.at("exact").get<std::string>();
            t.oracle = jt.at("oracle").get<std::string>();
            t.matched_digits = jt.at("matched_digits").get<double>();
            if (!jt.at("estimated_digits").is_null())
                t.estimated_digits = jt.at("estimated_digits").get<double>();
            report.targets.push_back(std::move(t));
        }
        for (const auto& n : j.at("notes"))
            report.notes.push_back(n.get<std::string>());
        return report;
    } catch (const json::exception& e) {
        throw ParseError(std::string("report JSON missing fields: ") +
                             e.what(),
                         1, 1);
    }
}

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "scheme,backend,precision,terms,component,descriptor,value,exact,"
           "oracle,matched_digits,estimated_digits,alpha_prefix\n";
    for (size_t i = 0; i < report.targets.size(); ++i) {
        const TargetReport& t = report.targets[i];
        out << csv_quote(report.scheme) << ',' << report.backend << ','
            << report.precision << ',' << report.terms << ',' << i + 1 << ','
            << csv_quote(t.descriptor) << ',' << csv_quote(t.value) << ','
            << csv_quote(t.exact) << ',' << csv_quote(t.oracle) << ','
            << format_double(t.matched_digits) << ',';
        if (t.estimated_digits) out << format_double(*t.estimated_digits);
        out << ',' << csv_quote(report.alpha_prefix) << '\n';
    }
    return out.str();
}

std::string to_text(const EvalReport& report) {
    std::ostringstream out;
    out << "scheme " << report.scheme << ": " << report.terms << " factors, "
        << report.backend << " backend";
    if (report.precision > 0) out << " (" << report.precision << " bits)";
    out << '\n';
    if (!report.params.empty()) {
        out << "params:";
        for (const auto& [name, value] : report.params)
            out << ' ' << name << " = " << value.to_string();
        out << '\n';
    }
    out << "alpha prefix: " << report.alpha_prefix << '\n';
    for (size_t i = 0; i < report.targets.size(); ++i) {
        const TargetReport& t = report.targets[i];
        out << "[" << i + 1 << "] " << t.descriptor << '\n';
        out << "    value  " << t.value << '\n';
        if (!t.exact.empty()) out << "    exact  " << t.exact << '\n';
        out << "    oracle " << t.oracle << '\n';
        out << "    matched digits " << format_double(t.matched_digits);
        if (t.estimated_digits)
            out << ", estimated " << format_double(*t.estimated_digits);
        out << '\n';
    }
    for (const auto& note : report.notes) out << "note: " << note << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Verification

VerifyReport verify_scheme(const SchemeDef& scheme,
                           const VerifyOptions& options) {
    validate(scheme);
    if (options.digits < 1 || options.digits > 20000)
        throw DomainError("digit count must be between 1 and 20000");
    if (options.max_terms < 1)
        throw DomainError("term cap must be >= 1");

    VerifyReport report;
    report.scheme = scheme.name;
    report.digits = options.digits;
    int oracle_digits = options.digits + 10;

    std::optional<long> fixed = scheme_term_count(scheme);
    if (fixed) {
        // Finite product: multiply everything exactly; nothing to estimate.
        BandAccumulator acc(scheme.dim);
        for (long k = 1; k <= *fixed; ++k)
            acc.accumulate(factor_at(scheme, k));
        report.terms = *fixed;
        report.converged = true;
        report.ok = true;
        for (int ell = 1; ell <= scheme.dim; ++ell) {
            ResolvedConstant resolved =
                scheme.targets[static_cast<size_t>(ell - 1)].resolve(
                    scheme.params);
            VerifyTarget t;
            t.descriptor = resolved.to_string();
            if (auto exact = oracle_exact(resolved)) {
                bool same = acc.component(ell).rational() == *exact;
                t.matched_digits = same ? oracle_digits : 0;
                t.ok = same;
            } else {
                BigFloat oracle = oracle_value(resolved, oracle_digits);
                t.matched_digits =
                    matched_against(acc.component(ell), oracle, oracle_digits);
                t.ok = t.matched_digits >= options.digits;
            }
            report.ok = report.ok && t.ok;
            report.targets.push_back(std::move(t));
        }
        return report;
    }

    long precision = float_bits_for(options.digits);
    BandAccumulator acc(scheme.dim, precision);
    long done = 0;
    long goal = 16;
    bool converged = false;
    while (true) {
        goal = std::min(goal, options.max_terms);
        for (long k = done + 1; k <= goal; ++k)
            acc.accumulate(factor_at(scheme, k, precision));
        done = goal;
        ErrorEstimate estimate =
            error_estimate(acc, factor_at(scheme, done + 1, precision));
        if (estimate.exact) {
            // The prefix vanished: the partial product is the full product,
            // limited only by the working precision.
            converged = true;
        } else {
            converged = true;
            for (const auto& e : estimate.estimated_digits)
                converged = converged && e &&
                            *e >= static_cast<double>(options.digits) + 2;
        }
        if (converged || done >= options.max_terms) break;
        goal = done * 2;
    }

    report.terms = done;
    report.converged = converged;
    report.ok = converged;
    for (int ell = 1; ell <= scheme.dim; ++ell) {
        ResolvedConstant resolved =
            scheme.targets[static_cast<size_t>(ell - 1)].resolve(scheme.params);
        VerifyTarget t;
        t.descriptor = resolved.to_string();
        BigFloat oracle = oracle_value(resolved, oracle_digits);
        t.matched_digits =
            matched_against(acc.component(ell), oracle, oracle_digits);
        t.ok = t.matched_digits >= options.digits;
        report.ok = report.ok && t.ok;
        report.targets.push_back(std::move(t));
    }
    return report;
}

std::string to_json(const VerifyReport& report) {
    json j;
    j["scheme"] = report.scheme;
    j["digits"] = report.digits;
    j["terms"] = report.terms;
    j["converged"] = report.converged;
    j["ok"] = report.ok;
    j["targets"] = json::array();
    for (const auto& t : report.targets) {
        json jt;
        jt["descriptor"] = t.descriptor;
        jt["matched_digits"] = t.matched_digits;
        jt["ok"] = t.ok;
        j["targets"].push_back(std::move(jt));
    }
    return j.dump(2) + "\n";
}

std::string to_text(const VerifyReport& report) {
    std::ostringstream out;
    out << "scheme " << report.scheme << ": "
        << (report.ok ? "verified" : "NOT verified") << " to "
        << report.digits << " digits with " << report.terms << " factors";
    if (!report.converged) out << " (term cap reached before convergence)";
    out << '\n';
    for (const auto& t : report.targets)
        out << "  " << t.descriptor << ": matched "
            << format_double(t.matched_digits) << " digits "
            << (t.ok ? "(ok)" : "(short)") << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Convergence rate

RateReport measure_rate(const SchemeDef& scheme, const RateOptions& options) {
    validate(scheme);
    if (scheme_term_count(scheme))
        throw DomainError("rate measurement needs an infinite scheme");
    if (options.from < 10 || options.to > 5000 || options.from >= options.to)
        throw DomainError("rate window must satisfy 10 <= from < to <= 5000");

    // Size the working precision from the accumulated contraction.
    double total_rate = 0;
    for (long k = 1; k <= options.to + 1; ++k) {
        BandFactor f = factor_at(scheme, k);
        double mag = log10_abs(f.alpha);
        total_rate -= mag;
    }
    int oracle_digits =
        static_cast<int>(std::max(40.0, total_rate + 25.0));
    long precision = float_bits_for(oracle_digits);

    std::vector<BigFloat> oracles;
    for (int ell = 1; ell <= scheme.dim; ++ell)
        oracles.push_back(oracle_value(
            scheme.targets[static_cast<size_t>(ell - 1)].resolve(
                scheme.params),
            oracle_digits));

    BandAccumulator acc(scheme.dim, precision);
    // Least-squares accumulators per component over the window.
    long n = 0;
    double sum_p = 0, sum_pp = 0;
    std::vector<double> sum_d(static_cast<size_t>(scheme.dim), 0.0);
    std::vector<double> sum_pd(static_cast<size_t>(scheme.dim), 0.0);
    double last_alpha_log = 0;
    for (long k = 1; k <= options.to; ++k) {
        BandFactor f = factor_at(scheme, k, precision);
        last_alpha_log = log10_abs(f.alpha);
        acc.accumulate(f);
        if (k < options.from) continue;
        ++n;
        double p = static_cast<double>(k);
        sum_p += p;
        sum_pp += p * p;
        for (int ell = 1; ell <= scheme.dim; ++ell) {
            double d = matched_against(acc.component(ell),
                                       oracles[static_cast<size_t>(ell - 1)],
                                       oracle_digits);
            sum_d[static_cast<size_t>(ell - 1)] += d;
            sum_pd[static_cast<size_t>(ell - 1)] += p * d;
        }
    }

    RateReport report;
    report.scheme = scheme.name;
    report.from = options.from;
    report.to = options.to;
    report.alpha_rate = -last_alpha_log;
    double denom = n * sum_pp - sum_p * sum_p;
    for (int ell = 1; ell <= scheme.dim; ++ell) {
        RateTarget t;
        t.descriptor = scheme.targets[static_cast<size_t>(ell - 1)]
                           .resolve(scheme.params)
                           .to_string();
        t.digits_per_term =
            (n * sum_pd[static_cast<size_t>(ell - 1)] -
             sum_p * sum_d[static_cast<size_t>(ell - 1)]) /
            denom;
        report.targets.push_back(std::move(t));
    }
    return report;
}

std::string to_json(const RateReport& report) {
    json j;
    j["scheme"] = report.scheme;
    j["from"] = report.from;
    j["to"] = report.to;
    j["alpha_rate"] = report.alpha_rate;
    j["targets"] = json::array();
    for (const auto& t : report.targets) {
        json jt;
        jt["descriptor"] = t.descriptor;
        jt["digits_per_term"] = t.digits_per_term;
        j["targets"].push_back(std::move(jt));
    }
    return j.dump(2) + "\n";
}

std::string to_text(const RateReport& report) {
    std::ostringstream out;
    out << "scheme " << report.scheme << ": digits per factor over terms "
        << report.from << ".." << report.to << '\n';
    out << "single-factor contraction: " << format_double(report.alpha_rate)
        << '\n';
    for (const auto& t : report.targets)
        out << "  " << t.descriptor << ": "
            << format_double(t.digits_per_term) << " digits/term\n";
    return out.str();
}

}  // namespace gosper
