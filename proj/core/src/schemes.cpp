#include "gosper/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

#include "gosper/errors.hpp"

namespace gosper {

namespace {

const long kValidateWindow = 64;     // leading factors checked eagerly
const long kValidateFiniteCap = 4096;  // full-range check cap for finite runs

Var param_var(const std::string& name) {
    if (name == "z") return Var::Z;
    if (name == "a") return Var::A;
    if (name == "b") return Var::B;
    if (name == "Ncap") return Var::NCap;
    throw DomainError("parameter '" + name +
                      "' is not one of z, a, b, Ncap");
}

}  // namespace

std::optional<long> scheme_term_count(const SchemeDef& scheme) {
    if (!scheme.finite) return std::nullopt;
    if (!scheme.finite_by_param) return scheme.finite_terms;
    auto it = scheme.params.find("Ncap");
    if (it == scheme.params.end())
        throw DomainError("scheme '" + scheme.name +
                          "' is Ncap-bounded but has no Ncap parameter");
    const Rational& n = it->second;
    if (!n.is_integer() || n.sign() < 0 || !n.numerator().fits_long())
        throw DomainError("Ncap must be a nonnegative integer, got " +
                          n.to_string());
    return n.numerator().to_long();
}

Bindings scheme_bindings(const SchemeDef& scheme, long k) {
    Bindings b;
    b.set(Var::K, Rational(k));
    for (const auto& [name, value] : scheme.params)
        b.set(param_var(name), value);
    return b;
}

BandFactor factor_at(const SchemeDef& scheme, long k) {
    if (k < 1)
        throw DomainError("factor index must be >= 1, got " +
                          std::to_string(k));
    Bindings b = scheme_bindings(scheme, k);
    BandFactor f;
    f.alpha = eval(scheme.alpha, b);
    f.beta = scheme.beta ? Scalar(eval(scheme.beta, b)) : Scalar(Rational(0));
    f.u.reserve(scheme.u.size());
    for (const auto& entry : scheme.u) f.u.push_back(eval(entry, b));
    return f;
}

BandFactor factor_at(const SchemeDef& scheme, long k, long precision) {
    BandFactor exact = factor_at(scheme, k);
    BandFactor f;
    f.alpha = BigFloat(exact.alpha.rational(), precision);
    f.beta = BigFloat(exact.beta.rational(), precision);
    f.u.reserve(exact.u.size());
    for (const auto& entry : exact.u)
        f.u.push_back(BigFloat(entry.rational(), precision));
    return f;
}

GosperMatrix matrix_at(const SchemeDef& scheme, long k) {
    BandFactor f = factor_at(scheme, k);
    int n = scheme.dim;
    std::vector<Scalar> a(static_cast<size_t>(n) * n, Scalar(Rational(0)));
    for (int i = 0; i < n; ++i) {
        a[static_cast<size_t>(i) * n + i] = f.alpha;
        if (i + 1 < n) a[static_cast<size_t>(i) * n + i + 1] = f.beta;
    }
    // BandFactor stores u bottom-up, the matrix wants it top-down.
    std::vector<Scalar> u;
    u.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) u.push_back(f.u[static_cast<size_t>(n - 1 - i)]);
    return GosperMatrix(n, std::move(a), std::move(u));
}

bool equal(const SchemeDef& a, const SchemeDef& b) {
    if (a.name != b.name || a.summary != b.summary || a.dim != b.dim)
        return false;
    if (a.params != b.params) return false;
    auto expr_eq = [](const Expr::Ptr& x, const Expr::Ptr& y) {
        if (!x || !y) return !x && !y;
        return gosper::equal(x, y);
    };
    if (!expr_eq(a.alpha, b.alpha) || !expr_eq(a.beta, b.beta)) return false;
    if (a.u.size() != b.u.size()) return false;
    for (size_t i = 0; i < a.u.size(); ++i)
        if (!expr_eq(a.u[i], b.u[i])) return false;
    if (a.targets != b.targets) return false;
    return a.finite == b.finite && a.finite_by_param == b.finite_by_param &&
           (!a.finite || a.finite_by_param ||
            a.finite_terms == b.finite_terms);
}

void apply_params(SchemeDef& scheme, const ParamMap& overrides) {
    for (const auto& [name, value] : overrides) {
        auto it = scheme.params.find(name);
        if (it == scheme.params.end())
            throw DomainError("scheme '" + scheme.name +
                              "' has no parameter '" + name + "'");
        it->second = value;
    }
}

void validate(const SchemeDef& scheme) {
    if (scheme.name.empty())
        throw DomainError("scheme needs a name");
    for (char c : scheme.name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw DomainError("scheme name '" + scheme.name +
                              "' may only use letters, digits and '_'");
    if (scheme.dim < 1 || scheme.dim > 32)
        throw DomainError("dim must be between 1 and 32, got " +
                          std::to_string(scheme.dim));
    if (!scheme.alpha) throw DomainError("alpha is required");
    if (scheme.dim == 1 && scheme.beta)
        throw DomainError("a 1-component scheme must not define beta");
    if (scheme.dim > 1 && !scheme.beta)
        throw DomainError("beta is required when dim > 1");
    for (int i = 0; i < scheme.dim; ++i)
        if (static_cast<size_t>(i) >= scheme.u.size() || !scheme.u[i])
            throw DomainError("u(" + std::to_string(i + 1) + ") is required");
    if (scheme.u.size() != static_cast<size_t>(scheme.dim))
        throw DomainError("scheme has " + std::to_string(scheme.u.size()) +
                          " u entries but dim = " +
                          std::to_string(scheme.dim));
    if (scheme.targets.size() != static_cast<size_t>(scheme.dim))
        throw DomainError("scheme has " +
                          std::to_string(scheme.targets.size()) +
                          " targets but dim = " + std::to_string(scheme.dim));
    for (const auto& [name, value] : scheme.params) (void)param_var(name);

    // Targets must be resolvable and inside their exact domain.
    for (const auto& target : scheme.targets)
        check_computable(target.resolve(scheme.params));

    // Leading factors must evaluate cleanly with nonvanishing alpha.  A
    // parameter choice whose first blowup sits beyond the window is only
    // caught when evaluation reaches it.
    std::optional<long> count = scheme_term_count(scheme);
    long window = kValidateWindow;
    if (count) window = std::min(*count, kValidateFiniteCap);
    for (long k = 1; k <= window; ++k) {
        Bindings b = scheme_bindings(scheme, k);
        auto entry = [&](const Expr::Ptr& e, const std::string& what) {
            try {
                return eval(e, b);
            } catch (const DomainError& err) {
                throw DomainError(what + " fails at k = " +
                                  std::to_string(k) + ": " + err.what());
            }
        };
        Rational alpha = entry(scheme.alpha, "alpha");
        // In one band a vanishing alpha is fine: that factor's A block is the
        // zero scalar, the tail past it dies, and the product stays exact.
        // With more bands the A block would degenerate to beta J, which the
        // banded accumulator cannot represent.
        if (alpha.is_zero() && scheme.dim > 1)
            throw DomainError("alpha vanishes at k = " + std::to_string(k));
        if (scheme.beta) entry(scheme.beta, "beta");
        for (int i = 0; i < scheme.dim; ++i)
            entry(scheme.u[static_cast<size_t>(i)],
                  "u(" + std::to_string(i + 1) + ")");
    }
}

// ---------------------------------------------------------------------------
// File format

namespace {

struct FileEntry {
    std::string value;
    int line = 0;
    int value_column = 0;  // 0-based offset of value in the original line
};

struct SchemeFile {
    std::map<std::string, FileEntry> entries;  // key -> single entry
    std::vector<std::string> order;            // keys in file order
};

SchemeFile scan_scheme_file(const std::string& text) {
    SchemeFile file;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos || eq <= first)
            throw ParseError("expected 'key = value'", line_no,
                             static_cast<int>(first) + 1);
        size_t key_end = line.find_last_not_of(" \t", eq - 1);
        std::string key = line.substr(first, key_end - first + 1);
        size_t value_start = line.find_first_not_of(" \t", eq + 1);
        if (value_start == std::string::npos)
            throw ParseError("missing value for '" + key + "'", line_no,
                             static_cast<int>(eq) + 2);
        size_t value_end = line.find_last_not_of(" \t\r");
        FileEntry entry;
        entry.value = line.substr(value_start, value_end - value_start + 1);
        entry.line = line_no;
        entry.value_column = static_cast<int>(value_start);
        if (file.entries.count(key))
            throw ParseError("duplicate key '" + key + "'", line_no,
                             static_cast<int>(first) + 1);
        file.entries.emplace(key, std::move(entry));
        file.order.push_back(key);
    }
    return file;
}

// Collapse internal runs of whitespace in a key like "param  z".
std::string normalize_key(const std::string& key) {
    std::string out;
    bool in_space = false;
    for (char c : key) {
        if (c == ' ' || c == '\t') {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out += ' ';
        in_space = false;
        out += c;
    }
    return out;
}

long parse_long_value(const FileEntry& entry, const std::string& what) {
    const std::string& v = entry.value;
    size_t pos = 0;
    bool neg = false;
    if (pos < v.size() && (v[pos] == '-' || v[pos] == '+')) {
        neg = v[pos] == '-';
        ++pos;
    }
    if (pos == v.size())
        throw ParseError("expected " + what, entry.line,
                         entry.value_column + 1);
    long out = 0;
    for (; pos < v.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(v[pos])))
            throw ParseError("expected " + what, entry.line,
                             entry.value_column + static_cast<int>(pos) + 1);
        out = out * 10 + (v[pos] - '0');
        if (out > 1000000000)
            throw ParseError(what + " is out of range", entry.line,
                             entry.value_column + 1);
    }
    return neg ? -out : out;
}

Rational parse_rational_value(const FileEntry& entry) {
    try {
        return Rational(entry.value);
    } catch (const DomainError& err) {
        throw ParseError(err.what(), entry.line, entry.value_column + 1);
    }
}

bool is_identifier(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

}  // namespace

SchemeDef parse_scheme(const std::string& text) {
    SchemeFile file = scan_scheme_file(text);
    SchemeDef scheme;

    auto take = [&](const std::string& key) -> const FileEntry* {
        auto it = file.entries.find(key);
        return it == file.entries.end() ? nullptr : &it->second;
    };

    const FileEntry* dim_entry = take("dim");
    if (!dim_entry) throw DomainError("dim is required");
    long dim = parse_long_value(*dim_entry, "integer dim");
    if (dim < 1 || dim > 32)
        throw ParseError("dim must be between 1 and 32", dim_entry->line,
                         dim_entry->value_column + 1);
    scheme.dim = static_cast<int>(dim);

    const FileEntry* name_entry = take("name");
    if (!name_entry) throw DomainError("name is required");
    if (!is_identifier(name_entry->value))
        throw ParseError("scheme name may only use letters, digits and '_'",
                         name_entry->line, name_entry->value_column + 1);
    scheme.name = name_entry->value;

    if (const FileEntry* e = take("summary")) scheme.summary = e->value;

    std::vector<std::string> handled = {"dim", "name", "summary"};
    auto mark = [&](const std::string& key) { handled.push_back(key); };

    if (const FileEntry* e = take("alpha")) {
        scheme.alpha = parse_expr(e->value, e->line, e->value_column);
        mark("alpha");
    } else {
        throw DomainError("alpha is required");
    }
    if (const FileEntry* e = take("beta")) {
        scheme.beta = parse_expr(e->value, e->line, e->value_column);
        mark("beta");
    }
    for (int i = 1; i <= scheme.dim; ++i) {
        std::string key = "u(" + std::to_string(i) + ")";
        const FileEntry* e = take(key);
        if (!e) throw DomainError(key + " is required");
        scheme.u.push_back(parse_expr(e->value, e->line, e->value_column));
        mark(key);
    }
    for (int i = 1; i <= scheme.dim; ++i) {
        std::string key = "target(" + std::to_string(i) + ")";
        const FileEntry* e = take(key);
        if (!e) throw DomainError(key + " is required");
        scheme.targets.push_back(
            ConstantDescriptor::parse(e->value, e->line, e->value_column));
        mark(key);
    }
    if (const FileEntry* e = take("finite")) {
        scheme.finite = true;
        if (is_identifier(e->value)) {
            if (e->value != "Ncap")
                throw ParseError("finite must be an integer or 'Ncap'",
                                 e->line, e->value_column + 1);
            scheme.finite_by_param = true;
        } else {
            scheme.finite_terms = parse_long_value(*e, "integer term count");
            if (scheme.finite_terms < 0)
                throw ParseError("finite term count must be >= 0", e->line,
                                 e->value_column + 1);
        }
        mark("finite");
    }

    // Remaining keys must be 'param <name>'.
    for (const auto& key : file.order) {
        if (std::find(handled.begin(), handled.end(), key) != handled.end())
            continue;
        const FileEntry& e = file.entries.at(key);
        std::string norm = normalize_key(key);
        if (norm.rfind("param ", 0) == 0) {
            std::string pname = norm.substr(6);
            if (!is_identifier(pname))
                throw ParseError("bad parameter name '" + pname + "'", e.line,
                                 1);
            scheme.params[pname] = parse_rational_value(e);
        } else {
            throw ParseError("unknown key '" + key + "'", e.line, 1);
        }
    }

    validate(scheme);
    return scheme;
}

std::string render_scheme(const SchemeDef& scheme) {
    std::ostringstream out;
    out << "name = " << scheme.name << '\n';
    if (!scheme.summary.empty()) out << "summary = " << scheme.summary << '\n';
    out << "dim = " << scheme.dim << '\n';
    for (const auto& [name, value] : scheme.params)
        out << "param " << name << " = " << value.to_string() << '\n';
    out << "alpha = " << render(scheme.alpha) << '\n';
    if (scheme.beta) out << "beta = " << render(scheme.beta) << '\n';
    for (size_t i = 0; i < scheme.u.size(); ++i)
        out << "u(" << i + 1 << ") = " << render(scheme.u[i]) << '\n';
    for (size_t i = 0; i < scheme.targets.size(); ++i)
        out << "target(" << i + 1 << ") = " << scheme.targets[i].to_string()
            << '\n';
    if (scheme.finite) {
        out << "finite = ";
        if (scheme.finite_by_param)
            out << "Ncap";
        else
            out << scheme.finite_terms;
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

Expr::Ptr X(const char* text) { return parse_expr(text); }

ConstantDescriptor target(const char* text) {
    return ConstantDescriptor::parse(text);
}

}  // namespace

SchemeDef make_koecher(int order) {
    if (order < 1 || order > 16)
        throw DomainError("koecher order must be between 1 and 16");
    SchemeDef s;
    s.name = "koecher" + std::to_string(order);
    s.summary =
        order == 1
            ? "accelerated zeta(3) via central binomial sums"
            : "stacked acceleration of zeta(3)..zeta(" +
                  std::to_string(2 * order + 1) + ") via central binomial sums";
    s.dim = order;
    s.alpha = X("-k/(2*(2*k+1))");
    if (order > 1) s.beta = X("1/(2*k*(2*k+1))");
    s.u.push_back(X("5/(4*k^2)"));
    for (int ell = 2; ell <= order; ++ell)
        s.u.push_back(parse_expr("1/k^" + std::to_string(2 * ell)));
    for (int ell = 1; ell <= order; ++ell)
        s.targets.push_back(ConstantDescriptor::parse(
            "zeta(" + std::to_string(2 * ell + 1) + ")"));
    return s;
}

SchemeDef make_borwein(int order) {
    if (order < 1 || order > 3)
        throw DomainError("borwein order must be between 1 and 3");
    SchemeDef s;
    s.name = "borwein" + std::to_string(order);
    s.summary =
        order == 1
            ? "accelerated zeta(2) via central binomial sums"
            : "stacked acceleration of zeta(2)..zeta(" +
                  std::to_string(2 * order) + ") via central binomial sums";
    s.dim = order;
    s.alpha = X("k/(2*(2*k+1))");
    if (order > 1) s.beta = X("-3/(2*k*(2*k+1))");
    const char* entries[3] = {"3/(2*k)", "3/(2*k^3)",
                              "3/(2*k^5)-9*H(4,k-1)/(2*k)"};
    for (int ell = 1; ell <= order; ++ell) {
        s.u.push_back(X(entries[ell - 1]));
        s.targets.push_back(
            ConstantDescriptor::parse("zeta(" + std::to_string(2 * ell) + ")"));
    }
    return s;
}

SchemeDef make_leschiner(int order) {
    if (order < 1 || order > 2)
        throw DomainError("leschiner order must be between 1 and 2");
    SchemeDef s;
    s.name = "leschiner" + std::to_string(order);
    s.summary =
        order == 1
            ? "accelerated alternating sum eta(2)"
            : "stacked acceleration of the alternating sums eta(2)..eta(" +
                  std::to_string(2 * order) + ")";
    s.dim = order;
    s.alpha = X("k/(2*(2*k+1))");
    if (order > 1) s.beta = X("-1/(2*k*(2*k+1))");
    s.u.push_back(X("3/(4*k)"));
    if (order > 1) s.u.push_back(X("1/k^3"));
    for (int ell = 1; ell <= order; ++ell)
        s.targets.push_back(
            ConstantDescriptor::parse("eta(" + std::to_string(2 * ell) + ")"));
    return s;
}

SchemeDef make_markov_hurwitz() {
    SchemeDef s;
    s.name = "markov_hurwitz";
    s.summary = "shifted cubic sum hurwitz(3,z) with a free shift parameter";
    s.dim = 1;
    s.params["z"] = Rational(0);
    s.alpha = X("-(k^6)/(2*k*(2*k+1)*(z+k+1)^4)");
    s.u.push_back(X("(5*k^2+6*k*z+2*z^2)/(4*(z+1)^4)"));
    s.targets.push_back(target("hurwitz(3,z)"));
    return s;
}

SchemeDef make_tauraso() {
    SchemeDef s;
    s.name = "tauraso";
    s.summary = "two-parameter quadratic sum 2/(n^2-a*n-b^2)";
    s.dim = 1;
    s.params["a"] = Rational(0);
    s.params["b"] = Rational(0);
    s.alpha = X("(k/(2*(2*k+1)))*(k^2-a^2-4*b^2)/(k^2-a*k-b^2)");
    s.u.push_back(X("(3*k-a)/(k^2-a*k-b^2)"));
    s.targets.push_back(target("tauraso(a,b)"));
    return s;
}

SchemeDef make_tauraso_quartic() {
    SchemeDef s;
    s.name = "tauraso_quartic";
    s.summary = "two-parameter quartic sum 4*n/(n^4-a^2*n^2-b^4)";
    s.dim = 1;
    s.params["a"] = Rational(0);
    s.params["b"] = Rational(0);
    s.alpha = X("-(k/(2*(2*k+1)))*((k^2-a^2)^2+4*b^4)/(k^4-a^2*k^2-b^4)");
    s.u.push_back(X("(5*k^2-a^2)/(k^4-a^2*k^2-b^4)"));
    s.targets.push_back(target("tauraso4(a,b)"));
    return s;
}

SchemeDef make_amdeberhan_zeilberger() {
    SchemeDef s;
    s.name = "amdeberhan_zeilberger";
    s.summary = "fast zeta(3) series, about three digits per factor";
    s.dim = 1;
    s.alpha = X("-(k^5)/(32*(2*k+1)^5)");
    s.u.push_back(X("(205*k^2-160*k+32)/64"));
    s.targets.push_back(target("zeta(3)"));
    return s;
}

SchemeDef make_amdeberhan_cubic() {
    SchemeDef s;
    s.name = "amdeberhan_cubic";
    s.summary = "zeta(3) series with cubic-binomial factors";
    s.dim = 1;
    s.alpha = X("-(k^3*(2*k-1)^2)/((3*k+3)*(3*k+2)*(3*k+1)*(2*k+1)^2)");
    s.u.push_back(X("(56*k^2-32*k+5)/24"));
    s.targets.push_back(target("zeta(3)"));
    return s;
}

SchemeDef make_harmonic3_finite() {
    SchemeDef s;
    s.name = "h3finite";
    s.summary = "finite product landing exactly on the harmonic number "
                "H_N^(3)";
    s.dim = 1;
    s.params["Ncap"] = Rational(8);
    s.alpha = X("-k/(2*(2*k+1))");
    s.u.push_back(X("(5/(4*k^2))*(1-1/(5*binom(N+k,2*k)))"));
    s.targets.push_back(target("h3(Ncap)"));
    s.finite = true;
    s.finite_by_param = true;
    return s;
}

const std::vector<SchemeDef>& catalog() {
    static const std::vector<SchemeDef> schemes = [] {
        std::vector<SchemeDef> all;
        for (int n = 1; n <= 3; ++n) all.push_back(make_koecher(n));
        for (int n = 1; n <= 3; ++n) all.push_back(make_borwein(n));
        for (int n = 1; n <= 2; ++n) all.push_back(make_leschiner(n));
        all.push_back(make_markov_hurwitz());
        all.push_back(make_tauraso());
        all.push_back(make_tauraso_quartic());
        all.push_back(make_amdeberhan_zeilberger());
        all.push_back(make_amdeberhan_cubic());
        all.push_back(make_harmonic3_finite());
        for (const auto& s : all) validate(s);
        return all;
    }();
    return schemes;
}

const SchemeDef* find_scheme(const std::string& name) {
    for (const auto& s : catalog())
        if (s.name == name) return &s;
    return nullptr;
}

}  // namespace gosper
