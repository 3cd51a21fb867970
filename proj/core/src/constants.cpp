#include "gosper/constants.hpp"

#include <cctype>
#include <cstddef>
#include <vector>

#include "gosper/errors.hpp"

namespace gosper {

ConstArg ConstArg::literal(Rational v) {
    ConstArg a;
    a.symbolic_ = false;
    a.value_ = std::move(v);
    return a;
}

ConstArg ConstArg::ref(std::string param) {
    ConstArg a;
    a.symbolic_ = true;
    a.param_ = std::move(param);
    return a;
}

Rational ConstArg::resolve(const ParamMap& params) const {
    if (!symbolic_) return value_;
    auto it = params.find(param_);
    if (it == params.end())
        throw DomainError("target references unknown parameter '" + param_ +
                          "'");
    return it->second;
}

std::string ConstArg::to_string() const {
    return symbolic_ ? param_ : value_.to_string();
}

namespace {

struct KindInfo {
    ConstantKind kind;
    const char* name;
    bool has_order;  // leading integer argument s
    int extra_args;  // ConstArg arguments after the order
};

const KindInfo kKinds[] = {
    {ConstantKind::Zeta, "zeta", true, 0},
    {ConstantKind::Eta, "eta", true, 0},
    {ConstantKind::Hurwitz, "hurwitz", true, 1},
    {ConstantKind::Tauraso, "tauraso", false, 2},
    {ConstantKind::TaurasoQuartic, "tauraso4", false, 2},
    {ConstantKind::HarmonicCubic, "h3", false, 1},
    {ConstantKind::ScaledZeta, "scaled_zeta", true, 1},
};

const KindInfo& kind_info(ConstantKind kind) {
    for (const auto& info : kKinds)
        if (info.kind == kind) return info;
    throw Error("unknown constant kind");
}

// Minimal scanner for the descriptor text form.
class DescriptorParser {
public:
    DescriptorParser(const std::string& text, int line, int column_offset)
        : text_(text), line_(line), column_offset_(column_offset) {}

    ConstantDescriptor parse() {
        skip_space();
        std::string name = identifier("constant name");
        const KindInfo* info = nullptr;
        for (const auto& k : kKinds)
            if (name == k.name) info = &k;
        if (!info) fail("unknown constant '" + name + "'");

        ConstantDescriptor d;
        d.kind = info->kind;
        expect('(');
        bool first = true;
        if (info->has_order) {
            d.s = integer("integer order");
            first = false;
        }
        std::vector<ConstArg> extra;
        for (int i = 0; i < info->extra_args; ++i) {
            if (!first) expect(',');
            first = false;
            extra.push_back(argument());
        }
        if (!extra.empty()) d.arg1 = extra[0];
        if (extra.size() > 1) d.arg2 = extra[1];
        expect(')');
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing text");
        return d;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) {
        throw ParseError(message, line_,
                         column_offset_ + static_cast<int>(pos_) + 1);
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string identifier(const std::string& what) {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected " + what);
        return text_.substr(start, pos_ - start);
    }

    int integer(const std::string& what) {
        skip_space();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start || (text_[start] == '-' && pos_ == start + 1))
            fail("expected " + what);
        return std::stoi(text_.substr(start, pos_ - start));
    }

    ConstArg argument() {
        skip_space();
        if (pos_ < text_.size() &&
            (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
             text_[pos_] == '_'))
            return ConstArg::ref(identifier("parameter name"));
        // Rational literal: -? digits [/ digits]
        std::size_t start = pos_;
        BigInt num(static_cast<long>(integer("argument")));
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t den_start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == den_start) fail("expected denominator");
            BigInt den(text_.substr(den_start, pos_ - den_start));
            if (den.is_zero()) {
                pos_ = start;
                fail("zero denominator");
            }
            return ConstArg::literal(Rational(num, den));
        }
        return ConstArg::literal(Rational(num, BigInt(1)));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_;
    int column_offset_;
};

bool is_square(const Rational& q, Rational* root) {
    if (q.sign() < 0) return false;
    BigInt num = q.numerator();
    BigInt den = q.denominator();
    if (!num.is_perfect_square() || !den.is_perfect_square()) return false;
    if (root) *root = Rational(num.exact_sqrt(), den.exact_sqrt());
    return true;
}

// Returns the positive integer k >= 1 at which k^2 - a*k - b^2 vanishes, if
// any.
bool quadratic_integer_root(const Rational& a, const Rational& b, long* k) {
    Rational disc = a * a + Rational(4) * b * b;
    Rational d;
    if (!is_square(disc, &d)) return false;
    for (int sign = -1; sign <= 1; sign += 2) {
        Rational root = (a + Rational(sign) * d) / Rational(2);
        if (root.is_integer() && root.sign() > 0 &&
            root.numerator().fits_long()) {
            *k = root.numerator().to_long();
            return true;
        }
    }
    return false;
}

// Same for k^4 - a^2 k^2 - b^4: k^2 must equal the positive root of
// y^2 - a^2 y - b^4.
bool quartic_integer_root(const Rational& a, const Rational& b, long* k) {
    Rational a2 = a * a;
    Rational disc = a2 * a2 + Rational(4) * b * b * b * b;
    Rational d;
    if (!is_square(disc, &d)) return false;
    Rational y = (a2 + d) / Rational(2);
    Rational r;
    if (!is_square(y, &r)) return false;
    if (r.is_integer() && r.sign() > 0 && r.numerator().fits_long()) {
        *k = r.numerator().to_long();
        return true;
    }
    return false;
}

}  // namespace

ResolvedConstant ConstantDescriptor::resolve(const ParamMap& params) const {
    ResolvedConstant r;
    r.kind = kind;
    r.s = s;
    switch (kind) {
        case ConstantKind::Zeta:
        case ConstantKind::Eta:
            break;
        case ConstantKind::Hurwitz:
            r.z = arg1.resolve(params);
            break;
        case ConstantKind::Tauraso:
        case ConstantKind::TaurasoQuartic:
            r.a = arg1.resolve(params);
            r.b = arg2.resolve(params);
            break;
        case ConstantKind::HarmonicCubic: {
            Rational n = arg1.resolve(params);
            if (!n.is_integer() || n.sign() < 0 ||
                !n.numerator().fits_long())
                throw DomainError("h3 cutoff must be a nonnegative integer, "
                                  "got " +
                                  n.to_string());
            r.n_cap = n.numerator().to_long();
            break;
        }
        case ConstantKind::ScaledZeta:
            r.factor = arg1.resolve(params);
            break;
    }
    return r;
}

std::string ConstantDescriptor::to_string() const {
    const KindInfo& info = kind_info(kind);
    std::string out = info.name;
    out += '(';
    bool first = true;
    if (info.has_order) {
        out += std::to_string(s);
        first = false;
    }
    const ConstArg* args[] = {&arg1, &arg2};
    for (int i = 0; i < info.extra_args; ++i) {
        if (!first) out += ',';
        first = false;
        out += args[i]->to_string();
    }
    out += ')';
    return out;
}

ConstantDescriptor ConstantDescriptor::parse(const std::string& text, int line,
                                             int column_offset) {
    return DescriptorParser(text, line, column_offset).parse();
}

std::string ResolvedConstant::to_string() const {
    const KindInfo& info = kind_info(kind);
    std::string out = info.name;
    out += '(';
    switch (kind) {
        case ConstantKind::Zeta:
        case ConstantKind::Eta:
            out += std::to_string(s);
            break;
        case ConstantKind::Hurwitz:
            out += std::to_string(s);
            out += ',';
            out += z.to_string();
            break;
        case ConstantKind::Tauraso:
        case ConstantKind::TaurasoQuartic:
            out += a.to_string();
            out += ',';
            out += b.to_string();
            break;
        case ConstantKind::HarmonicCubic:
            out += std::to_string(n_cap);
            break;
        case ConstantKind::ScaledZeta:
            out += std::to_string(s);
            out += ',';
            out += factor.to_string();
            break;
    }
    out += ')';
    return out;
}

void check_computable(const ResolvedConstant& c) {
    switch (c.kind) {
        case ConstantKind::Zeta:
        case ConstantKind::Eta:
        case ConstantKind::ScaledZeta:
            if (c.s < 2)
                throw DomainError(
                    "series order must be at least 2, got " +
                    std::to_string(c.s));
            break;
        case ConstantKind::Hurwitz:
            if (c.s < 2)
                throw DomainError(
                    "series order must be at least 2, got " +
                    std::to_string(c.s));
            if (c.z.is_integer() && c.z.sign() < 0)
                throw DomainError("hurwitz shift " + c.z.to_string() +
                                  " makes a summand blow up");
            break;
        case ConstantKind::Tauraso: {
            long k = 0;
            if (quadratic_integer_root(c.a, c.b, &k))
                throw DomainError(
                    "tauraso denominator vanishes at n = " +
                    std::to_string(k));
            break;
        }
        case ConstantKind::TaurasoQuartic: {
            long k = 0;
            if (quartic_integer_root(c.a, c.b, &k))
                throw DomainError(
                    "tauraso4 denominator vanishes at n = " +
                    std::to_string(k));
            break;
        }
        case ConstantKind::HarmonicCubic:
            if (c.n_cap < 0)
                throw DomainError("h3 cutoff must be nonnegative");
            break;
    }
}

}  // namespace gosper
