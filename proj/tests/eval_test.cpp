#include <doctest.h>

#include <gosper/eval.hpp>
#include <gosper/reference.hpp>

#include <string>

using namespace gosper;

namespace {

bool mentions(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

SchemeDef expanding_scheme() {
    SchemeDef s;
    s.name = "expanding";
    s.dim = 1;
    s.alpha = parse_expr("2");
    s.u = {parse_expr("1")};
    s.targets = {ConstantDescriptor::parse("zeta(3)")};
    return s;
}

}  // namespace

TEST_CASE("rational evaluation matches the closed series") {
    EvalOptions opt;
    opt.backend = Backend::Rational;
    opt.terms = 10;
    opt.digits = 20;
    EvalReport rep = evaluate_scheme(make_koecher(1), opt);
    CHECK(rep.scheme == "koecher1");
    CHECK(rep.backend == "rational");
    CHECK(rep.terms == 10);
    REQUIRE(rep.targets.size() == 1);
    Rational expect = koecher_coefficient_series(0, 10);
    CHECK(rep.targets[0].exact == expect.to_string());
    CHECK(rep.targets[0].value == to_decimal(expect, 20));
    CHECK(rep.targets[0].descriptor == "zeta(3)");
    CHECK(rep.targets[0].matched_digits > 5);
    REQUIRE(rep.targets[0].estimated_digits.has_value());
}

TEST_CASE("float evaluation converges at the expected pace") {
    EvalOptions opt;
    opt.backend = Backend::Float;
    opt.precision = 256;
    opt.terms = 100;
    opt.digits = 40;
    EvalReport rep = evaluate_scheme(make_koecher(1), opt);
    CHECK(rep.precision == 256);
    CHECK(rep.targets[0].exact.empty());
    CHECK(rep.targets[0].matched_digits >= 40);
    REQUIRE(rep.targets[0].estimated_digits.has_value());
    CHECK(*rep.targets[0].estimated_digits > 50);
    CHECK(*rep.targets[0].estimated_digits < 70);

    EvalOptions missing;
    missing.backend = Backend::Float;
    CHECK_THROWS_AS(evaluate_scheme(make_koecher(1), missing), DomainError);
}

TEST_CASE("finite schemes multiply exactly and say so") {
    SchemeDef h3 = make_harmonic3_finite();
    apply_params(h3, {{"Ncap", Rational(2)}});
    EvalOptions opt;
    opt.terms = 500;  // ignored: the scheme fixes its own length
    EvalReport rep = evaluate_scheme(h3, opt);
    CHECK(rep.terms == 2);
    CHECK(rep.targets[0].exact == "9/8");
    CHECK(!rep.targets[0].estimated_digits.has_value());
    bool says_finite = false;
    for (const std::string& n : rep.notes)
        if (mentions(n, "finite")) says_finite = true;
    CHECK(says_finite);
    CHECK(rep.targets[0].matched_digits >= opt.digits);
}

TEST_CASE("non-contracting schemes are reported, not estimated") {
    EvalOptions opt;
    opt.terms = 12;
    EvalReport rep = evaluate_scheme(expanding_scheme(), opt);
    CHECK(!rep.targets[0].estimated_digits.has_value());
    bool warned = false;
    for (const std::string& n : rep.notes)
        if (mentions(n, "contract")) warned = true;
    CHECK(warned);
    // 12 terms of sum 2^q: 2^12 - 1.
    CHECK(rep.targets[0].exact == "4095");
}

TEST_CASE("report serialization round-trips") {
    EvalOptions opt;
    opt.terms = 8;
    EvalReport rep = evaluate_scheme(make_borwein(2), opt);
    std::string json = to_json(rep);
    EvalReport back = report_from_json(json);
    CHECK(to_json(back) == json);
    CHECK(back.scheme == rep.scheme);
    CHECK(back.targets.size() == rep.targets.size());
    CHECK(back.targets[1].exact == rep.targets[1].exact);

    // Identical inputs give byte-identical output.
    CHECK(to_json(evaluate_scheme(make_borwein(2), opt)) == json);

    CHECK_THROWS_AS(report_from_json("not json at all"), ParseError);
    CHECK_THROWS_AS(report_from_json("{\"scheme\": 3}"), ParseError);

    std::string csv = to_csv(rep);
    CHECK(mentions(csv, "scheme,backend,precision,terms,component,descriptor,"
                        "value,exact,oracle,matched_digits,estimated_digits,"
                        "alpha_prefix"));
    CHECK(mentions(csv, "borwein2"));
    CHECK(mentions(csv, "zeta(2)"));

    std::string text = to_text(rep);
    CHECK(mentions(text, "borwein2"));
    CHECK(mentions(text, "zeta(4)"));
}

TEST_CASE("verification loop reaches the requested digits") {
    VerifyOptions opt;
    opt.digits = 30;
    VerifyReport rep = verify_scheme(make_koecher(1), opt);
    CHECK(rep.ok);
    CHECK(rep.converged);
    REQUIRE(rep.targets.size() == 1);
    CHECK(rep.targets[0].ok);
    CHECK(rep.targets[0].matched_digits >= 30);
    CHECK(rep.terms >= 30);

    std::string json = to_json(rep);
    CHECK(mentions(json, "\"ok\": true"));
    CHECK(mentions(to_text(rep), "koecher1"));
}

TEST_CASE("verification fails honestly when the product expands") {
    VerifyOptions opt;
    opt.digits = 10;
    opt.max_terms = 64;
    VerifyReport rep = verify_scheme(expanding_scheme(), opt);
    CHECK(!rep.converged);
    CHECK(!rep.ok);
    CHECK(rep.terms == 64);
}

TEST_CASE("contraction rate measurement") {
    RateOptions opt;
    opt.from = 50;
    opt.to = 100;
    RateReport rep = measure_rate(make_koecher(1), opt);
    CHECK(rep.targets[0].digits_per_term == doctest::Approx(0.602).epsilon(0.1));
    CHECK(rep.alpha_rate == doctest::Approx(0.604).epsilon(0.02));
    CHECK(mentions(to_json(rep), "digits_per_term"));
    CHECK(mentions(to_text(rep), "koecher1"));

    SchemeDef h3 = make_harmonic3_finite();
    CHECK_THROWS_AS(measure_rate(h3, opt), DomainError);
    RateOptions bad;
    bad.from = 100;
    bad.to = 50;
    CHECK_THROWS_AS(measure_rate(make_koecher(1), bad), DomainError);
    bad.from = 2;
    bad.to = 50;
    CHECK_THROWS_AS(measure_rate(make_koecher(1), bad), DomainError);
}

TEST_CASE("backend names") {
    CHECK(backend_name(Backend::Rational) == "rational");
    CHECK(backend_name(Backend::Float) == "float");
    CHECK(backend_from_name("rational") == Backend::Rational);
    CHECK(backend_from_name("float") == Backend::Float);
    CHECK_THROWS_AS(backend_from_name("decimal"), DomainError);
}
