#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "statcalc/da_table.hpp"
#include "statcalc/expr.hpp"

using namespace statcalc;
using Catch::Matchers::WithinAbs;
using Kind = Expr::Kind;

namespace {

ParseError parse_error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for '" << text << "'");
    throw;
}

EvalError eval_error_of(const std::string& text, double x) {
    try {
        parse(text).evaluate(x);
    } catch (const EvalError& e) {
        return e;
    }
    FAIL("expected an evaluation error for '" << text << "' at " << x);
    throw;
}

}  // namespace

TEST_CASE("x^2 parses to pow(var, 2)", "[expr]") {
    Expr e = parse("x^2");
    REQUIRE(e.kind() == Kind::Pow);
    CHECK(e.lhs().kind() == Kind::Variable);
    CHECK(e.rhs().kind() == Kind::Constant);
    CHECK(e.rhs().value() == 2.0);
}

TEST_CASE("sin(x)^2 squares the sine", "[expr]") {
    Expr e = parse("sin(x)^2");
    REQUIRE(e.kind() == Kind::Pow);
    REQUIRE(e.lhs().kind() == Kind::Call);
    CHECK(e.lhs().func() == Func::Sin);
    // (sin(pi/2))^2 = 1, whereas sin((pi/2)^2) = 0.6242...
    const double half_pi = std::numbers::pi / 2;
    double by_hand = std::sin(half_pi) * std::sin(half_pi);
    CHECK(e.evaluate(half_pi) == by_hand);
    CHECK_THAT(e.evaluate(half_pi), WithinAbs(1.0, 1e-15));
    CHECK(std::fabs(e.evaluate(half_pi) - std::sin(half_pi * half_pi)) > 0.3);
}

TEST_CASE("unary plus is a syntax error", "[expr]") {
    ParseError e = parse_error_of("2*+3");
    CHECK(e.position() == 3);
    CHECK_FALSE(e.expected().empty());
}

TEST_CASE("malformed input reports position and hint", "[expr]") {
    CHECK(parse_error_of("").position() == 1);
    CHECK(parse_error_of("sin x").position() == 5);
    CHECK(parse_error_of("sin x").expected() == "'(' after function name");
    CHECK(parse_error_of("(x+1").position() == 5);
    CHECK(parse_error_of("x+").position() == 3);
    CHECK(parse_error_of("2x").position() == 2);
    CHECK(parse_error_of("2 e").position() == 3);
    CHECK(parse_error_of("y+1").position() == 1);
    CHECK(parse_error_of("x)").position() == 2);
    CHECK(parse_error_of("1e999").position() == 1);
    CHECK(parse_error_of("cos()").position() == 5);
}

TEST_CASE("precedence and associativity", "[expr]") {
    CHECK(parse("2+3*4").evaluate(0) == 14.0);
    CHECK(parse("2^3^2").evaluate(0) == 512.0);
    CHECK(parse("-x^2").evaluate(3) == -9.0);
    CHECK(parse("-2*3").evaluate(0) == -6.0);
    CHECK(parse("2^-1").evaluate(0) == 0.5);
    CHECK(parse("8/4/2").evaluate(0) == 1.0);
    CHECK(parse("10-4-3").evaluate(0) == 3.0);
    CHECK(parse("(2+3)*4").evaluate(0) == 20.0);
    CHECK(parse("--x").evaluate(5) == 5.0);
}

TEST_CASE("literals and named constants", "[expr]") {
    CHECK(parse("1.5e2").evaluate(0) == 150.0);
    CHECK(parse("2E-3").evaluate(0) == 0.002);
    CHECK(parse(".25").evaluate(0) == 0.25);
    CHECK(parse("3.").evaluate(0) == 3.0);
    CHECK(parse("pi").evaluate(0) == std::numbers::pi);
    CHECK(parse("e").evaluate(0) == std::numbers::e);
    CHECK(parse("e^x").evaluate(1) == std::pow(std::numbers::e, 1.0));
    CHECK(parse_constant("pi/2") == std::numbers::pi / 2);
    CHECK_THROWS_AS(parse_constant("x+1"), ParseError);
}

TEST_CASE("evaluate examples", "[expr]") {
    CHECK(parse("x^2").evaluate(0.5) == 0.25);
    CHECK_THAT(parse("sin(x)^2").evaluate(std::numbers::pi), WithinAbs(0.0, 1e-15));
    EvalError e = eval_error_of("1/x", 0.0);
    CHECK(e.kind() == EvalErrorKind::Domain);
    CHECK(e.input() == 0.0);
    CHECK(e.node() == "(1 / x)");
}

TEST_CASE("every builtin function evaluates", "[expr]") {
    const double x = 0.7;
    CHECK(parse("sin(x)").evaluate(x) == std::sin(x));
    CHECK(parse("cos(x)").evaluate(x) == std::cos(x));
    CHECK(parse("tan(x)").evaluate(x) == std::tan(x));
    CHECK(parse("sec(x)").evaluate(x) == 1.0 / std::cos(x));
    CHECK(parse("exp(x)").evaluate(x) == std::exp(x));
    CHECK(parse("ln(x)").evaluate(x) == std::log(x));
    CHECK(parse("sqrt(x)").evaluate(x) == std::sqrt(x));
    CHECK(parse("abs(x)").evaluate(-x) == x);
}

TEST_CASE("domain and non-finite failures", "[expr]") {
    CHECK(eval_error_of("ln(x)", 0.0).kind() == EvalErrorKind::Domain);
    CHECK(eval_error_of("ln(x)", -1.0).kind() == EvalErrorKind::Domain);
    CHECK(eval_error_of("sqrt(x)", -1e-300).kind() == EvalErrorKind::Domain);
    CHECK(eval_error_of("x^0.5", -4.0).kind() == EvalErrorKind::Domain);
    CHECK(eval_error_of("x^-1", 0.0).kind() == EvalErrorKind::Domain);
    CHECK(eval_error_of("exp(x)", 1000.0).kind() == EvalErrorKind::NonFinite);
    CHECK(eval_error_of("x*x", 1e200).kind() == EvalErrorKind::NonFinite);
    CHECK(eval_error_of("10^x", 400.0).kind() == EvalErrorKind::NonFinite);
    CHECK(eval_error_of("1/(x-1)", 1.0).kind() == EvalErrorKind::Domain);
    // Negative base with an integral exponent is fine.
    CHECK(parse("x^3").evaluate(-2.0) == -8.0);
    // The error names the failing subtree, not the whole expression.
    CHECK(eval_error_of("1 + ln(x)", -2.0).node() == "ln(x)");
}

TEST_CASE("sec and tan pole detection", "[expr]") {
    // cos never returns exactly zero for a double argument, so poles show up
    // as huge but finite values; only exact zeros or overflow are errors.
    CHECK(std::fabs(parse("sec(x)").evaluate(std::numbers::pi / 2)) > 1e15);
    CHECK(std::isfinite(parse("tan(x)").evaluate(std::numbers::pi / 2)));
    CHECK(eval_error_of("sec(x)^40", std::numbers::pi / 2).kind() == EvalErrorKind::NonFinite);
}

TEST_CASE("printing is canonical and round-trips", "[expr][property]") {
    const std::vector<std::string> corpus = {
        "x",         "x^2",           "sin(x)^2",          "2+3*4",           "2^3^2",
        "-x^2",      "2^-1",          "(1/2)*(x-sin(x)*cos(x))", "x^5/5", "e^x",
        "1/x",       "ln(x)",         "-sin(x)",           "sec(x)^2",        "tan(x)",
        "sqrt(abs(x))", "exp(-x^2/2)", "1.5e-7*x + 0.1",   "pi*x - e",        "--x",
        "3*(x+1)^(2/3)", "cos(sin(tan(x)))", "0.1+0.2",    "123456789.125",   "x/3/7",
    };
    for (const auto& text : corpus) {
        INFO(text);
        Expr once = parse(text);
        Expr twice = parse(once.str());
        CHECK(once == twice);
        CHECK(twice.str() == once.str());
    }
    CHECK(parse("1+2*x").str() == "(1 + (2 * x))");
    CHECK(parse("-x^2").str() == "(-(x ^ 2))");
    CHECK(parse("sin(x)^2").str() == "(sin(x) ^ 2)");
}

TEST_CASE("randomly generated trees round-trip", "[expr][property]") {
    // Hand-rolled generator over the full grammar.
    std::uint64_t state = 12345;
    auto next = [&] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<unsigned>(state >> 33);
    };
    std::function<std::string(int)> gen = [&](int depth) -> std::string {
        unsigned pick = next() % (depth > 0 ? 9 : 4);
        switch (pick) {
            case 0: return "x";
            case 1: return std::to_string(next() % 100) + "." + std::to_string(next() % 10);
            case 2: return next() % 2 ? "pi" : "e";
            case 3: return std::to_string(next() % 7);
            case 4: return "-" + gen(depth - 1);
            case 5: {
                static const char* fn[] = {"sin", "cos", "tan", "sec", "exp", "ln", "sqrt", "abs"};
                return std::string(fn[next() % 8]) + "(" + gen(depth - 1) + ")";
            }
            case 6: return "(" + gen(depth - 1) + ")";
            default: {
                static const char ops[] = {'+', '-', '*', '/', '^'};
                return gen(depth - 1) + ops[next() % 5] + gen(depth - 1);
            }
        }
    };
    for (int i = 0; i < 500; ++i) {
        std::string text = gen(5);
        INFO(text);
        Expr once = parse(text);
        CHECK(parse(once.str()) == once);
    }
}

TEST_CASE("evaluation is pure", "[expr][property]") {
    Expr e = parse("sin(x)^2 + exp(-x)/3 - ln(1+x^2)");
    for (double x : {0.0, 0.1, 1.0, 2.5, 17.0}) {
        double first = e.evaluate(x);
        for (int k = 0; k < 5; ++k) CHECK(e.evaluate(x) == first);
        Expr copy = e;
        CHECK(copy.evaluate(x) == first);
    }
}

TEST_CASE("builtin DA table", "[expr][da]") {
    const auto& table = builtin_da_table();
    std::set<std::string> families;
    for (const auto& entry : table) families.insert(entry.family);
    CHECK(families == std::set<std::string>{"power", "exp", "log", "sine", "cosine", "tangent"});
    CHECK(table.size() == 8);

    auto p4 = find_da_pair("power n=4");
    REQUIRE(p4);
    CHECK(p4->f == parse("x^4"));
    CHECK(p4->F == parse("x^5/5"));

    auto ex = find_da_pair("exp");
    REQUIRE(ex);
    CHECK(ex->f == parse("e^x"));
    CHECK(ex->F == parse("e^x"));

    auto co = find_da_pair("cosine");
    REQUIRE(co);
    CHECK(co->f == parse("-sin(x)"));
    CHECK(co->F == parse("cos(x)"));

    CHECK(find_da_pair("log")->verify_interval == Interval(0.5, 2.0));
    CHECK(find_da_pair("tangent")->verify_interval == Interval(0.0, 1.0));
    CHECK_FALSE(find_da_pair("power"));
    CHECK_FALSE(find_da_pair("nope"));
}
