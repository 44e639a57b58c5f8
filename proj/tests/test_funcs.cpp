#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace eulerprod;
using eulerprod::testing::Generator;
using eulerprod::testing::series_of;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

const char* const a1_integrand = "(-ln(1-z)/z)*sqrt(1-z)";
const char* const a1_log_derivative = "(-z - (1-z)*ln(1-z))/(z*(1-z)*ln(1-z)) - 1/(2*(1-z))";
const char* const c_integrand = "ln(1+z)/(z*sqrt(1-z))";
const char* const c_log_derivative = "(z - (1+z)*ln(1+z))/(z*(1+z)*ln(1+z)) + 1/(2*(1-z))";

// sqrt(2) ln 2 to 80 digits (mpmath).
const char* const sqrt2_ln2 =
    "0.98025814346854719171390172363523338129146069909905472104224624706529109851420589";

FunctionExpr random_expr(Generator& gen, int depth)
{
    const long pick = depth <= 0 ? gen.integer(0, 1) : gen.integer(0, 9);
    switch (pick) {
    case 0: return FunctionExpr::var();
    case 1: return FunctionExpr::constant(gen.rational());
    case 2: return FunctionExpr::binary(NodeKind::add, random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 3: return FunctionExpr::binary(NodeKind::sub, random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 4: return FunctionExpr::binary(NodeKind::mul, random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 5: return FunctionExpr::binary(NodeKind::div, random_expr(gen, depth - 1), random_expr(gen, depth - 1));
    case 6: {
        // The parser folds negated literals, so only negate non-literals.
        FunctionExpr inner = random_expr(gen, depth - 1);
        if (inner.root().kind == NodeKind::constant) {
            return inner;
        }
        return FunctionExpr::unary(NodeKind::neg, inner);
    }
    case 7: return FunctionExpr::power(random_expr(gen, depth - 1), gen.rational(5, 3));
    case 8: return FunctionExpr::unary(NodeKind::ln, random_expr(gen, depth - 1));
    default: return FunctionExpr::unary(gen.integer(0, 1) ? NodeKind::exp : NodeKind::sqrt, random_expr(gen, depth - 1));
    }
}

} // namespace

TEST(Parse, BasicForms)
{
    EXPECT_EQ(print(parse("1 - z")), "(1-z)");
    EXPECT_EQ(print(parse("z^2*3")), "((z^2)*3)");
    EXPECT_EQ(print(parse("1-z-z")), "((1-z)-z)");
    EXPECT_EQ(print(parse("-3/4")), "(-3/4)");
    EXPECT_EQ(print(parse("-z")), "-(z)");
    EXPECT_EQ(print(parse("(1-z)^-1/2")), "((1-z)^-1/2)");
    EXPECT_EQ(print(parse("2/3^2")), "((2/3)^2)");
    EXPECT_EQ(print(parse("z/ 2")), "(z/2)");
    EXPECT_EQ(print(parse("1/(5/7)")), "(1/(5/7))");
    EXPECT_EQ(print(parse("-z^2")), "((-(z))^2)");
    EXPECT_EQ(print(parse("z^1/2")), "(z^1/2)");
    EXPECT_EQ(print(parse("(z^1)/2")), "((z^1)/2)");
    EXPECT_EQ(print(parse("1/sqrt(pi)")), "(1/sqrt(pi))");
    EXPECT_EQ(parse(" exp( z ) "), parse("exp(z)"));
}

TEST(Parse, Errors)
{
    try {
        parse("z^");
        FAIL() << "no error";
    } catch (const ParseError& err) {
        EXPECT_EQ(err.offset(), 2u);
    }
    try {
        parse("sin(z)");
        FAIL() << "no error";
    } catch (const ParseError& err) {
        EXPECT_EQ(err.offset(), 0u);
    }
    EXPECT_THROW(parse("(1-z"), ParseError);
    EXPECT_THROW(parse("1-z)"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("1/0"), ParseError);
    EXPECT_THROW(parse("z^z"), ParseError);
    EXPECT_THROW(parse("ln z"), ParseError);
}

TEST(ParseProperty, PrintRoundTrip)
{
    Generator gen(53);
    for (int trial = 0; trial < 300; ++trial) {
        const FunctionExpr e = random_expr(gen, static_cast<int>(gen.integer(0, 5)));
        const std::string text = print(e);
        EXPECT_EQ(parse(text), e) << text;
        EXPECT_EQ(print(parse(text)), text);
    }
    for (const auto& name : builtin_names()) {
        const ConstantSpec spec = builtin(name);
        EXPECT_EQ(parse(print(spec.f)), spec.f);
        EXPECT_EQ(parse(print(spec.prefactor)), spec.prefactor);
    }
}

TEST(Taylor, Examples)
{
    EXPECT_EQ(taylor(parse(a1_integrand), 2), series_of({q(1), q(0), q(-1, 24)}));
    EXPECT_EQ(taylor(parse("exp(-z/(1-z))"), 3), series_of({q(1), q(-1), q(-1, 2), q(-1, 6)}));
    EXPECT_EQ(taylor(parse("1/(1-z)^2"), 4), series_of({q(1), q(2), q(3), q(4), q(5)}));
    EXPECT_EQ(taylor(parse("(1-z)^-1/2"), 2), series_of({q(1), q(1, 2), q(3, 8)}));
    EXPECT_EQ(taylor(parse("sqrt(4*z^2+4*z^3)/z"), 2), series_of({q(2), q(1), q(-1, 4)}));
}

TEST(Taylor, DivisionByValuationKeepsRequestedOrder)
{
    const auto s = taylor(parse("ln(1-z)/z"), 10);
    EXPECT_EQ(s.order(), 10u);
    for (std::size_t n = 0; n <= 10; ++n) {
        EXPECT_EQ(s[n], make_rational(-1, static_cast<long>(n + 1)));
    }
}

TEST(Taylor, Errors)
{
    EXPECT_THROW(taylor(parse("ln(z)"), 4), DomainError);
    EXPECT_THROW(taylor(parse("1/z"), 4), DomainError);
    EXPECT_THROW(taylor(parse("z^1/2"), 4), DomainError);
    EXPECT_THROW(taylor(parse("sqrt(2+z)"), 4), DomainError);
    EXPECT_THROW(taylor(parse("exp(1+z)"), 4), DomainError);
    EXPECT_THROW(taylor(parse("pi*z"), 4), DomainError);
    try {
        taylor(parse("1+ln(2+z)"), 3);
        FAIL() << "no error";
    } catch (const DomainError& err) {
        EXPECT_NE(std::string(err.what()).find("ln((2+z))"), std::string::npos) << err.what();
    }
}

TEST(Taylor, AgreesWithLogDerivativeRoute)
{
    const std::size_t n = 25;
    for (auto [f, lf] : {std::pair{a1_integrand, a1_log_derivative}, std::pair{c_integrand, c_log_derivative}}) {
        const auto direct = taylor(parse(f), n);
        const auto g = taylor(parse(lf), n - 1);
        EXPECT_EQ(b_from_g(g), direct) << f;
        EXPECT_EQ(g_from_b(direct), g) << f;
    }
}

TEST(EvalPoint, Values)
{
    const Precision p{300};
    const BigReal half(Rational(1, 2), p);
    const BigReal v = eval_point(parse(a1_integrand), half, p);
    const BigReal ref = BigReal::from_string(sqrt2_ln2, p);
    EXPECT_LE((v - ref).abs(), pow(BigReal(2, p), -260L));
    EXPECT_EQ(eval_point(parse("sqrt(1-z)"), BigReal(Rational(3, 4), p), p), BigReal(Rational(1, 2), p));
}

TEST(EvalPoint, Errors)
{
    const Precision p{64};
    EXPECT_THROW(eval_point(parse("1/z"), BigReal(p), p), DivideByZero);
    EXPECT_THROW(eval_point(parse("z^-1"), BigReal(p), p), DivideByZero);
    EXPECT_THROW(eval_point(parse("ln(z)"), BigReal(-1, p), p), DomainError);
    EXPECT_THROW(eval_point(parse("sqrt(z)"), BigReal(-1, p), p), DomainError);
    EXPECT_THROW(eval_point(parse("z^1/2"), BigReal(-1, p), p), DomainError);
    EXPECT_THROW(eval_constant(parse("1+z"), p), DomainError);
}

TEST(EvalPoint, SeriesAgreesWithPointValue)
{
    // For these integrands |b_n| <= 1, so the tail past z^N at x is below
    // x^(N+1) / (1 - x).
    const Precision p{256};
    const std::size_t n = 60;
    const Rational x(1, 17);
    for (const char* f : {a1_integrand, c_integrand, "exp(-z/(1-z))"}) {
        const auto b = taylor(parse(f), n);
        BigReal horner(p);
        const BigReal xr(x, p);
        for (std::size_t k = n + 1; k-- > 0;) {
            EXPECT_LE(abs(b[k]), 1) << f << " " << k;
            horner = horner * xr + BigReal(b[k], p);
        }
        const BigReal tail = BigReal(pow_int(x, static_cast<long>(n + 1)) / (1 - x), p);
        const BigReal diff = (eval_point(parse(f), xr, p) - horner).abs();
        EXPECT_LE(diff, tail + pow(BigReal(2, p), -240L)) << f;
    }
}

TEST(Builtins, Lookup)
{
    const ConstantSpec a1 = builtin("ramanujan-a1");
    EXPECT_EQ(a1.radius, q(9, 10));
    EXPECT_EQ(a1.bound, 18);
    EXPECT_EQ(a1.m, 7u);
    EXPECT_EQ(builtin("avg-divisor-c").f, parse(c_integrand));
    EXPECT_THROW(builtin("apery"), UnknownConstant);
}
