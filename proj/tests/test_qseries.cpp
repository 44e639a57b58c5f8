#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace eulerprod;
using eulerprod::testing::Generator;
using eulerprod::testing::series_of;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

RationalSeries exp_z(std::size_t order)
{
    std::vector<Rational> v(order + 1);
    BigInt fact = 1;
    for (std::size_t n = 0; n <= order; ++n) {
        if (n > 0) {
            fact *= static_cast<unsigned long>(n);
        }
        v[n] = make_rational(BigInt(1), fact);
    }
    return RationalSeries(std::move(v));
}

} // namespace

TEST(QSeries, MulMatchesHandExpansionOfIntegrand)
{
    // -ln(1-z)/z and sqrt(1-z) to order 2.
    const auto a = series_of({q(1), q(1, 2), q(1, 3)});
    const auto b = series_of({q(1), q(-1, 2), q(-1, 8)});
    EXPECT_EQ(mul(a, b), series_of({q(1), q(0), q(-1, 24)}));
}

TEST(QSeries, MulTruncatesToShorterOrder)
{
    const auto a = series_of({q(1), q(1), q(1), q(1)});
    const auto b = series_of({q(1), q(-1)});
    EXPECT_EQ(mul(a, b), series_of({q(1), q(0)}));
}

TEST(QSeries, SquareRootOfOneMinusZ)
{
    const auto one_minus_z = series_of({q(1), q(-1), q(0)});
    EXPECT_EQ(pow(one_minus_z, q(1, 2)), series_of({q(1), q(-1, 2), q(-1, 8)}));
}

TEST(QSeries, InverseOfGeometricSeries)
{
    const auto geo = series_of({q(1), q(1), q(1), q(1), q(1)});
    EXPECT_EQ(inverse(geo), series_of({q(1), q(-1), q(0), q(0), q(0)}));
    EXPECT_THROW(inverse(series_of({q(0), q(1)})), DomainError);
}

TEST(QSeries, DivisionCancelsCommonValuation)
{
    // (z - z^2) / z = 1 - z, with one coefficient of order lost.
    const auto num = series_of({q(0), q(1), q(-1), q(0)});
    const auto den = series_of({q(0), q(1), q(0), q(0)});
    const auto r = div(num, den);
    EXPECT_EQ(r.order(), 2u);
    EXPECT_EQ(r, series_of({q(1), q(-1), q(0)}));
}

TEST(QSeries, DivisionErrors)
{
    const auto one = RationalSeries::constant(1, 3);
    const auto z = RationalSeries::monomial(1, 1, 3);
    EXPECT_THROW(div(one, z), ValuationError);
    EXPECT_THROW(div(one, RationalSeries::zero(3)), ZeroDivisor);
}

TEST(QSeries, ExpOfMinusZOverOneMinusZ)
{
    // exp(z/(z-1)) = 1 - z - z^2/2 - z^3/6 + ...
    const auto arg = series_of({q(0), q(-1), q(-1), q(-1)});
    EXPECT_EQ(exp(arg), series_of({q(1), q(-1), q(-1, 2), q(-1, 6)}));
}

TEST(QSeries, LogAndExpDomains)
{
    EXPECT_THROW(log(series_of({q(2), q(1)})), DomainError);
    EXPECT_THROW(exp(series_of({q(1), q(1)})), DomainError);
}

TEST(QSeries, LogOfExpZIsZ)
{
    const auto l = log(exp_z(10));
    EXPECT_EQ(l, RationalSeries::monomial(1, 1, 10));
}

TEST(QSeries, PowWithValuation)
{
    // (4 z^2 (1 + z))^(1/2) = 2 z (1 + z/2 - z^2/8 + ...)
    const auto a = series_of({q(0), q(0), q(4), q(4), q(0), q(0)});
    const auto r = pow(a, q(1, 2));
    EXPECT_EQ(r[0], 0);
    EXPECT_EQ(r[1], 2);
    EXPECT_EQ(r[2], 1);
    EXPECT_EQ(r[3], q(-1, 4));
    // Odd valuation with exponent 1/2 is not a power series.
    EXPECT_THROW(pow(series_of({q(0), q(1), q(1)}), q(1, 2)), DomainError);
    // 2^(1/2) is irrational.
    EXPECT_THROW(pow(series_of({q(2), q(1)}), q(1, 2)), DomainError);
}

TEST(QSeries, DerivativeAndIntegrate)
{
    const auto a = series_of({q(5), q(1), q(3), q(2)});
    EXPECT_EQ(derivative(a), series_of({q(1), q(6), q(6)}));
    EXPECT_EQ(integrate(derivative(a)), series_of({q(0), q(1), q(3), q(2)}));
    EXPECT_THROW(derivative(RationalSeries::constant(1, 0)), DomainError);
}

TEST(QSeries, GFromBExamples)
{
    // e^z: f'/f = 1.
    const auto g = g_from_b(exp_z(6));
    EXPECT_EQ(g.order(), 5u);
    EXPECT_EQ(g_coefficient(g, 1), 1);
    for (std::size_t n = 2; n <= 6; ++n) {
        EXPECT_EQ(g_coefficient(g, n), 0) << n;
    }
    // exp(z/(z-1)): f'/f = -1/(1-z)^2 so g_n = -n.
    const auto b = exp(series_of({q(0), q(-1), q(-1), q(-1), q(-1), q(-1), q(-1)}));
    const auto g2 = g_from_b(b);
    for (std::size_t n = 1; n <= 6; ++n) {
        EXPECT_EQ(g_coefficient(g2, n), -static_cast<long>(n)) << n;
    }
}

TEST(QSeries, GFromBMatchesLogDerivative)
{
    Generator gen(101);
    for (int trial = 0; trial < 30; ++trial) {
        const auto b = gen.series(12, 1);
        const auto via_recursion = g_from_b(b);
        const auto via_log = derivative(log(b));
        EXPECT_EQ(via_recursion, via_log);
    }
}

TEST(QSeriesProperty, ExpLogRoundTrip)
{
    Generator gen(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t order = static_cast<std::size_t>(gen.integer(0, 30));
        const auto a = gen.series(order, 1);
        EXPECT_EQ(exp(log(a)), a) << a.to_string();
    }
}

TEST(QSeriesProperty, RationalPowerRaisedBack)
{
    Generator gen(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = gen.series(static_cast<std::size_t>(gen.integer(1, 15)), 1);
        const long p = gen.integer(-5, 5);
        const long d = gen.integer(1, 4);
        const Rational r = make_rational(p, d);
        const auto lhs = pow(pow(a, r), Rational(r.get_den()));
        const auto rhs = pow(a, Rational(r.get_num()));
        EXPECT_EQ(lhs, rhs) << a.to_string() << " ^ " << r;
    }
}

TEST(QSeriesProperty, DivUndoesMul)
{
    Generator gen(13);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t order = static_cast<std::size_t>(gen.integer(1, 20));
        const auto a = gen.series(order, gen.rational());
        Rational c0 = gen.rational();
        if (c0 == 0) {
            c0 = 1;
        }
        const auto b = gen.series(order, c0);
        EXPECT_EQ(div(mul(a, b), b), a);
    }
}

TEST(QSeriesProperty, GAndBRoundTrip)
{
    Generator gen(17);
    for (int trial = 0; trial < 40; ++trial) {
        const auto b = gen.series(static_cast<std::size_t>(gen.integer(1, 25)), 1);
        EXPECT_EQ(b_from_g(g_from_b(b)), b);
    }
}
