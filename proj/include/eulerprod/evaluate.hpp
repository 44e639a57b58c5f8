#pragma once

// Certified evaluation of Euler products prod_p f(1/p).
//
// With f(z) = prod_{n>=2} (1 - z^n)^{alpha_n} (f(0) = 1, f'(0) = 0), the
// primes from p_m on contribute prod_{n>=2} zeta_m(n)^{-alpha_n}. Cutting
// that product at n = M leaves a relative error of at most
//
//     C(R, B, m, M) = (e - 1) B p_m / ((R p_m - 1) (R p_m)^M)
//
// whenever |f'/f| <= B on |z| = R, R p_m > 1 and C <= 1. The first m-1
// primes are evaluated directly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eulerprod/arith.hpp"
#include "eulerprod/bigreal.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/expand.hpp"
#include "eulerprod/funcs.hpp"
#include "eulerprod/qseries.hpp"
#include "eulerprod/rational.hpp"
#include "eulerprod/zeta.hpp"

namespace eulerprod {

// Decimal guard digits added on top of the target by default.
inline constexpr long default_guard_digits = 10;

// Bits for a D-digit result whose evaluation multiplies about M + m factors:
// ceil((D + guard + ceil(log10(M m))) log2 10).
inline Precision working_precision(long target_digits, std::size_t max_n, std::size_t m,
                                   long guard_digits = default_guard_digits)
{
    const double mm = static_cast<double>(std::max<std::size_t>(1, max_n * m));
    const long extra = static_cast<long>(std::ceil(std::log10(mm)));
    return Precision::from_digits(target_digits + guard_digits + extra);
}

struct EvaluationPlan {
    Rational radius;
    Rational bound;
    std::size_t m;
    std::uint64_t p_m;
    std::size_t max_n;  // M
    BigReal truncation; // C(R, B, m, M), rounded up slightly
    long target_digits;
    Precision working_precision;
};

namespace detail {

inline constexpr long plan_bits = 128;

// (e - 1) B p_m / (R p_m - 1), the M-independent part of C.
inline BigReal truncation_prefix(const Rational& radius, const Rational& bound, std::uint64_t p_m, Precision p)
{
    const BigReal e_minus_1 = BigReal::e(p) - BigReal(1, p);
    const Rational rp = radius * static_cast<unsigned long>(p_m);
    return e_minus_1 * BigReal(bound * static_cast<unsigned long>(p_m), p) / BigReal(rp - 1, p);
}

} // namespace detail

// C(R, B, m, M) as defined above; requires R p_m > 1.
inline BigReal truncation_bound(const Rational& radius, const Rational& bound, std::size_t m, std::size_t max_n)
{
    const Precision p{detail::plan_bits};
    const std::uint64_t p_m = PrimeTable::with_count(m).nth(m);
    const Rational rp = radius * static_cast<unsigned long>(p_m);
    if (rp <= 1) {
        throw PlanError("R*p_m must exceed 1");
    }
    return detail::truncation_prefix(radius, bound, p_m, p) / pow(BigReal(rp, p), static_cast<long>(max_n));
}

// Picks the smallest M > max(1, m) with C <= 1 and C <= 10^-(target+3).
inline EvaluationPlan make_plan(const Rational& radius, const Rational& bound, std::size_t m, long target_digits,
                                long guard_digits = default_guard_digits)
{
    if (radius <= 0 || radius > 1) {
        throw PlanError("radius R must lie in (0, 1], got " + radius.get_str());
    }
    if (bound < 0) {
        throw PlanError("bound B must be nonnegative, got " + bound.get_str());
    }
    if (m < 1) {
        throw PlanError("prime index m must be at least 1");
    }
    if (target_digits < 1) {
        throw PlanError("target digits must be at least 1");
    }
    const std::uint64_t p_m = PrimeTable::with_count(m).nth(m);
    const Rational rp = radius * static_cast<unsigned long>(p_m);
    if (rp <= 1) {
        throw PlanError("R*p_m = " + rp.get_str() + " <= 1 for m = " + std::to_string(m) +
                        "; the method needs a larger m");
    }
    const Precision p{detail::plan_bits};
    const BigReal one(1, p);
    const BigReal threshold = pow(BigReal(10, p), -(target_digits + 3));
    const BigReal ratio = BigReal(rp, p);
    std::size_t max_n = std::max<std::size_t>(2, m + 1);
    BigReal c = detail::truncation_prefix(radius, bound, p_m, p) / pow(ratio, static_cast<long>(max_n));
    while (c > one || c > threshold) {
        c /= ratio;
        ++max_n;
    }
    // Round the bound up past any accumulated rounding error.
    c *= one + pow(BigReal(2, p), -100L);
    return EvaluationPlan{radius, bound, m, p_m, max_n, c, target_digits,
                          working_precision(target_digits, max_n, m, guard_digits)};
}

// prod_{n=2}^{M} zeta_m(n)^{-alpha_n} = exp(-sum alpha_n ln zeta_m(n)),
// at the table's precision. Exponents must come from eps = -1 with alpha_1 = 0.
inline BigReal tail_product(const ExponentSequence& alpha, const ZetaTable& table)
{
    if (!alpha.signs.all_equal_to(-1)) {
        throw DomainError("tail_product needs exponents with eps = -1");
    }
    if (alpha.order() < table.max_n()) {
        throw RangeError("exponent order below the zeta table order");
    }
    if (alpha.order() >= 1 && alpha[1] != 0) {
        throw DomainError("tail_product requires alpha_1 = 0 (f'(0) = 0)");
    }
    const Precision p = table.precision();
    BigReal sum(p);
    for (std::size_t n = 2; n <= table.max_n(); ++n) {
        if (alpha[n] == 0) {
            continue;
        }
        sum += BigReal(alpha[n], p) * ln(table[n]);
    }
    return exp(-sum);
}

// prod_{k=1}^{m-1} f(1/p_k).
inline BigReal head_product(const FunctionExpr& f, std::size_t m, Precision p, const PrimeTable& primes)
{
    BigReal product(1, p);
    for (std::size_t k = 1; k < m; ++k) {
        const BigReal x(Rational(1, static_cast<unsigned long>(primes.nth(k))), p);
        product *= eval_point(f, x, p);
    }
    return product;
}

struct CertifiedValue {
    BigReal value;
    BigReal relative_truncation_bound; // C of the plan (0 when f is constant)
    BigReal rounding_budget;           // bound on accumulated rounding, relative
    long decimal_digits_certified;
    EvaluationPlan plan;
};

// floor(-log10(truncation + rounding)) - 1.
inline long certified_digits(const BigReal& truncation, const BigReal& rounding)
{
    const Precision p{detail::plan_bits};
    const BigReal total = truncation.with_precision(p) + rounding.with_precision(p);
    if (total.sign() <= 0) {
        throw InvariantError("error bound must be positive");
    }
    BigReal lg(p);
    mpfr_log10(lg.get(), total.get(), MPFR_RNDU);
    mpfr_neg(lg.get(), lg.get(), MPFR_RNDN);
    return mpfr_get_si(lg.get(), MPFR_RNDD) - 1;
}

struct EvaluationOptions {
    std::optional<std::size_t> m;  // overrides ConstantSpec::m
    long guard_digits = default_guard_digits;
};

// prefactor * prod_{k<m} f(1/p_k) * prod_{n=2}^{M} zeta_m(n)^{-alpha_n}.
inline CertifiedValue evaluate_constant(const ConstantSpec& spec, long target_digits,
                                        const EvaluationOptions& options = {})
{
    const std::size_t m = options.m.value_or(spec.m);
    EvaluationPlan plan = make_plan(spec.radius, spec.bound, m, target_digits, options.guard_digits);
    const std::size_t max_n = plan.max_n;
    const Precision p = plan.working_precision;

    const RationalSeries b = taylor(spec.f, max_n);
    if (b[0] != 1) {
        throw ValidationError("f(0) must be 1, got " + b[0].get_str());
    }
    if (b[1] != 0) {
        throw ValidationError("f'(0) must be 0, got " + b[1].get_str());
    }
    const RationalSeries g = g_from_b(b);
    const ExponentSequence alpha = exponents_moebius(g, max_n);

    const PrimeTable primes = PrimeTable::with_count(m);
    const ZetaTable table(m, max_n, p);
    const BigReal tail = tail_product(alpha, table);
    const BigReal head = head_product(spec.f, m, p, primes);
    const BigReal prefactor = eval_constant(spec.prefactor, p);
    BigReal value = prefactor * head * tail;

    // Each rounded step costs at most 2^(2-P) relative. An error in
    // ln zeta_m(n) is amplified by |alpha_n| inside the exponential.
    Rational alpha_mass = 0;
    for (std::size_t n = 2; n <= max_n; ++n) {
        alpha_mass += abs(alpha[n]);
    }
    const Precision bp{detail::plan_bits};
    const BigReal ops = BigReal(alpha_mass * static_cast<unsigned long>(m + 8), bp) +
                        BigReal(static_cast<long>((m - 1) * (spec.f.node_count() + 1) +
                                                  spec.prefactor.node_count() + 4 * max_n + 8),
                                bp);
    const BigReal rounding = ops * pow(BigReal(2, bp), 2 - p.bits);

    if (!spec.f.depends_on_z()) {
        // f is the constant 1 (checked above): every alpha_n vanishes exactly.
        plan.truncation = BigReal(bp);
    }
    const long digits = certified_digits(plan.truncation, rounding);
    return CertifiedValue{std::move(value), plan.truncation, rounding, digits, std::move(plan)};
}

} // namespace eulerprod
