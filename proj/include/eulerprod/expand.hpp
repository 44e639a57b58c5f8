#pragma once

// Exponents of the product decomposition
//
//     f(z) = f(0) * prod_{n>=1} (1 + eps_n z^n)^{alpha_n},   eps_n = +-1,
//
// computed exactly from the coefficients g_n of f'/f, together with two
// independent routes back to the Taylor coefficients b_n of f (a series
// product and a sum over partitions) used to check the exponents.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eulerprod/arith.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/qseries.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

enum class SignStrategy { all_minus, all_plus, adaptive, explicit_list };

inline std::string to_string(SignStrategy s)
{
    switch (s) {
    case SignStrategy::all_minus: return "minus";
    case SignStrategy::all_plus: return "plus";
    case SignStrategy::adaptive: return "adaptive";
    case SignStrategy::explicit_list: return "explicit";
    }
    return "unknown";
}

// eps_1..eps_M, each exactly +1 or -1. The strategy records how the signs
// were chosen; adaptive signs only become concrete after rewriting.
class SignSequence {
public:
    static SignSequence all_minus(std::size_t m) { return SignSequence(SignStrategy::all_minus, std::vector<int>(m + 1, -1)); }

    static SignSequence all_plus(std::size_t m) { return SignSequence(SignStrategy::all_plus, std::vector<int>(m + 1, 1)); }

    // signs[0] is ignored.
    static SignSequence from_list(std::vector<int> signs, SignStrategy tag = SignStrategy::explicit_list)
    {
        if (signs.empty()) {
            signs.push_back(0);
        }
        for (std::size_t n = 1; n < signs.size(); ++n) {
            if (signs[n] != 1 && signs[n] != -1) {
                throw DomainError("sign eps_" + std::to_string(n) + " must be +1 or -1");
            }
        }
        return SignSequence(tag, std::move(signs));
    }

    std::size_t size() const noexcept { return signs_.size() - 1; }
    SignStrategy strategy() const noexcept { return strategy_; }

    int operator[](std::size_t n) const
    {
        if (n == 0 || n >= signs_.size()) {
            throw RangeError("sign index " + std::to_string(n) + " out of range");
        }
        return signs_[n];
    }

    bool all_equal_to(int s) const
    {
        for (std::size_t n = 1; n < signs_.size(); ++n) {
            if (signs_[n] != s) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const SignSequence& a, const SignSequence& b) { return a.signs_ == b.signs_; }

private:
    SignSequence(SignStrategy tag, std::vector<int> signs) : strategy_(tag), signs_(std::move(signs))
    {
        signs_[0] = 0;
    }

    SignStrategy strategy_;
    std::vector<int> signs_;
};

// alpha_1..alpha_M (alphas[0] unused) and their signs.
struct ExponentSequence {
    std::vector<Rational> alphas;
    SignSequence signs = SignSequence::all_minus(0);

    std::size_t order() const noexcept { return alphas.empty() ? 0 : alphas.size() - 1; }

    const Rational& operator[](std::size_t n) const
    {
        if (n == 0 || n >= alphas.size()) {
            throw RangeError("exponent index " + std::to_string(n) + " out of range");
        }
        return alphas[n];
    }

    friend bool operator==(const ExponentSequence& a, const ExponentSequence& b)
    {
        return a.alphas == b.alphas && a.signs == b.signs;
    }
};

namespace detail {

inline void require_g_order(const RationalSeries& g, std::size_t m)
{
    if (g.order() + 1 < m) {
        throw RangeError("g series holds g_1..g_" + std::to_string(g.order() + 1) +
                         " but exponents up to " + std::to_string(m) + " were requested");
    }
}

// (-eps)^k for eps = +-1.
inline int neg_sign_power(int eps, std::size_t k) { return (eps == -1 || k % 2 == 0) ? 1 : -1; }

} // namespace detail

// Solves -g_n = sum_{d|n} d alpha_d (-eps_d)^{n/d} for n = 1..M in order.
// This is the coefficient comparison for f'/f = sum eps_n n alpha_n
// z^{n-1} / (1 + eps_n z^n); for eps = -1 every power is 1. The d = n term
// is -eps_n n alpha_n, so each step divides by -eps_n n.
inline ExponentSequence exponents_from_g(const RationalSeries& g, const SignSequence& eps, std::size_t m)
{
    detail::require_g_order(g, m);
    if (eps.size() < m) {
        throw RangeError("sign sequence shorter than requested order");
    }
    std::vector<Rational> alpha(m + 1);
    for (std::size_t n = 1; n <= m; ++n) {
        Rational s = -g_coefficient(g, n);
        for (std::uint64_t d : divisors(static_cast<std::int64_t>(n))) {
            if (d == n) {
                break;
            }
            if (alpha[d] == 0) {
                continue;
            }
            const int sign = detail::neg_sign_power(eps[d], n / d);
            s -= alpha[d] * static_cast<unsigned long>(d) * sign;
        }
        alpha[n] = s / static_cast<unsigned long>(n);
        if (eps[n] == 1) {
            alpha[n] = -alpha[n];
        }
    }
    std::vector<int> signs(m + 1);
    for (std::size_t n = 1; n <= m; ++n) {
        signs[n] = eps[n];
    }
    return ExponentSequence{std::move(alpha), SignSequence::from_list(std::move(signs), eps.strategy())};
}

// The eps = -1 case by Moebius inversion: n alpha_n = -sum_{d|n} g_d mu(n/d).
inline ExponentSequence exponents_moebius(const RationalSeries& g, std::size_t m)
{
    detail::require_g_order(g, m);
    std::vector<Rational> alpha(m + 1);
    for (std::size_t n = 1; n <= m; ++n) {
        Rational s = 0;
        for (std::uint64_t d : divisors(static_cast<std::int64_t>(n))) {
            const int mu = moebius(static_cast<std::int64_t>(n / d));
            if (mu != 0) {
                s -= g_coefficient(g, d) * mu;
            }
        }
        alpha[n] = s / static_cast<unsigned long>(n);
    }
    return ExponentSequence{std::move(alpha), SignSequence::all_minus(m)};
}

// Rewrites an all-minus decomposition term by term, n = 1..M, so that every
// exponent is nonnegative, using
//     (1 - z^n)^w = (1 + z^n)^{-w} (1 - z^{2n})^{w}.
// A negative working exponent w_n flips eps_n to +1 and carries w_n to w_{2n}.
// Zero keeps eps_n = -1.
inline ExponentSequence rewrite_adaptive(const ExponentSequence& alpha_hat)
{
    if (!alpha_hat.signs.all_equal_to(-1)) {
        throw DomainError("rewrite_adaptive expects an all-minus exponent sequence");
    }
    const std::size_t m = alpha_hat.order();
    std::vector<Rational> w(alpha_hat.alphas);
    std::vector<Rational> alpha(m + 1);
    std::vector<int> signs(m + 1, -1);
    for (std::size_t n = 1; n <= m; ++n) {
        if (w[n] >= 0) {
            alpha[n] = w[n];
        } else {
            signs[n] = 1;
            alpha[n] = -w[n];
            if (2 * n <= m) {
                w[2 * n] += w[n];
            }
        }
    }
    return ExponentSequence{std::move(alpha), SignSequence::from_list(std::move(signs), SignStrategy::adaptive)};
}

// Exponents for a sign strategy. Adaptive runs the all-minus Moebius route
// followed by rewrite_adaptive.
inline ExponentSequence expand_exponents(const RationalSeries& g, SignStrategy strategy, std::size_t m)
{
    switch (strategy) {
    case SignStrategy::all_minus: return exponents_from_g(g, SignSequence::all_minus(m), m);
    case SignStrategy::all_plus: return exponents_from_g(g, SignSequence::all_plus(m), m);
    case SignStrategy::adaptive: return rewrite_adaptive(exponents_moebius(g, m));
    case SignStrategy::explicit_list: break;
    }
    throw DomainError("expand_exponents needs an explicit sign list for this strategy");
}

// Taylor coefficients (order M) of the finite product
// prod_{k=1}^{M} (1 + eps_k z^k)^{alpha_k}. Factors with k > M cannot touch
// coefficients up to z^M, so this equals b_0..b_M of the infinite product.
inline RationalSeries reconstruct_b(const ExponentSequence& alpha)
{
    const std::size_t m = alpha.order();
    RationalSeries result = RationalSeries::constant(1, m);
    for (std::size_t k = 1; k <= m; ++k) {
        if (alpha[k] == 0) {
            continue;
        }
        RationalSeries base = add(RationalSeries::constant(1, m),
                                  RationalSeries::monomial(alpha.signs[k], k, m));
        result = mul(result, pow(base, alpha[k]));
    }
    return result;
}

// C(a, k) = a (a-1) ... (a-k+1) / k! for rational a.
inline Rational binomial(const Rational& a, std::size_t k)
{
    Rational r = 1;
    for (std::size_t j = 0; j < k; ++j) {
        r *= a - static_cast<unsigned long>(j);
        r /= static_cast<unsigned long>(j + 1);
    }
    return r;
}

namespace detail {

// Sum over multiplicities k_part..k_1 with sum_i i k_i = remaining.
inline Rational partition_sum(const ExponentSequence& alpha, std::size_t part, std::size_t remaining)
{
    if (remaining == 0) {
        return 1;
    }
    if (part == 0) {
        return 0;
    }
    Rational total = 0;
    const int eps = alpha.signs[part];
    for (std::size_t k = 0; k * part <= remaining; ++k) {
        Rational weight = binomial(alpha[part], k);
        if (weight == 0) {
            if (k > 0) {
                break; // C(a, k) = 0 implies C(a, k') = 0 for all k' > k
            }
            continue;
        }
        if (eps == -1 && k % 2 == 1) {
            weight = -weight;
        }
        const Rational rest = partition_sum(alpha, part - 1, remaining - k * part);
        if (rest != 0) {
            total += weight * rest;
        }
    }
    return total;
}

} // namespace detail

// b_n = sum over k_1 + 2 k_2 + ... + n k_n = n of prod_i C(alpha_i, k_i) eps_i^{k_i}.
// Exponential in n; intended for n up to about 15.
inline Rational partition_sum_b(const ExponentSequence& alpha, std::size_t n)
{
    if (n > alpha.order()) {
        throw RangeError("partition_sum_b: n exceeds the exponent order");
    }
    return detail::partition_sum(alpha, n, n);
}

// |alpha_n| <= n * sum_{k<=n} |g_k| for every n <= M.
inline bool growth_bound_check(const RationalSeries& g, const ExponentSequence& alpha)
{
    detail::require_g_order(g, alpha.order());
    Rational partial = 0;
    for (std::size_t n = 1; n <= alpha.order(); ++n) {
        partial += abs(g_coefficient(g, n));
        if (abs(alpha[n]) > partial * static_cast<unsigned long>(n)) {
            return false;
        }
    }
    return true;
}

// Residual check of the defining divisor-sum identity for every n <= M.
inline bool satisfies_divisor_identity(const RationalSeries& g, const ExponentSequence& alpha)
{
    detail::require_g_order(g, alpha.order());
    for (std::size_t n = 1; n <= alpha.order(); ++n) {
        Rational s = 0;
        for (std::uint64_t d : divisors(static_cast<std::int64_t>(n))) {
            s += alpha[d] * static_cast<unsigned long>(d) * detail::neg_sign_power(alpha.signs[d], n / d);
        }
        if (s != -g_coefficient(g, n)) {
            return false;
        }
    }
    return true;
}

} // namespace eulerprod
