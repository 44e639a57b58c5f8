#pragma once

// Truncated power series with exact rational coefficients.
//
// A RationalSeries of order N stores c_0..c_N and stands for
// c_0 + c_1 z + ... + c_N z^N + O(z^{N+1}). Binary operations truncate to
// the smaller operand order and never extend precision on their own.
//
// Convention for logarithmic derivatives: the series of f'/f is stored as an
// ordinary power series, so if f'(z)/f(z) = sum_{n>=1} g_n z^{n-1} then
// g_n lives at index n-1. Use g_coefficient() to read it by its natural index.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulerprod/errors.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

class RationalSeries {
public:
    RationalSeries() : coeffs_(1) {}

    explicit RationalSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw DomainError("a series needs at least the constant coefficient");
        }
    }

    static RationalSeries constant(const Rational& c, std::size_t order)
    {
        std::vector<Rational> v(order + 1);
        v[0] = c;
        return RationalSeries(std::move(v));
    }

    static RationalSeries zero(std::size_t order) { return constant(0, order); }

    // c * z^k, truncated at the given order.
    static RationalSeries monomial(const Rational& c, std::size_t k, std::size_t order)
    {
        std::vector<Rational> v(order + 1);
        if (k <= order) {
            v[k] = c;
        }
        return RationalSeries(std::move(v));
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }

    const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }

    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    // Index of the first nonzero coefficient, or nullopt if the series
    // vanishes to its order.
    std::optional<std::size_t> valuation() const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != 0) {
                return i;
            }
        }
        return std::nullopt;
    }

    bool is_zero() const { return !valuation().has_value(); }

    RationalSeries truncate(std::size_t order) const
    {
        if (order > this->order()) {
            throw RangeError("cannot truncate a series of order " + std::to_string(this->order()) +
                             " to the larger order " + std::to_string(order));
        }
        return RationalSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
    }

    // Drops the first k coefficients: the series divided by z^k.
    RationalSeries shift_down(std::size_t k) const
    {
        if (k > order()) {
            throw RangeError("shift exceeds series order");
        }
        return RationalSeries(std::vector<Rational>(coeffs_.begin() + k, coeffs_.end()));
    }

    // Multiplies by z^k; the known order grows by k.
    RationalSeries shift_up(std::size_t k) const
    {
        std::vector<Rational> v(k);
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return RationalSeries(std::move(v));
    }

    friend bool operator==(const RationalSeries& a, const RationalSeries& b)
    {
        return a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += " + ";
            }
            out += "(" + coeffs_[i].get_str() + ")";
            if (i > 0) {
                out += "*z^" + std::to_string(i);
            }
        }
        if (out.empty()) {
            out = "0";
        }
        return out + " + O(z^" + std::to_string(order() + 1) + ")";
    }

private:
    std::vector<Rational> coeffs_;
};

// g_n of f'/f stored with the index-1 convention described at the top.
inline const Rational& g_coefficient(const RationalSeries& log_derivative, std::size_t n)
{
    if (n == 0) {
        throw RangeError("g coefficients are indexed from 1");
    }
    return log_derivative[n - 1];
}

inline RationalSeries add(const RationalSeries& a, const RationalSeries& b)
{
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<Rational> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        v[i] = a[i] + b[i];
    }
    return RationalSeries(std::move(v));
}

inline RationalSeries scale(const RationalSeries& a, const Rational& c)
{
    std::vector<Rational> v(a.coeffs());
    for (auto& x : v) {
        x *= c;
    }
    return RationalSeries(std::move(v));
}

inline RationalSeries negate(const RationalSeries& a) { return scale(a, -1); }

inline RationalSeries sub(const RationalSeries& a, const RationalSeries& b)
{
    return add(a, negate(b));
}

inline RationalSeries mul(const RationalSeries& a, const RationalSeries& b)
{
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<Rational> v(n + 1);
    Rational t;
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (b[j] == 0) {
                continue;
            }
            t = a[i] * b[j];
            v[i + j] += t;
        }
    }
    return RationalSeries(std::move(v));
}

// Multiplicative inverse of a series with nonzero constant term.
inline RationalSeries inverse(const RationalSeries& a)
{
    if (a[0] == 0) {
        throw ZeroDivisor("inverse of a series with zero constant term");
    }
    const std::size_t n = a.order();
    std::vector<Rational> v(n + 1);
    const Rational inv0 = 1 / a[0];
    v[0] = inv0;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational s = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (a[j] != 0) {
                s += a[j] * v[k - j];
            }
        }
        v[k] = -s * inv0;
    }
    return RationalSeries(std::move(v));
}

// Valuation-aware quotient: z^v is cancelled from both operands before the
// unit part of the divisor is inverted, so the known order drops by v.
inline RationalSeries div(const RationalSeries& a, const RationalSeries& b)
{
    const auto vb = b.valuation();
    if (!vb) {
        throw ZeroDivisor("division by a series that vanishes to order " +
                          std::to_string(b.order()));
    }
    if (*vb > a.order()) {
        throw ValuationError("dividend order " + std::to_string(a.order()) +
                             " is below the divisor valuation " + std::to_string(*vb));
    }
    const auto va = a.valuation();
    if (va && *va < *vb) {
        throw ValuationError("dividend valuation " + std::to_string(*va) +
                             " is below divisor valuation " + std::to_string(*vb));
    }
    const RationalSeries num = a.shift_down(*vb);
    const RationalSeries den = b.shift_down(*vb);
    return mul(num, inverse(den.truncate(std::min(num.order(), den.order()))));
}

// Known to one order less than the input.
inline RationalSeries derivative(const RationalSeries& a)
{
    if (a.order() == 0) {
        throw DomainError("the derivative of an order-0 series is undetermined");
    }
    std::vector<Rational> v(a.order());
    for (std::size_t i = 1; i <= a.order(); ++i) {
        v[i - 1] = a[i] * static_cast<unsigned long>(i);
    }
    return RationalSeries(std::move(v));
}

// Antiderivative with zero constant term; known to one order more.
inline RationalSeries integrate(const RationalSeries& a)
{
    std::vector<Rational> v(a.order() + 2);
    for (std::size_t i = 0; i <= a.order(); ++i) {
        v[i + 1] = a[i] / static_cast<unsigned long>(i + 1);
    }
    return RationalSeries(std::move(v));
}

// Formal logarithm, principal branch: requires a_0 = 1.
inline RationalSeries log(const RationalSeries& a)
{
    if (a[0] != 1) {
        throw DomainError("log requires constant term 1, got " + a[0].get_str());
    }
    if (a.order() == 0) {
        return RationalSeries::zero(0);
    }
    return integrate(div(derivative(a), a));
}

// Formal exponential via y' = a' y: requires a_0 = 0.
inline RationalSeries exp(const RationalSeries& a)
{
    if (a[0] != 0) {
        throw DomainError("exp requires constant term 0, got " + a[0].get_str());
    }
    const std::size_t n = a.order();
    std::vector<Rational> y(n + 1);
    y[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational s = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (a[j] != 0) {
                s += a[j] * y[k - j] * static_cast<unsigned long>(j);
            }
        }
        y[k] = s / static_cast<unsigned long>(k);
    }
    return RationalSeries(std::move(y));
}

namespace detail {

inline RationalSeries pow_unit_integer(const RationalSeries& u, long e)
{
    RationalSeries base = e < 0 ? inverse(u) : u;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    RationalSeries result = RationalSeries::constant(1, u.order());
    while (k > 0) {
        if (k & 1UL) {
            result = mul(result, base);
        }
        k >>= 1;
        if (k > 0) {
            base = mul(base, base);
        }
    }
    return result;
}

} // namespace detail

// a^r. For a_0 = 1 this is exp(r log a). More generally a = c z^v u with
// u_0 = 1 is accepted when v*r is a nonnegative integer and c^r is rational.
inline RationalSeries pow(const RationalSeries& a, const Rational& r)
{
    if (r == 0) {
        return RationalSeries::constant(1, a.order());
    }
    const auto v = a.valuation();
    if (!v) {
        if (r > 0 && is_integer(r)) {
            return RationalSeries::zero(a.order());
        }
        throw DomainError("pow of a series vanishing to its order with exponent " + r.get_str());
    }
    const Rational shift_q = r * static_cast<unsigned long>(*v);
    if (!is_integer(shift_q) || shift_q < 0) {
        throw DomainError("pow: z^" + std::to_string(*v) + " raised to " + r.get_str() +
                          " is not a power series");
    }
    const Rational c = a[*v];
    const auto c_pow = exact_rational_power(c, r);
    if (!c_pow) {
        throw DomainError("pow: constant factor " + c.get_str() + "^" + r.get_str() +
                          " is not rational");
    }
    const RationalSeries u = scale(a.shift_down(*v), 1 / c);
    RationalSeries ur;
    if (is_integer(r) && abs(r) <= 64) {
        ur = detail::pow_unit_integer(u, r.get_num().get_si());
    } else {
        ur = exp(scale(log(u), r));
    }
    return scale(ur, *c_pow).shift_up(shift_q.get_num().get_ui());
}

// Coefficients g_n of f'/f from the Taylor coefficients b_n of f (b_0 = 1),
// through n b_n = g_n + sum_{k=1}^{n-1} b_k g_{n-k}. The result has order
// N-1 and holds g_1..g_N.
inline RationalSeries g_from_b(const RationalSeries& b)
{
    if (b[0] != 1) {
        throw DomainError("g_from_b requires b_0 = 1, got " + b[0].get_str());
    }
    const std::size_t n_max = b.order();
    if (n_max == 0) {
        throw DomainError("g_from_b needs at least b_1");
    }
    std::vector<Rational> g(n_max + 1); // g[n] = g_n, g[0] unused
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational s = b[n] * static_cast<unsigned long>(n);
        for (std::size_t k = 1; k < n; ++k) {
            if (b[k] != 0 && g[n - k] != 0) {
                s -= b[k] * g[n - k];
            }
        }
        g[n] = s;
    }
    return RationalSeries(std::vector<Rational>(g.begin() + 1, g.end()));
}

// Inverse of g_from_b: b_0 = 1 and b_n = (g_n + sum b_k g_{n-k}) / n.
inline RationalSeries b_from_g(const RationalSeries& g)
{
    const std::size_t n_max = g.order() + 1;
    std::vector<Rational> b(n_max + 1);
    b[0] = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational s = g_coefficient(g, n);
        for (std::size_t k = 1; k < n; ++k) {
            if (b[k] != 0) {
                s += b[k] * g_coefficient(g, n - k);
            }
        }
        b[n] = s / static_cast<unsigned long>(n);
    }
    return RationalSeries(std::move(b));
}

} // namespace eulerprod
