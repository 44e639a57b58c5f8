#pragma once

// Arbitrary-precision reals with an explicit binary precision.
//
// BigReal owns an MPFR value. Every operation rounds to nearest once, so
// its relative error is at most 2^-P where P is the result precision
// (max of operand precisions for binary operations). This is within the
// 2^(2-P) per-operation budget the rest of the library assumes.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>

#include "eulerprod/errors.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

struct Precision {
    long bits;

    // Bits needed to carry `digits` decimal digits.
    static Precision from_digits(long digits)
    {
        return Precision{static_cast<long>(std::ceil(static_cast<double>(digits) * 3.3219280948873623))};
    }

    friend bool operator==(Precision a, Precision b) { return a.bits == b.bits; }
};

class BigReal {
public:
    explicit BigReal(Precision p)
    {
        init(p);
        mpfr_set_zero(value_, 1);
    }

    BigReal(long v, Precision p)
    {
        init(p);
        mpfr_set_si(value_, v, MPFR_RNDN);
    }

    BigReal(const Rational& q, Precision p)
    {
        init(p);
        mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
    }

    BigReal(const BigInt& z, Precision p)
    {
        init(p);
        mpfr_set_z(value_, z.get_mpz_t(), MPFR_RNDN);
    }

    static BigReal from_string(std::string_view text, Precision p)
    {
        BigReal r(p);
        const std::string s(text);
        if (mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
            throw DomainError("not a decimal number: '" + s + "'");
        }
        return r;
    }

    static BigReal pi(Precision p)
    {
        BigReal r(p);
        mpfr_const_pi(r.value_, MPFR_RNDN);
        return r;
    }

    static BigReal e(Precision p)
    {
        BigReal one(1, p);
        BigReal r(p);
        mpfr_exp(r.value_, one.value_, MPFR_RNDN);
        return r;
    }

    BigReal(const BigReal& other)
    {
        init(other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }

    BigReal(BigReal&& other) noexcept
    {
        mpfr_init2(value_, MPFR_PREC_MIN);
        mpfr_swap(value_, other.value_);
    }

    BigReal& operator=(const BigReal& other)
    {
        if (this != &other) {
            mpfr_set_prec(value_, mpfr_get_prec(other.value_));
            mpfr_set(value_, other.value_, MPFR_RNDN);
        }
        return *this;
    }

    BigReal& operator=(BigReal&& other) noexcept
    {
        mpfr_swap(value_, other.value_);
        return *this;
    }

    ~BigReal() { mpfr_clear(value_); }

    Precision precision() const { return Precision{static_cast<long>(mpfr_get_prec(value_))}; }

    // Same value rounded to a new precision.
    BigReal with_precision(Precision p) const
    {
        BigReal r(p);
        mpfr_set(r.value_, value_, MPFR_RNDN);
        return r;
    }

    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    int sign() const { return mpfr_sgn(value_); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    // floor(log10|x|) + 1 style decimal exponent: x = 0.d1d2... * 10^exp.
    long decimal_exponent() const
    {
        mpfr_exp_t e = 0;
        char* s = mpfr_get_str(nullptr, &e, 10, 2, value_, MPFR_RNDN);
        mpfr_free_str(s);
        return static_cast<long>(e);
    }

    // Fixed-point rendering with `digits` significant digits, rounded to nearest.
    std::string to_fixed(int digits) const
    {
        if (digits < 1) {
            throw DomainError("need at least one significant digit");
        }
        if (is_zero()) {
            return "0." + std::string(static_cast<std::size_t>(digits), '0');
        }
        mpfr_exp_t e = 0;
        char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), value_, MPFR_RNDN);
        std::string mant(raw);
        mpfr_free_str(raw);
        std::string sign;
        if (!mant.empty() && mant[0] == '-') {
            sign = "-";
            mant.erase(0, 1);
        }
        std::string out;
        if (e <= 0) {
            out = "0." + std::string(static_cast<std::size_t>(-e), '0') + mant;
        } else if (static_cast<std::size_t>(e) >= mant.size()) {
            out = mant + std::string(static_cast<std::size_t>(e) - mant.size(), '0');
        } else {
            out = mant.substr(0, static_cast<std::size_t>(e)) + "." + mant.substr(static_cast<std::size_t>(e));
        }
        return sign + out;
    }

    std::string to_scientific(int digits) const
    {
        // mpfr_asprintf handles the formatting of the exponent.
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*RNe", digits - 1, value_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    BigReal operator-() const
    {
        BigReal r(precision());
        mpfr_neg(r.value_, value_, MPFR_RNDN);
        return r;
    }

    BigReal abs() const
    {
        BigReal r(precision());
        mpfr_abs(r.value_, value_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_add); }
    friend BigReal operator-(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_sub); }
    friend BigReal operator*(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_mul); }

    friend BigReal operator/(const BigReal& a, const BigReal& b)
    {
        if (b.is_zero()) {
            throw DivideByZero("BigReal division by zero");
        }
        return binary(a, b, mpfr_div);
    }

    BigReal& operator+=(const BigReal& b) { return *this = *this + b; }
    BigReal& operator-=(const BigReal& b) { return *this = *this - b; }
    BigReal& operator*=(const BigReal& b) { return *this = *this * b; }
    BigReal& operator/=(const BigReal& b) { return *this = *this / b; }

    friend int compare(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.value_, b.value_); }
    friend bool operator<(const BigReal& a, const BigReal& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return compare(a, b) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return compare(a, b) == 0; }

private:
    void init(Precision p)
    {
        if (p.bits < MPFR_PREC_MIN || p.bits > MPFR_PREC_MAX) {
            throw DomainError("unsupported precision " + std::to_string(p.bits) + " bits");
        }
        mpfr_init2(value_, static_cast<mpfr_prec_t>(p.bits));
    }

    template <typename Op>
    static BigReal binary(const BigReal& a, const BigReal& b, Op op)
    {
        BigReal r(Precision{std::max(a.precision().bits, b.precision().bits)});
        op(r.value_, a.value_, b.value_, MPFR_RNDN);
        return r;
    }

    mpfr_t value_;
};

inline BigReal sqrt(const BigReal& x)
{
    if (x.sign() < 0) {
        throw DomainError("sqrt of a negative number");
    }
    BigReal r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline BigReal ln(const BigReal& x)
{
    if (x.sign() <= 0) {
        throw DomainError("ln of a non-positive number");
    }
    BigReal r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline BigReal exp(const BigReal& x)
{
    BigReal r(x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

// x^n for an integer n, correctly rounded.
inline BigReal pow(const BigReal& x, long n)
{
    if (n < 0 && x.is_zero()) {
        throw DivideByZero("zero raised to a negative power");
    }
    BigReal r(x.precision());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

// x^(p/q). Integer exponents accept any x; otherwise x must be positive
// (or zero with a positive exponent). The result is the q-th root of x^p,
// two correctly rounded steps, so the relative error stays below 2^(2-P).
inline BigReal pow(const BigReal& x, const Rational& r)
{
    if (r == 0) {
        return BigReal(1, x.precision());
    }
    if (is_integer(r) && r.get_num().fits_slong_p()) {
        return pow(x, r.get_num().get_si());
    }
    if (x.sign() < 0) {
        throw DomainError("non-integer power of a negative number");
    }
    if (x.is_zero()) {
        if (r < 0) {
            throw DivideByZero("zero raised to a negative power");
        }
        return BigReal(x.precision());
    }
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_ulong_p()) {
        // exp(r ln x) for exponents too large for the root route.
        return exp(BigReal(r, x.precision()) * ln(x));
    }
    const Precision work{x.precision().bits + 8};
    const BigReal powered = pow(x.with_precision(work), r.get_num().get_si());
    BigReal root(work);
    mpfr_rootn_ui(root.get(), powered.get(), r.get_den().get_ui(), MPFR_RNDN);
    return root.with_precision(x.precision());
}

} // namespace eulerprod
