#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "eulerprod/errors.hpp"

namespace eulerprod {

// Arbitrary-size integers and exact rationals. mpq_class results of
// arithmetic are always in lowest terms with a positive denominator;
// values built from a numerator/denominator pair go through make_rational.
using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den = 1)
{
    if (den == 0) {
        throw DivideByZero("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Parses "p" or "p/q" with an optional leading sign.
inline Rational parse_rational(const std::string& text)
{
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) {
        throw DomainError("not a rational number: '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw DivideByZero("rational with zero denominator: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

// q^e for an integer exponent (negative exponents invert q).
inline Rational pow_int(const Rational& q, long e)
{
    if (e < 0) {
        if (q == 0) {
            throw DivideByZero("zero raised to a negative power");
        }
        Rational inv = 1 / q;
        return pow_int(inv, -e);
    }
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
    return make_rational(num, den);
}

// Exact q^(p/r) when it is rational, otherwise nullopt.
inline std::optional<Rational> exact_rational_power(const Rational& q, const Rational& exponent)
{
    if (q == 0) {
        return exponent > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
    }
    if (q == 1) {
        return Rational(1);
    }
    if (q == -1) {
        // (-1)^(p/r) is real only for odd r.
        if (mpz_even_p(exponent.get_den_mpz_t())) {
            return std::nullopt;
        }
        return Rational(mpz_odd_p(exponent.get_num_mpz_t()) ? -1 : 1);
    }
    if (!exponent.get_den().fits_ulong_p() || !exponent.get_num().fits_slong_p()) {
        return std::nullopt;
    }
    const unsigned long root = exponent.get_den().get_ui();
    const long power = exponent.get_num().get_si();
    if (root == 1) {
        return pow_int(q, power);
    }
    if (q < 0 && root % 2 == 0) {
        return std::nullopt;
    }
    BigInt num_root;
    BigInt den_root;
    BigInt num_abs = abs(BigInt(q.get_num()));
    if (mpz_root(num_root.get_mpz_t(), num_abs.get_mpz_t(), root) == 0) {
        return std::nullopt;
    }
    if (mpz_root(den_root.get_mpz_t(), q.get_den_mpz_t(), root) == 0) {
        return std::nullopt;
    }
    if (q < 0) {
        num_root = -num_root;
    }
    return pow_int(make_rational(num_root, den_root), power);
}

} // namespace eulerprod
