#pragma once

// Riemann zeta at integers n >= 2 by Euler-Maclaurin summation, and the
// partial zeta functions
//
//     zeta_m(n) = prod_{k>=m} (1 - p_k^-n)^-1 = zeta(n) prod_{k<m} (1 - p_k^-n).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eulerprod/arith.hpp"
#include "eulerprod/bigreal.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

namespace detail {

inline long ceil_log2(std::size_t x)
{
    long b = 0;
    while ((std::size_t{1} << b) < x) {
        ++b;
    }
    return b;
}

// Euler-Maclaurin with cutoff K at working precision `work`:
//   sum_{k<K} k^-n + K^{1-n}/(n-1) + K^-n/2
//     + sum_{j=1}^{J} B_2j/(2j)! n(n+1)...(n+2j-2) K^{-n-2j+1}.
// Stops once twice the next correction is below 2^-target_bits. Returns
// false if the corrections start growing first (K too small).
inline bool euler_maclaurin_zeta(unsigned long n, unsigned long cutoff, Precision work, long target_bits,
                                 BigReal& out)
{
    BigReal sum(work);
    for (unsigned long k = 1; k < cutoff; ++k) {
        sum += pow(BigReal(static_cast<long>(k), work), -static_cast<long>(n));
    }
    const BigReal big_k(static_cast<long>(cutoff), work);
    const BigReal k_pow = pow(big_k, -static_cast<long>(n)); // K^-n
    sum += k_pow * big_k / BigReal(static_cast<long>(n - 1), work);
    sum += k_pow / BigReal(2, work);

    const BigReal tolerance = pow(BigReal(2, work), -target_bits);
    const BigReal inv_k2 = BigReal(1, work) / (big_k * big_k);
    // rising = n (n+1) ... (n+2j-2) / (2j)!, kpow = K^{-n-2j+1}
    Rational rising = Rational(static_cast<unsigned long>(n), 2); // j = 1: n / 2!
    BigReal kpow = k_pow / big_k;
    BigReal previous_magnitude(work);
    bool first = true;
    for (std::size_t j = 1;; ++j) {
        const BigReal term = BigReal(bernoulli(2 * j) * rising, work) * kpow;
        const BigReal magnitude = term.abs();
        if (magnitude * BigReal(2, work) < tolerance) {
            out = sum;
            return true;
        }
        if (!first && magnitude >= previous_magnitude) {
            return false;
        }
        sum += term;
        previous_magnitude = magnitude;
        first = false;
        // advance rising factor and K power to j+1
        const unsigned long a = n + 2 * j - 1;
        rising *= Rational(static_cast<unsigned long>(a)) * static_cast<unsigned long>(a + 1);
        rising /= static_cast<unsigned long>((2 * j + 1) * (2 * j + 2));
        kpow *= inv_k2;
    }
}

} // namespace detail

// zeta(n) to within 2^(4-P) relative (in practice about 2^-P).
inline BigReal zeta_int(long n, Precision precision)
{
    if (n < 2) {
        throw DomainError("zeta_int requires n >= 2, got " + std::to_string(n));
    }
    const auto un = static_cast<unsigned long>(n);
    unsigned long cutoff = std::max<unsigned long>(10, static_cast<unsigned long>(precision.bits) / (3 * un));
    while (true) {
        const Precision work{precision.bits + 16 + detail::ceil_log2(cutoff + 64)};
        BigReal value(work);
        if (detail::euler_maclaurin_zeta(un, cutoff, work, precision.bits + 4, value)) {
            return value.with_precision(precision);
        }
        cutoff *= 2;
    }
}

// zeta(n) * prod_{k=1}^{m-1} (1 - p_k^-n).
inline BigReal partial_zeta(std::size_t m, long n, Precision precision, const PrimeTable& primes)
{
    if (m < 1) {
        throw DomainError("partial_zeta requires m >= 1");
    }
    if (n < 2) {
        throw DomainError("partial_zeta requires n >= 2, got " + std::to_string(n));
    }
    const Precision work{precision.bits + 8 + detail::ceil_log2(m + 1)};
    BigReal value = zeta_int(n, work);
    const BigReal one(1, work);
    for (std::size_t k = 1; k < m; ++k) {
        const BigReal p(static_cast<long>(primes.nth(k)), work);
        value *= one - pow(p, -n);
    }
    return value.with_precision(precision);
}

// zeta_m(n) for n = 2..M at a common precision. Construction checks
//   1 < zeta_m(n) <= zeta(2)  and, for n >= 3,  zeta_m(n) - 1 <= p_m^{1-n}.
class ZetaTable {
public:
    ZetaTable(std::size_t m, std::size_t max_n, Precision precision)
        : m_(m), max_n_(max_n), precision_(precision)
    {
        if (max_n < 2) {
            throw DomainError("zeta table needs M >= 2");
        }
        if (m < 1) {
            throw DomainError("zeta table needs m >= 1");
        }
        const PrimeTable primes = PrimeTable::with_count(m);
        const BigReal p_m(static_cast<long>(primes.nth(m)), precision);
        const BigReal one(1, precision);
        // Relative slack for rounding when checking the tail bound.
        const BigReal slack = one + pow(BigReal(2, precision), -(precision.bits - 8));
        const BigReal zeta2 = zeta_int(2, precision);
        values_.reserve(max_n - 1);
        for (std::size_t n = 2; n <= max_n; ++n) {
            BigReal v = partial_zeta(m, static_cast<long>(n), precision, primes);
            if (v <= one || v > zeta2 * slack) {
                throw InvariantError("zeta_" + std::to_string(m) + "(" + std::to_string(n) +
                                     ") outside (1, zeta(2)]");
            }
            if (n >= 3 && v - one > pow(p_m, 1 - static_cast<long>(n)) * slack) {
                throw InvariantError("zeta_" + std::to_string(m) + "(" + std::to_string(n) +
                                     ") - 1 exceeds p_m^(1-n)");
            }
            values_.push_back(std::move(v));
        }
    }

    std::size_t m() const noexcept { return m_; }
    std::size_t max_n() const noexcept { return max_n_; }
    Precision precision() const noexcept { return precision_; }

    const BigReal& operator[](std::size_t n) const
    {
        if (n < 2 || n > max_n_) {
            throw RangeError("zeta table index " + std::to_string(n) + " outside 2.." + std::to_string(max_n_));
        }
        return values_[n - 2];
    }

private:
    std::size_t m_;
    std::size_t max_n_;
    Precision precision_;
    std::vector<BigReal> values_;
};

inline ZetaTable zeta_table(std::size_t m, std::size_t max_n, Precision precision)
{
    return ZetaTable(m, max_n, precision);
}

} // namespace eulerprod
