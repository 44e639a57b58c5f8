#pragma once

// Power sums, Newton's identities, the Girard-Waring formulas and the trace
// congruences for integer matrices
//
//     sum_{d|n} q_d mu(n/d) = 0 (mod n),    tr A^{p^k} = tr A^{p^{k-1}} (mod p^k).
//
// Coefficient lists b and power sums q use the 1-indexed convention of
// arith.hpp; b[0] = 1 is the constant term of f(z) = prod (1 - x_i z).

#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "eulerprod/arith.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

class IntMatrix {
public:
    explicit IntMatrix(std::size_t k) : k_(k), entries_(k * k, BigInt(0))
    {
        if (k == 0) {
            throw DomainError("matrix dimension must be positive");
        }
    }

    IntMatrix(std::size_t k, std::vector<BigInt> entries) : k_(k), entries_(std::move(entries))
    {
        if (k == 0 || entries_.size() != k * k) {
            throw DomainError("expected " + std::to_string(k * k) + " entries for a " + std::to_string(k) +
                              "x" + std::to_string(k) + " matrix");
        }
    }

    static IntMatrix identity(std::size_t k)
    {
        IntMatrix m(k);
        for (std::size_t i = 0; i < k; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t dim() const noexcept { return k_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return entries_[i * k_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }

    BigInt trace() const
    {
        BigInt t = 0;
        for (std::size_t i = 0; i < k_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.k_ != b.k_) {
            throw DomainError("matrix dimension mismatch");
        }
        IntMatrix c(a.k_);
        for (std::size_t i = 0; i < a.k_; ++i) {
            for (std::size_t l = 0; l < a.k_; ++l) {
                if (a(i, l) == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < a.k_; ++j) {
                    c(i, j) += a(i, l) * b(l, j);
                }
            }
        }
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.k_ == b.k_ && a.entries_ == b.entries_;
    }

private:
    std::size_t k_;
    std::vector<BigInt> entries_;
};

// Text format: the dimension k, then k rows of k signed decimal integers,
// all whitespace separated.
inline IntMatrix read_matrix(std::istream& in)
{
    long long k = 0;
    if (!(in >> k) || k <= 0) {
        throw DomainError("matrix file must start with a positive dimension");
    }
    std::vector<BigInt> entries;
    entries.reserve(static_cast<std::size_t>(k * k));
    std::string token;
    for (long long i = 0; i < k * k; ++i) {
        if (!(in >> token)) {
            throw DomainError("matrix file ended after " + std::to_string(i) + " of " + std::to_string(k * k) +
                              " entries");
        }
        BigInt v;
        const std::string digits = (token[0] == '+') ? token.substr(1) : token;
        if (digits.empty() || v.set_str(digits, 10) != 0) {
            throw DomainError("bad matrix entry '" + token + "'");
        }
        entries.push_back(v);
    }
    if (in >> token) {
        throw DomainError("unexpected trailing token '" + token + "' in matrix file");
    }
    return IntMatrix(static_cast<std::size_t>(k), std::move(entries));
}

inline IntMatrix matrix_power(const IntMatrix& a, const BigInt& n)
{
    if (n < 0) {
        throw DomainError("negative matrix power");
    }
    IntMatrix result = IntMatrix::identity(a.dim());
    IntMatrix base = a;
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(n.get_mpz_t(), i)) {
            result = result * base;
        }
        if (i + 1 < bits) {
            base = base * base;
        }
    }
    return result;
}

// tr A^n by binary powering, n >= 1.
inline BigInt trace_power(const IntMatrix& a, const BigInt& n)
{
    if (n < 1) {
        throw DomainError("trace_power requires n >= 1");
    }
    return matrix_power(a, n).trace();
}

inline BigInt trace_power(const IntMatrix& a, std::uint64_t n) { return trace_power(a, BigInt(static_cast<unsigned long>(n))); }

// q_1..q_N (index 0 unused).
struct PowerSums {
    std::vector<Rational> q;

    std::size_t size() const noexcept { return q.empty() ? 0 : q.size() - 1; }

    const Rational& operator[](std::size_t n) const
    {
        if (n == 0 || n >= q.size()) {
            throw RangeError("power sum index " + std::to_string(n) + " out of range");
        }
        return q[n];
    }

    bool integral() const
    {
        for (std::size_t n = 1; n < q.size(); ++n) {
            if (!is_integer(q[n])) {
                return false;
            }
        }
        return true;
    }
};

namespace detail {

inline const Rational& coefficient_or_zero(const std::vector<Rational>& b, std::size_t i)
{
    static const Rational zero = 0;
    return i < b.size() ? b[i] : zero;
}

} // namespace detail

// Newton: q_n + b_1 q_{n-1} + ... + b_{n-1} q_1 + n b_n = 0, with b zero-padded.
inline PowerSums newton_q_from_b(const std::vector<Rational>& b, std::size_t n_max)
{
    std::vector<Rational> q(n_max + 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational s = detail::coefficient_or_zero(b, n) * static_cast<unsigned long>(n);
        for (std::size_t i = 1; i < n; ++i) {
            const Rational& bi = detail::coefficient_or_zero(b, i);
            if (bi != 0) {
                s += bi * q[n - i];
            }
        }
        q[n] = -s;
    }
    return PowerSums{std::move(q)};
}

// Inverse recursion: b_0 = 1 and b_n = -(q_n + b_1 q_{n-1} + ... + b_{n-1} q_1) / n.
inline std::vector<Rational> newton_b_from_q(const PowerSums& q)
{
    const std::size_t n_max = q.size();
    std::vector<Rational> b(n_max + 1);
    b[0] = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational s = q[n];
        for (std::size_t i = 1; i < n; ++i) {
            if (b[i] != 0) {
                s += b[i] * q[n - i];
            }
        }
        b[n] = -s / static_cast<unsigned long>(n);
    }
    return b;
}

namespace detail {

inline BigInt factorial(std::size_t n)
{
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// Visits every multiplicity vector k_1..k_n with sum i k_i = n.
template <typename Visit>
void for_each_partition(std::size_t n, Visit&& visit)
{
    std::vector<std::size_t> k(n + 1, 0);
    auto rec = [&](auto&& self, std::size_t part, std::size_t remaining) -> void {
        if (remaining == 0) {
            visit(static_cast<const std::vector<std::size_t>&>(k));
            return;
        }
        if (part == 0) {
            return;
        }
        for (std::size_t m = 0; m * part <= remaining; ++m) {
            k[part] = m;
            self(self, part - 1, remaining - m * part);
        }
        k[part] = 0;
    };
    rec(rec, n, n);
}

} // namespace detail

// q_n = n sum (-1)^K (K-1)! / (k_1! ... k_n!) b_1^{k_1} ... b_n^{k_n},
// K = k_1 + ... + k_n, over k_1 + 2 k_2 + ... + n k_n = n.
inline Rational girard_waring_q(const std::vector<Rational>& b, std::size_t n)
{
    if (n == 0) {
        throw DomainError("girard_waring_q requires n >= 1");
    }
    Rational total = 0;
    detail::for_each_partition(n, [&](const std::vector<std::size_t>& k) {
        std::size_t parts = 0;
        BigInt denom = 1;
        Rational monomial = 1;
        for (std::size_t i = 1; i <= n; ++i) {
            if (k[i] == 0) {
                continue;
            }
            parts += k[i];
            denom *= detail::factorial(k[i]);
            monomial *= pow_int(detail::coefficient_or_zero(b, i), static_cast<long>(k[i]));
        }
        if (monomial == 0) {
            return;
        }
        Rational term = monomial * make_rational(detail::factorial(parts - 1), denom);
        total += (parts % 2 == 0) ? term : Rational(-term);
    });
    return total * static_cast<unsigned long>(n);
}

// b_n = sum (-1)^K / (k_1! ... k_n!) (q_1/1)^{k_1} ... (q_n/n)^{k_n}.
inline Rational girard_waring_b(const PowerSums& q, std::size_t n)
{
    if (n == 0) {
        return 1;
    }
    if (n > q.size()) {
        throw RangeError("girard_waring_b: n exceeds available power sums");
    }
    Rational total = 0;
    detail::for_each_partition(n, [&](const std::vector<std::size_t>& k) {
        std::size_t parts = 0;
        Rational term = 1;
        for (std::size_t i = 1; i <= n; ++i) {
            if (k[i] == 0) {
                continue;
            }
            parts += k[i];
            term *= pow_int(q[i] / static_cast<unsigned long>(i), static_cast<long>(k[i]));
            term /= detail::factorial(k[i]);
        }
        total += (parts % 2 == 0) ? term : Rational(-term);
    });
    return total;
}

// S = sum_{d|n} q_d mu(n/d); S = 0 (mod n) for power sums of algebraic integers.
inline BigInt arnold_divisor_sum(const PowerSums& q, std::size_t n)
{
    if (n == 0 || n > q.size()) {
        throw RangeError("arnold_divisor_sum: n out of range");
    }
    BigInt s = 0;
    for (std::uint64_t d : divisors(static_cast<std::int64_t>(n))) {
        if (!is_integer(q[d])) {
            throw DomainError("arnold_divisor_sum requires integral power sums");
        }
        s += q[d].get_num() * moebius(static_cast<std::int64_t>(n / d));
    }
    return s;
}

// Coefficients of det(I - zA) = 1 + b_1 z + ... + b_k z^k by the
// Faddeev-LeVerrier recursion, exact over the integers.
inline std::vector<Rational> reciprocal_charpoly(const IntMatrix& a)
{
    const std::size_t k = a.dim();
    std::vector<Rational> b(k + 1);
    b[0] = 1;
    IntMatrix mk = IntMatrix::identity(k); // M_1 = I
    for (std::size_t j = 1; j <= k; ++j) {
        const IntMatrix am = a * mk;
        const BigInt tr = am.trace();
        if (tr % static_cast<unsigned long>(j) != 0) {
            throw InvariantError("Faddeev-LeVerrier trace not divisible by its index");
        }
        const BigInt cj = -tr / static_cast<unsigned long>(j);
        b[j] = Rational(cj);
        mk = am;
        for (std::size_t i = 0; i < k; ++i) {
            mk(i, i) += cj;
        }
    }
    return b;
}

// q_n = tr A^n for n = 1..N through Newton's identities on the characteristic polynomial.
inline PowerSums matrix_power_sums(const IntMatrix& a, std::size_t n_max)
{
    return newton_q_from_b(reciprocal_charpoly(a), n_max);
}

struct CongruenceCheck {
    unsigned m;
    BigInt lhs;     // tr A^{p^m}
    BigInt rhs;     // tr A^{p^{m-1}}
    BigInt modulus; // p^m
    bool pass;
};

struct CongruenceReport {
    std::uint64_t p;
    std::vector<CongruenceCheck> checks;

    bool all_pass() const
    {
        for (const auto& c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }
};

// Checks tr A^{p^m} = tr A^{p^{m-1}} (mod p^m) for m = 1..kmax.
inline CongruenceReport verify_trace_congruence(const IntMatrix& a, std::uint64_t p, unsigned kmax)
{
    if (!is_prime(p)) {
        throw DomainError(std::to_string(p) + " is not prime");
    }
    if (kmax < 1) {
        throw DomainError("kmax must be at least 1");
    }
    CongruenceReport report{p, {}};
    BigInt previous_power = 1; // p^{m-1}
    IntMatrix previous = a;    // A^{p^{m-1}}
    BigInt previous_trace = a.trace();
    for (unsigned m = 1; m <= kmax; ++m) {
        const BigInt power = previous_power * static_cast<unsigned long>(p);
        IntMatrix current = matrix_power(previous, BigInt(static_cast<unsigned long>(p)));
        BigInt lhs = current.trace();
        const bool pass = mpz_divisible_p(BigInt(lhs - previous_trace).get_mpz_t(), power.get_mpz_t()) != 0;
        report.checks.push_back(CongruenceCheck{m, lhs, previous_trace, power, pass});
        previous_power = power;
        previous = std::move(current);
        previous_trace = std::move(lhs);
    }
    return report;
}

} // namespace eulerprod
