#pragma once

// Integer number-theory kernel.
//
// Arithmetic sequences here are 1-indexed: a std::vector<T> of size N+1
// holds a_1..a_N at indices 1..N and index 0 is ignored.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <string>
#include <type_traits>
#include <vector>

#include "eulerprod/errors.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

class PrimeTable {
public:
    // Sieve of Eratosthenes over odd numbers.
    explicit PrimeTable(std::uint64_t limit) : limit_(limit)
    {
        if (limit < 2) {
            throw DomainError("prime table limit must be at least 2");
        }
        primes_.push_back(2);
        const std::uint64_t half = (limit - 1) / 2; // odd numbers 3, 5, ..., <= limit
        std::vector<bool> composite(half + 1, false);
        for (std::uint64_t i = 1; i <= half; ++i) {
            if (composite[i]) {
                continue;
            }
            const std::uint64_t p = 2 * i + 1;
            primes_.push_back(p);
            for (std::uint64_t j = p * p; j <= limit; j += 2 * p) {
                composite[(j - 1) / 2] = true;
            }
        }
    }

    // Smallest table holding at least `count` primes.
    static PrimeTable with_count(std::size_t count)
    {
        std::uint64_t limit = 32;
        while (true) {
            PrimeTable t(limit);
            if (t.size() >= count) {
                return t;
            }
            limit *= 2;
        }
    }

    std::uint64_t limit() const noexcept { return limit_; }
    std::size_t size() const noexcept { return primes_.size(); }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

    // p_k with p_1 = 2.
    std::uint64_t nth(std::size_t k) const
    {
        if (k == 0 || k > primes_.size()) {
            throw RangeError("prime index " + std::to_string(k) + " outside table of " +
                             std::to_string(primes_.size()) + " primes");
        }
        return primes_[k - 1];
    }

    bool contains(std::uint64_t n) const
    {
        if (n > limit_) {
            throw RangeError("query beyond prime table limit");
        }
        return std::binary_search(primes_.begin(), primes_.end(), n);
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

inline PrimeTable sieve(std::uint64_t limit) { return PrimeTable(limit); }

inline std::uint64_t nth_prime(const PrimeTable& table, std::size_t k) { return table.nth(k); }

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
};

// Trial division; the integers in play are small.
inline std::vector<PrimePower> factorize(std::uint64_t n)
{
    if (n < 1) {
        throw DomainError("factorize requires n >= 1");
    }
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) {
            continue;
        }
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) {
        out.push_back({n, 1});
    }
    return out;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    const auto f = factorize(n);
    return f.size() == 1 && f[0].exponent == 1;
}

inline int moebius(std::int64_t n)
{
    if (n < 1) {
        throw DomainError("moebius requires n >= 1, got " + std::to_string(n));
    }
    int mu = 1;
    for (const auto& pp : factorize(static_cast<std::uint64_t>(n))) {
        if (pp.exponent > 1) {
            return 0;
        }
        mu = -mu;
    }
    return mu;
}

inline std::uint64_t euler_phi(std::int64_t n)
{
    if (n < 1) {
        throw DomainError("euler_phi requires n >= 1, got " + std::to_string(n));
    }
    std::uint64_t phi = static_cast<std::uint64_t>(n);
    for (const auto& pp : factorize(static_cast<std::uint64_t>(n))) {
        phi = phi / pp.prime * (pp.prime - 1);
    }
    return phi;
}

// Ascending list of positive divisors.
inline std::vector<std::uint64_t> divisors(std::int64_t n)
{
    if (n < 1) {
        throw DomainError("divisors requires n >= 1, got " + std::to_string(n));
    }
    const auto un = static_cast<std::uint64_t>(n);
    std::vector<std::uint64_t> small;
    std::vector<std::uint64_t> large;
    for (std::uint64_t d = 1; d * d <= un; ++d) {
        if (un % d == 0) {
            small.push_back(d);
            if (d * d != un) {
                large.push_back(un / d);
            }
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// (a*b)_n = sum_{d|n} a_d b_{n/d} for n = 1..N.
template <typename T>
std::vector<T> dirichlet_convolve(const std::vector<T>& a, const std::vector<T>& b, std::size_t n_max)
{
    if (a.size() <= n_max || b.size() <= n_max) {
        throw RangeError("dirichlet_convolve: sequences shorter than N");
    }
    std::vector<T> c(n_max + 1, T(0));
    for (std::size_t d = 1; d <= n_max; ++d) {
        if (a[d] == 0) {
            continue;
        }
        for (std::size_t k = 1; d * k <= n_max; ++k) {
            c[d * k] += a[d] * b[k];
        }
    }
    return c;
}

// Inverse under Dirichlet convolution; requires a_1 invertible in T.
template <typename T>
std::vector<T> dirichlet_inverse(const std::vector<T>& a, std::size_t n_max)
{
    if (a.size() <= n_max) {
        throw RangeError("dirichlet_inverse: sequence shorter than N");
    }
    if (a[1] == 0) {
        throw DomainError("dirichlet_inverse requires a_1 != 0");
    }
    std::vector<T> inv(n_max + 1, T(0));
    // Accumulate sum_{d|n, d>1} a_d inv_{n/d} into acc[n] as inv entries become known.
    std::vector<T> acc(n_max + 1, T(0));
    for (std::size_t n = 1; n <= n_max; ++n) {
        const T target = (n == 1) ? T(1) : T(0);
        T value = target - acc[n];
        if constexpr (std::is_same_v<T, BigInt>) {
            if (value % a[1] != 0) {
                throw DomainError("dirichlet_inverse: a_1 is not a unit over the integers");
            }
        }
        inv[n] = value / a[1];
        for (std::size_t d = 2; d * n <= n_max; ++d) {
            if (a[d] != 0) {
                acc[d * n] += a[d] * inv[n];
            }
        }
    }
    return inv;
}

// E_1 = 1, E_n = 0: the identity for Dirichlet convolution.
template <typename T = BigInt>
std::vector<T> dirichlet_unit(std::size_t n_max)
{
    std::vector<T> e(n_max + 1, T(0));
    if (n_max >= 1) {
        e[1] = 1;
    }
    return e;
}

// H_1 = 1, H_n = sum_{d|n, d<n} H_d. Each value is checked against
// 0 < H_n <= n^2 while the table is built.
class HSequence {
public:
    explicit HSequence(std::size_t n_max) : values_(n_max + 1, BigInt(0))
    {
        if (n_max < 1) {
            throw DomainError("h_sequence requires N >= 1");
        }
        values_[1] = 1;
        // Push each finished H_d forward to its proper multiples.
        for (std::size_t d = 1; d <= n_max; ++d) {
            const BigInt bound = BigInt(static_cast<unsigned long>(d)) * static_cast<unsigned long>(d);
            if (values_[d] <= 0 || values_[d] > bound) {
                throw InvariantError("H_" + std::to_string(d) + " = " + values_[d].get_str() +
                                     " violates 0 < H_n <= n^2");
            }
            for (std::size_t k = 2 * d; k <= n_max; k += d) {
                values_[k] += values_[d];
            }
        }
    }

    std::size_t size() const noexcept { return values_.size() - 1; }

    const BigInt& operator[](std::size_t n) const
    {
        if (n == 0 || n >= values_.size()) {
            throw RangeError("H index out of range");
        }
        return values_[n];
    }

    // 1-indexed sequence view, index 0 unused.
    const std::vector<BigInt>& values() const noexcept { return values_; }

private:
    std::vector<BigInt> values_;
};

inline HSequence h_sequence(std::size_t n_max) { return HSequence(n_max); }

// Bernoulli numbers with B_1 = -1/2, from sum_{k=0}^{n} C(n+1,k) B_k = 0.
// Values are memoized in a process-wide cache guarded by a mutex.
inline Rational bernoulli(std::size_t n)
{
    static std::mutex mutex;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mutex);
    while (cache.size() <= n) {
        const std::size_t m = cache.size();
        if (m > 1 && m % 2 == 1) {
            cache.emplace_back(0);
            continue;
        }
        BigInt binom = 1; // C(m+1, k), starting at k = 0
        Rational s = 0;
        for (std::size_t k = 0; k < m; ++k) {
            if (cache[k] != 0) {
                s += cache[k] * binom;
            }
            binom = binom * static_cast<unsigned long>(m + 1 - k) / static_cast<unsigned long>(k + 1);
        }
        cache.push_back(-s / static_cast<unsigned long>(m + 1));
    }
    return cache[n];
}

} // namespace eulerprod
