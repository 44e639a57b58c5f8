// Exponents of e^{-z} = prod (1 - z^n)^{mu(n)/n} and of 1 + z with
// nonnegative exponents.

#include <iostream>

#include "eulerprod/eulerprod.hpp"

int main()
{
    using namespace eulerprod;

    const RationalSeries b = taylor(parse("exp(-z)"), 12);
    const ExponentSequence alpha = exponents_moebius(g_from_b(b), 12);
    std::cout << "exp(-z):\n";
    for (std::size_t n = 1; n <= alpha.order(); ++n) {
        std::cout << "  (1 - z^" << n << ")^(" << alpha[n].get_str() << ")\n";
    }

    const RationalSeries one_plus_z = taylor(parse("1+z"), 8);
    const ExponentSequence adaptive = rewrite_adaptive(exponents_moebius(g_from_b(one_plus_z), 8));
    std::cout << "1 + z with nonnegative exponents:\n";
    for (std::size_t n = 1; n <= adaptive.order(); ++n) {
        if (adaptive[n] != 0) {
            std::cout << "  (1 " << (adaptive.signs[n] > 0 ? "+" : "-") << " z^" << n << ")^(" << adaptive[n].get_str()
                      << ")\n";
        }
    }
}
