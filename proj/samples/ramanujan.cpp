// Ramanujan's constant A1 = pi^{-1/2} prod_p sqrt(p^2 - p) ln(p/(p-1)) to 100 digits,
// first with the built-in data and then with a hand-assembled spec.

#include <iostream>

#include "eulerprod/eulerprod.hpp"

int main()
{
    using namespace eulerprod;

    const CertifiedValue a1 = evaluate_constant(builtin("ramanujan-a1"), 100);
    std::cout << "A1 = " << a1.value.to_fixed(static_cast<int>(a1.decimal_digits_certified)) << "\n"
              << "     (" << a1.decimal_digits_certified << " certified digits, M = " << a1.plan.max_n << ")\n";

    // Same constant, tail started at p_10 = 29.
    ConstantSpec spec{"a1-m10", parse("(-ln(1-z)/z)*sqrt(1-z)"), parse("1/sqrt(pi)"), Rational(9, 10), Rational(18), 10};
    const CertifiedValue again = evaluate_constant(spec, 100);
    std::cout << "A1 = " << again.value.to_fixed(static_cast<int>(again.decimal_digits_certified)) << "\n"
              << "     (" << again.decimal_digits_certified << " certified digits, M = " << again.plan.max_n << ")\n";
}
