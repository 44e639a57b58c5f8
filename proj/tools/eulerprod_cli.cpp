// eulerprod command-line interface.
//
// Exit codes: 0 success, 1 a verified property failed, 2 input error,
// 3 evaluation plan infeasible.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "eulerprod/eulerprod.hpp"

namespace {

using nlohmann::json;
using namespace eulerprod;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input = 2;
constexpr int exit_plan = 3;

struct CommonOptions {
    bool json = false;
    bool timing = false;
};

// Value with `certified` significant digits followed by two more in brackets.
std::string marked_decimal(const BigReal& value, long certified)
{
    const std::string full = value.to_fixed(static_cast<int>(certified + 2));
    // Locate the position right after the certified-th significant digit.
    long seen = 0;
    bool leading = true;
    for (std::size_t i = 0; i < full.size(); ++i) {
        const char c = full[i];
        if (c < '0' || c > '9') {
            continue;
        }
        if (leading && c == '0') {
            continue;
        }
        leading = false;
        if (++seen == certified) {
            return full.substr(0, i + 1) + "[" + full.substr(i + 1) + "]";
        }
    }
    return full;
}

void emit(const CommonOptions& common, json record, double seconds)
{
    if (common.timing) {
        record["timing_seconds"] = seconds;
    }
    std::cout << record.dump(2) << "\n";
}

FunctionExpr parse_function_or_builtin(const std::string& function, const std::string& builtin_name)
{
    if (!builtin_name.empty()) {
        return builtin(builtin_name).f;
    }
    return parse(function);
}

int run_expand(const CommonOptions& common, const std::string& function, const std::string& builtin_name,
               long order, const std::string& signs)
{
    const auto start = std::chrono::steady_clock::now();
    if (order < 1) {
        std::cerr << "error: --order must be at least 1\n";
        return exit_input;
    }
    SignStrategy strategy;
    if (signs == "minus") {
        strategy = SignStrategy::all_minus;
    } else if (signs == "plus") {
        strategy = SignStrategy::all_plus;
    } else if (signs == "adaptive") {
        strategy = SignStrategy::adaptive;
    } else {
        std::cerr << "error: --signs must be minus, plus or adaptive\n";
        return exit_input;
    }
    const FunctionExpr f = parse_function_or_builtin(function, builtin_name);
    const auto n = static_cast<std::size_t>(order);
    RationalSeries b = taylor(f, n);
    if (b[0] == 0) {
        throw DomainError("f(0) = 0: no product decomposition");
    }
    const Rational f0 = b[0];
    b = scale(b, 1 / f0);
    const ExponentSequence alpha = expand_exponents(g_from_b(b), strategy, n);

    if (common.json) {
        json rows = json::array();
        for (std::size_t k = 1; k <= n; ++k) {
            rows.push_back({{"n", k}, {"eps", alpha.signs[k]}, {"alpha", alpha[k].get_str()}});
        }
        json record{{"command", "expand"},
                    {"inputs", {{"function", print(f)}, {"order", order}, {"signs", signs}}},
                    {"f0", f0.get_str()},
                    {"exponents", rows}};
        emit(common, record, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return exit_ok;
    }
    std::cout << "# f(z) = " << print(f) << "\n";
    std::cout << "# f(0) = " << f0.get_str() << "\n";
    std::cout << "n\teps\talpha\n";
    for (std::size_t k = 1; k <= n; ++k) {
        std::cout << k << "\t" << (alpha.signs[k] > 0 ? "+1" : "-1") << "\t" << alpha[k].get_str() << "\n";
    }
    return exit_ok;
}

int run_eval(const CommonOptions& common, const std::string& builtin_name, const std::string& function,
             const std::string& prefactor, const std::string& radius, const std::string& bound, long digits,
             std::optional<long> m, long guard)
{
    const auto start = std::chrono::steady_clock::now();
    if (digits < 1) {
        std::cerr << "error: --digits must be at least 1\n";
        return exit_input;
    }
    ConstantSpec spec = [&] {
        if (!builtin_name.empty()) {
            return builtin(builtin_name);
        }
        if (function.empty() || radius.empty() || bound.empty()) {
            throw DomainError("--function needs --R and --B (or use --builtin)");
        }
        return ConstantSpec{"custom", parse(function), parse(prefactor.empty() ? "1" : prefactor),
                            parse_rational(radius), parse_rational(bound), 7};
    }();
    EvaluationOptions options;
    if (m) {
        if (*m < 1) {
            std::cerr << "error: --m must be at least 1\n";
            return exit_input;
        }
        options.m = static_cast<std::size_t>(*m);
    }
    options.guard_digits = guard;

    CertifiedValue result = [&] {
        try {
            return evaluate_constant(spec, digits, options);
        } catch (const ValidationError& err) {
            throw DomainError(err.what());
        }
    }();
    const std::string value = result.value.to_fixed(static_cast<int>(result.decimal_digits_certified + 2));
    const auto& plan = result.plan;
    if (common.json) {
        json record{{"command", "eval"},
                    {"inputs",
                     {{"name", spec.name},
                      {"function", print(spec.f)},
                      {"prefactor", print(spec.prefactor)},
                      {"digits", digits}}},
                    {"value", value},
                    {"certified_digits", result.decimal_digits_certified},
                    {"relative_truncation_bound", result.relative_truncation_bound.to_scientific(6)},
                    {"rounding_budget", result.rounding_budget.to_scientific(6)},
                    {"plan",
                     {{"R", plan.radius.get_str()},
                      {"B", plan.bound.get_str()},
                      {"m", plan.m},
                      {"p_m", plan.p_m},
                      {"M", plan.max_n},
                      {"C", plan.truncation.to_scientific(6)},
                      {"working_precision_bits", plan.working_precision.bits}}}};
        emit(common, record, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return exit_ok;
    }
    std::cout << "constant          " << spec.name << "\n";
    std::cout << "value             " << marked_decimal(result.value, result.decimal_digits_certified) << "\n";
    std::cout << "certified_digits  " << result.decimal_digits_certified << "\n";
    std::cout << "plan              R=" << plan.radius.get_str() << " B=" << plan.bound.get_str()
              << " m=" << plan.m << " (p_m=" << plan.p_m << ") M=" << plan.max_n
              << " C=" << plan.truncation.to_scientific(4) << "\n";
    std::cout << "precision         " << plan.working_precision.bits << " bits\n";
    std::cout << "rounding_budget   " << result.rounding_budget.to_scientific(4) << "\n";
    if (common.timing) {
        std::cout << "time              "
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
    }
    return exit_ok;
}

int run_arnold(const CommonOptions& common, const std::string& path, long p, long kmax)
{
    const auto start = std::chrono::steady_clock::now();
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
        std::cerr << "error: --p " << p << " is not prime\n";
        return exit_input;
    }
    if (kmax < 1) {
        std::cerr << "error: --kmax must be at least 1\n";
        return exit_input;
    }
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open matrix file '" << path << "'\n";
        return exit_input;
    }
    const IntMatrix a = read_matrix(in);
    const CongruenceReport report =
        verify_trace_congruence(a, static_cast<std::uint64_t>(p), static_cast<unsigned>(kmax));
    if (common.json) {
        json rows = json::array();
        for (const auto& c : report.checks) {
            rows.push_back({{"m", c.m},
                            {"lhs", c.lhs.get_str()},
                            {"rhs", c.rhs.get_str()},
                            {"modulus", c.modulus.get_str()},
                            {"pass", c.pass}});
        }
        json record{{"command", "arnold"},
                    {"inputs", {{"matrix", path}, {"p", p}, {"kmax", kmax}, {"dimension", a.dim()}}},
                    {"checks", rows},
                    {"all_pass", report.all_pass()}};
        emit(common, record, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    } else {
        std::cout << "m\ttr A^(p^m) mod p^m\ttr A^(p^(m-1)) mod p^m\tmodulus\tresult\n";
        for (const auto& c : report.checks) {
            BigInt lr = c.lhs % c.modulus;
            BigInt rr = c.rhs % c.modulus;
            if (lr < 0) {
                lr += c.modulus;
            }
            if (rr < 0) {
                rr += c.modulus;
            }
            std::cout << c.m << "\t" << lr.get_str() << "\t" << rr.get_str() << "\t" << c.modulus.get_str() << "\t"
                      << (c.pass ? "pass" : "FAIL") << "\n";
        }
    }
    return report.all_pass() ? exit_ok : exit_violation;
}

int run_zeta(const CommonOptions& common, long m, long n, long digits)
{
    const auto start = std::chrono::steady_clock::now();
    if (n < 2) {
        std::cerr << "error: --n must be at least 2\n";
        return exit_input;
    }
    if (m < 1) {
        std::cerr << "error: --m must be at least 1\n";
        return exit_input;
    }
    if (digits < 1) {
        std::cerr << "error: --digits must be at least 1\n";
        return exit_input;
    }
    const Precision p = Precision::from_digits(digits + default_guard_digits);
    const PrimeTable primes = PrimeTable::with_count(static_cast<std::size_t>(m));
    const BigReal value = partial_zeta(static_cast<std::size_t>(m), n, p, primes);
    const std::string text = value.to_fixed(static_cast<int>(digits));
    if (common.json) {
        json record{{"command", "zeta"}, {"inputs", {{"m", m}, {"n", n}, {"digits", digits}}}, {"value", text}};
        emit(common, record, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    } else {
        std::cout << text << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified high-precision Euler products and product-expansion exponents"};
    app.set_config("--config", "", "key=value file with defaults (digits, guard)");
    app.require_subcommand(1);

    CommonOptions common;

    long default_digits = 50;
    long guard = default_guard_digits;
    app.add_option("--guard", guard, "Decimal guard digits for the working precision")->check(CLI::NonNegativeNumber);

    // expand
    auto* expand = app.add_subcommand("expand", "Exponents alpha_n of f(z) = f(0) prod (1 + eps_n z^n)^alpha_n");
    std::string ex_function;
    std::string ex_builtin;
    long ex_order = 10;
    std::string ex_signs = "minus";
    auto* ex_fn_opt = expand->add_option("--function", ex_function, "Expression in z");
    auto* ex_bi_opt = expand->add_option("--builtin", ex_builtin, "Built-in constant name");
    ex_fn_opt->excludes(ex_bi_opt);
    expand->add_option("--order", ex_order, "Number of exponents N");
    expand->add_option("--signs", ex_signs, "minus, plus or adaptive");
    expand->add_flag("--json", common.json, "Machine-readable JSON output");
    expand->add_flag("--timing", common.timing, "Report wall-clock time");

    // eval
    auto* eval = app.add_subcommand("eval", "Certified value of prefactor * prod_p f(1/p)");
    std::string ev_builtin;
    std::string ev_function;
    std::string ev_prefactor;
    std::string ev_radius;
    std::string ev_bound;
    std::optional<long> ev_digits;
    std::optional<long> ev_m;
    auto* ev_bi_opt = eval->add_option("--builtin", ev_builtin, "ramanujan-a1 or avg-divisor-c");
    auto* ev_fn_opt = eval->add_option("--function", ev_function, "Expression in z with f(0)=1, f'(0)=0");
    ev_fn_opt->excludes(ev_bi_opt);
    eval->add_option("--prefactor", ev_prefactor, "z-free expression multiplying the product (default 1)");
    eval->add_option("--R", ev_radius, "Radius R in (0,1], as a rational");
    eval->add_option("--B", ev_bound, "Bound on |f'/f| on |z|=R, as a rational");
    eval->add_option("--digits", ev_digits, "Target decimal digits");
    eval->add_option("--m", ev_m, "Index of the first prime handled by the zeta tail");
    eval->add_flag("--json", common.json, "Machine-readable JSON output");
    eval->add_flag("--timing", common.timing, "Report wall-clock time");

    // arnold
    auto* arnold = app.add_subcommand("arnold", "Verify tr A^(p^m) = tr A^(p^(m-1)) mod p^m");
    std::string ar_matrix;
    long ar_p = 2;
    long ar_kmax = 3;
    arnold->add_option("--matrix", ar_matrix, "Matrix file: k, then k rows of k integers")->required();
    arnold->add_option("--p", ar_p, "Prime p")->required();
    arnold->add_option("--kmax", ar_kmax, "Largest exponent m");
    arnold->add_flag("--json", common.json, "Machine-readable JSON output");
    arnold->add_flag("--timing", common.timing, "Report wall-clock time");

    // zeta
    auto* zeta = app.add_subcommand("zeta", "Partial zeta value zeta_m(n)");
    long ze_m = 1;
    long ze_n = 2;
    std::optional<long> ze_digits;
    zeta->add_option("--m", ze_m, "Index of the first prime kept");
    zeta->add_option("--n", ze_n, "Integer argument n >= 2")->required();
    zeta->add_option("--digits", ze_digits, "Significant digits");
    zeta->add_flag("--json", common.json, "Machine-readable JSON output");
    zeta->add_flag("--timing", common.timing, "Report wall-clock time");

    app.add_option("--digits", default_digits, "Default digits for eval and zeta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (*expand) {
            if (ex_function.empty() && ex_builtin.empty()) {
                std::cerr << "error: expand needs --function or --builtin\n";
                return exit_input;
            }
            return run_expand(common, ex_function, ex_builtin, ex_order, ex_signs);
        }
        if (*eval) {
            if (ev_builtin.empty() && ev_function.empty()) {
                std::cerr << "error: eval needs --builtin or --function\n";
                return exit_input;
            }
            return run_eval(common, ev_builtin, ev_function, ev_prefactor, ev_radius, ev_bound,
                            ev_digits.value_or(default_digits), ev_m, guard);
        }
        if (*arnold) {
            return run_arnold(common, ar_matrix, ar_p, ar_kmax);
        }
        if (*zeta) {
            return run_zeta(common, ze_m, ze_n, ze_digits.value_or(default_digits));
        }
    } catch (const PlanError& e) {
        std::cerr << "plan error: " << e.what() << "\n";
        return exit_plan;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return exit_violation;
    }
    return exit_input;
}
