#pragma once

// Expression language for analytic functions f(z).
//
// Grammar (whitespace-insensitive):
//   expr     := term (('+' | '-') term)*
//   term     := factor (('*' | '/') factor)*
//   factor   := base ('^' exponent)?
//   base     := 'z' | rational | 'pi' | 'e' | '(' expr ')'
//             | ('ln' | 'exp' | 'sqrt') '(' expr ')' | '-' base
//   rational := integer ('/' integer)?
//   exponent := '-'? rational
//
// Binary operators are left-associative and '^' binds tighter than '*'.
// A literal directly after unary minus folds into a negative constant.
// 'pi' and 'e' are accepted for point evaluation (prefactors such as
// 1/sqrt(pi)); they have no exact Taylor expansion.

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eulerprod/bigreal.hpp"
#include "eulerprod/errors.hpp"
#include "eulerprod/qseries.hpp"
#include "eulerprod/rational.hpp"

namespace eulerprod {

enum class NodeKind { var, constant, pi, e, add, sub, mul, div, neg, pow, ln, exp, sqrt };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    Rational value; // constant value, or the exponent of a pow node
    NodePtr lhs;    // operand of unary nodes
    NodePtr rhs;
};

// Immutable expression tree.
class FunctionExpr {
public:
    explicit FunctionExpr(NodePtr root) : root_(std::move(root))
    {
        if (!root_) {
            throw DomainError("empty expression");
        }
    }

    static FunctionExpr var() { return leaf(NodeKind::var); }
    static FunctionExpr constant(const Rational& c) { return FunctionExpr(std::make_shared<const ExprNode>(ExprNode{NodeKind::constant, c, nullptr, nullptr})); }
    static FunctionExpr pi() { return leaf(NodeKind::pi); }
    static FunctionExpr e() { return leaf(NodeKind::e); }

    static FunctionExpr binary(NodeKind kind, const FunctionExpr& a, const FunctionExpr& b)
    {
        return FunctionExpr(std::make_shared<const ExprNode>(ExprNode{kind, 0, a.root_, b.root_}));
    }

    static FunctionExpr unary(NodeKind kind, const FunctionExpr& a)
    {
        return FunctionExpr(std::make_shared<const ExprNode>(ExprNode{kind, 0, a.root_, nullptr}));
    }

    static FunctionExpr power(const FunctionExpr& a, const Rational& exponent)
    {
        return FunctionExpr(std::make_shared<const ExprNode>(ExprNode{NodeKind::pow, exponent, a.root_, nullptr}));
    }

    const ExprNode& root() const { return *root_; }
    const NodePtr& root_ptr() const { return root_; }

    friend bool operator==(const FunctionExpr& a, const FunctionExpr& b) { return equal(a.root_, b.root_); }

    std::size_t node_count() const { return count(root_); }

    bool depends_on_z() const { return contains_var(root_); }

private:
    static FunctionExpr leaf(NodeKind kind)
    {
        return FunctionExpr(std::make_shared<const ExprNode>(ExprNode{kind, 0, nullptr, nullptr}));
    }

    static bool equal(const NodePtr& a, const NodePtr& b)
    {
        if (!a || !b) {
            return !a && !b;
        }
        return a->kind == b->kind && a->value == b->value && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }

    static std::size_t count(const NodePtr& n) { return n ? 1 + count(n->lhs) + count(n->rhs) : 0; }

    static bool contains_var(const NodePtr& n)
    {
        return n && (n->kind == NodeKind::var || contains_var(n->lhs) || contains_var(n->rhs));
    }

    NodePtr root_;
};

// ---------------------------------------------------------------------------
// Parsing and printing

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    FunctionExpr parse()
    {
        FunctionExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    FunctionExpr expr()
    {
        FunctionExpr lhs = term();
        while (true) {
            skip_ws();
            if (accept('+')) {
                lhs = FunctionExpr::binary(NodeKind::add, lhs, term());
            } else if (accept('-')) {
                lhs = FunctionExpr::binary(NodeKind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    FunctionExpr term()
    {
        FunctionExpr lhs = factor();
        while (true) {
            skip_ws();
            if (accept('*')) {
                lhs = FunctionExpr::binary(NodeKind::mul, lhs, factor());
            } else if (accept('/')) {
                lhs = FunctionExpr::binary(NodeKind::div, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    FunctionExpr factor()
    {
        FunctionExpr b = base();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            const bool negative = accept('-');
            Rational r = rational();
            return FunctionExpr::power(b, negative ? Rational(-r) : r);
        }
        return b;
    }

    FunctionExpr base()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of input", pos_);
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            FunctionExpr inner = expr();
            skip_ws();
            expect(')');
            return inner;
        }
        if (c == '-') {
            ++pos_;
            FunctionExpr operand = base();
            if (operand.root().kind == NodeKind::constant) {
                return FunctionExpr::constant(-operand.root().value);
            }
            return FunctionExpr::unary(NodeKind::neg, operand);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return FunctionExpr::constant(rational());
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            const std::string_view word = text_.substr(start, pos_ - start);
            if (word == "z") {
                return FunctionExpr::var();
            }
            if (word == "pi") {
                return FunctionExpr::pi();
            }
            if (word == "e") {
                return FunctionExpr::e();
            }
            NodeKind kind;
            if (word == "ln") {
                kind = NodeKind::ln;
            } else if (word == "exp") {
                kind = NodeKind::exp;
            } else if (word == "sqrt") {
                kind = NodeKind::sqrt;
            } else {
                throw ParseError("unknown identifier '" + std::string(word) + "'", start);
            }
            skip_ws();
            expect('(');
            FunctionExpr arg = expr();
            skip_ws();
            expect(')');
            return FunctionExpr::unary(kind, arg);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    // integer ('/' integer)?; the slash belongs to the literal only when a
    // digit follows it.
    Rational rational()
    {
        skip_ws();
        BigInt num = integer();
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            std::size_t after = pos_ + 1;
            while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) {
                ++after;
            }
            if (after < text_.size() && std::isdigit(static_cast<unsigned char>(text_[after]))) {
                pos_ = after;
                const std::size_t den_pos = pos_;
                BigInt den = integer();
                if (den == 0) {
                    throw ParseError("zero denominator", den_pos);
                }
                return make_rational(num, den);
            }
        }
        pos_ = save;
        return Rational(num);
    }

    BigInt integer()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            throw ParseError("expected a number", pos_);
        }
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= text_.size()) {
                throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
            }
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline std::string print_node(const ExprNode& n)
{
    switch (n.kind) {
    case NodeKind::var: return "z";
    case NodeKind::pi: return "pi";
    case NodeKind::e: return "e";
    case NodeKind::constant:
        return (n.value < 0 || n.value.get_den() != 1) ? "(" + n.value.get_str() + ")" : n.value.get_str();
    case NodeKind::add: return "(" + print_node(*n.lhs) + "+" + print_node(*n.rhs) + ")";
    case NodeKind::sub: return "(" + print_node(*n.lhs) + "-" + print_node(*n.rhs) + ")";
    case NodeKind::mul: return "(" + print_node(*n.lhs) + "*" + print_node(*n.rhs) + ")";
    case NodeKind::div: return "(" + print_node(*n.lhs) + "/" + print_node(*n.rhs) + ")";
    case NodeKind::neg: return "-(" + print_node(*n.lhs) + ")";
    case NodeKind::pow: {
        // Wrapped whole so a following '/digit' cannot extend the exponent.
        const std::string base = print_node(*n.lhs);
        return "(" + (n.lhs->kind == NodeKind::neg ? "(" + base + ")" : base) + "^" + n.value.get_str() + ")";
    }
    case NodeKind::ln: return "ln(" + print_node(*n.lhs) + ")";
    case NodeKind::exp: return "exp(" + print_node(*n.lhs) + ")";
    case NodeKind::sqrt: return "sqrt(" + print_node(*n.lhs) + ")";
    }
    return "?";
}

} // namespace detail

inline FunctionExpr parse(std::string_view text) { return detail::ExprParser(text).parse(); }

// Canonical, fully parenthesized form; parse(print(e)) == e.
inline std::string print(const FunctionExpr& expr) { return detail::print_node(expr.root()); }

// ---------------------------------------------------------------------------
// Exact Taylor expansion

namespace detail {

inline RationalSeries taylor_node(const ExprNode& n, std::size_t order)
{
    auto fail = [&](const std::exception& cause) -> RationalSeries {
        throw DomainError(std::string(cause.what()) + " in '" + print_node(n) + "'");
    };
    try {
        switch (n.kind) {
        case NodeKind::var: return RationalSeries::monomial(1, 1, order);
        case NodeKind::constant: return RationalSeries::constant(n.value, order);
        case NodeKind::pi:
        case NodeKind::e: throw DomainError("irrational constant has no exact expansion");
        case NodeKind::add: return add(taylor_node(*n.lhs, order), taylor_node(*n.rhs, order));
        case NodeKind::sub: return sub(taylor_node(*n.lhs, order), taylor_node(*n.rhs, order));
        case NodeKind::mul: return mul(taylor_node(*n.lhs, order), taylor_node(*n.rhs, order));
        case NodeKind::div: return div(taylor_node(*n.lhs, order), taylor_node(*n.rhs, order));
        case NodeKind::neg: return negate(taylor_node(*n.lhs, order));
        case NodeKind::pow: return pow(taylor_node(*n.lhs, order), n.value);
        case NodeKind::ln: return log(taylor_node(*n.lhs, order));
        case NodeKind::exp: return exp(taylor_node(*n.lhs, order));
        case NodeKind::sqrt: return pow(taylor_node(*n.lhs, order), Rational(1, 2));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const DomainError& err) {
        // Only annotate at the innermost failing node.
        if (std::string(err.what()).find(" in '") != std::string::npos) {
            throw;
        }
        return fail(err);
    } catch (const RangeError& err) {
        return fail(err);
    }
    throw DomainError("unknown node");
}

} // namespace detail

// Taylor coefficients b_0..b_N. Divisions by series with positive valuation
// lose known orders, so the expansion is retried at a higher internal
// order until N coefficients are certain.
inline RationalSeries taylor(const FunctionExpr& expr, std::size_t order)
{
    std::size_t work = order;
    for (int attempt = 0; attempt < 64; ++attempt) {
        RationalSeries s = detail::taylor_node(expr.root(), work);
        if (s.order() >= order) {
            return s.truncate(order);
        }
        work += order - s.order();
    }
    throw DomainError("taylor: could not reach the requested order");
}

// ---------------------------------------------------------------------------
// Point evaluation

namespace detail {

inline BigReal eval_node(const ExprNode& n, const BigReal& x, Precision p)
{
    switch (n.kind) {
    case NodeKind::var: return x.with_precision(p);
    case NodeKind::constant: return BigReal(n.value, p);
    case NodeKind::pi: return BigReal::pi(p);
    case NodeKind::e: return BigReal::e(p);
    case NodeKind::add: return eval_node(*n.lhs, x, p) + eval_node(*n.rhs, x, p);
    case NodeKind::sub: return eval_node(*n.lhs, x, p) - eval_node(*n.rhs, x, p);
    case NodeKind::mul: return eval_node(*n.lhs, x, p) * eval_node(*n.rhs, x, p);
    case NodeKind::div: {
        const BigReal den = eval_node(*n.rhs, x, p);
        if (den.is_zero()) {
            throw DivideByZero("division by zero in '" + print_node(n) + "'");
        }
        return eval_node(*n.lhs, x, p) / den;
    }
    case NodeKind::neg: return -eval_node(*n.lhs, x, p);
    case NodeKind::pow: {
        const BigReal base = eval_node(*n.lhs, x, p);
        try {
            return pow(base, n.value);
        } catch (const DivideByZero& err) {
            throw DivideByZero(std::string(err.what()) + " in '" + print_node(n) + "'");
        } catch (const DomainError& err) {
            throw DomainError(std::string(err.what()) + " in '" + print_node(n) + "'");
        }
    }
    case NodeKind::ln: {
        const BigReal arg = eval_node(*n.lhs, x, p);
        if (arg.sign() <= 0) {
            throw DomainError("ln of a non-positive value in '" + print_node(n) + "'");
        }
        return ln(arg);
    }
    case NodeKind::exp: return exp(eval_node(*n.lhs, x, p));
    case NodeKind::sqrt: {
        const BigReal arg = eval_node(*n.lhs, x, p);
        if (arg.sign() < 0) {
            throw DomainError("sqrt of a negative value in '" + print_node(n) + "'");
        }
        return sqrt(arg);
    }
    }
    throw DomainError("unknown node");
}

} // namespace detail

// f(x) at precision P; relative error about node_count * 2^(2-P) when no
// cancellation occurs.
inline BigReal eval_point(const FunctionExpr& expr, const BigReal& x, Precision p)
{
    return detail::eval_node(expr.root(), x, p);
}

// Value of a z-free expression such as 1/sqrt(pi).
inline BigReal eval_constant(const FunctionExpr& expr, Precision p)
{
    if (expr.depends_on_z()) {
        throw DomainError("expression depends on z: '" + print(expr) + "'");
    }
    return eval_point(expr, BigReal(p), p);
}

// ---------------------------------------------------------------------------
// Built-in constants

// An Euler product  prefactor * prod_p f(1/p)  with the data the evaluator
// needs: a radius R and a bound B >= |f'/f| on |z| = R, and the default
// index m of the first prime handled by the zeta tail.
struct ConstantSpec {
    std::string name;
    FunctionExpr f;
    FunctionExpr prefactor;
    Rational radius;
    Rational bound;
    std::size_t m;
};

// Both built-ins use R = 9/10 and B = 18. For ramanujan-a1,
//   f'/f = -1/((1-z) ln(1-z)) - 1/z - 1/(2(1-z)),
// and |(1-z) ln(1-z)| >= |z| - |z|^2 gives |f'/f| <= 2/|z| + 3/(2(1-|z|)),
// which is 2/0.9 + 15 < 18 on |z| = 0.9. avg-divisor-c has
//   f'/f = 1/((1+z) ln(1+z)) - 1/z + 1/(2(1-z))
// and the same estimate applies with z replaced by -z in the first term.
inline ConstantSpec builtin(std::string_view name)
{
    if (name == "ramanujan-a1") {
        return ConstantSpec{"ramanujan-a1", parse("(-ln(1-z)/z)*sqrt(1-z)"), parse("1/sqrt(pi)"),
                            Rational(9, 10), Rational(18), 7};
    }
    if (name == "avg-divisor-c") {
        return ConstantSpec{"avg-divisor-c", parse("ln(1+z)/(z*sqrt(1-z))"), parse("1/sqrt(pi)"),
                            Rational(9, 10), Rational(18), 7};
    }
    throw UnknownConstant("unknown built-in constant '" + std::string(name) + "'");
}

inline std::vector<std::string> builtin_names() { return {"ramanujan-a1", "avg-divisor-c"}; }

} // namespace eulerprod
