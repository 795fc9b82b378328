#ifndef SMETRIC_EXPR_HPP
#define SMETRIC_EXPR_HPP

#include "smetric/point.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smetric {

/// Syntax error in the map or metric DSL, carrying a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    std::string detail_;
    int line_;
    int column_;
};

/// Immutable arithmetic expression over coordinate variables.
///
/// Variables are written `x`, `x1`..`xn` (and `y`, `z` families inside
/// metric expressions). A bare letter refers to the single coordinate of a
/// one-dimensional point and is kept distinct from `x1` in the tree so that
/// printing reproduces the source spelling.
class Expr {
public:
    enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Abs, Exp, Ln };

    struct Node;

    Expr() = default;

    static Expr number(double v);
    static Expr variable(char letter, int subscript);
    static Expr negate(Expr a);
    static Expr binary(Kind op, Expr a, Expr b);
    static Expr call(Kind fn, Expr a);

    bool empty() const { return !node_; }
    Kind kind() const;
    double value() const;
    char letter() const;
    int subscript() const;
    const Expr& arg(std::size_t i) const;
    std::size_t arity() const;

    /// Values bound to the variable letters x, y, z.
    struct Bindings {
        const Point* x = nullptr;
        const Point* y = nullptr;
        const Point* z = nullptr;
    };

    /// Throws DomainError on division by zero, ln of a nonpositive value, or a
    /// non-finite intermediate.
    double evaluate(const Bindings& env) const;

    /// Fully parenthesized text that parses back to an identical tree.
    std::string to_string() const;

    /// Largest subscript used per letter; a bare letter counts as 1.
    int max_subscript(char letter) const;
    bool uses_bare(char letter) const;
    bool uses_letter(char letter) const;

    bool operator==(const Expr& other) const;

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Expr::Node {
    Kind kind = Kind::Number;
    double value = 0.0;
    char letter = 'x';
    int subscript = 0;
    std::vector<Expr> args;
};

/// Which variable letters an expression may reference and the point dimension
/// they range over. Bare letters are only legal when dimension == 1.
struct ExprContext {
    std::string letters = "x";
    int dimension = 1;
};

Expr parse_expression(std::string_view text, const ExprContext& ctx);

/// Checks every variable in `e` against the context; throws InvalidArgument.
void validate_variables(const Expr& e, const ExprContext& ctx);

} // namespace smetric

#endif // SMETRIC_EXPR_HPP
