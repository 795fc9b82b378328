#include "smetric/expr.hpp"

#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace smetric {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      detail_(message), line_(line), column_(column)
{
}

// ---------------------------------------------------------------------------
// Tree construction and inspection

Expr Expr::number(double v)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::variable(char letter, int subscript)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->letter = letter;
    n->subscript = subscript;
    return Expr(std::move(n));
}

Expr Expr::negate(Expr a)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Negate;
    n->args.push_back(std::move(a));
    return Expr(std::move(n));
}

Expr Expr::binary(Kind op, Expr a, Expr b)
{
    if (op != Kind::Add && op != Kind::Sub && op != Kind::Mul && op != Kind::Div)
        throw InvalidArgument("Expr::binary: not a binary operator");
    auto n = std::make_shared<Node>();
    n->kind = op;
    n->args.push_back(std::move(a));
    n->args.push_back(std::move(b));
    return Expr(std::move(n));
}

Expr Expr::call(Kind fn, Expr a)
{
    if (fn != Kind::Abs && fn != Kind::Exp && fn != Kind::Ln)
        throw InvalidArgument("Expr::call: not a function");
    auto n = std::make_shared<Node>();
    n->kind = fn;
    n->args.push_back(std::move(a));
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
char Expr::letter() const { return node_->letter; }
int Expr::subscript() const { return node_->subscript; }
const Expr& Expr::arg(std::size_t i) const { return node_->args.at(i); }
std::size_t Expr::arity() const { return node_ ? node_->args.size() : 0; }

bool Expr::operator==(const Expr& other) const
{
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Kind::Number:
        return a.value == b.value;
    case Kind::Variable:
        return a.letter == b.letter && a.subscript == b.subscript;
    default:
        return a.args == b.args;
    }
}

namespace {

double checked(double v, const char* what)
{
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
    return v;
}

} // namespace

double Expr::evaluate(const Bindings& env) const
{
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::Number:
        return n.value;
    case Kind::Variable: {
        const Point* p = n.letter == 'x' ? env.x : n.letter == 'y' ? env.y : n.letter == 'z' ? env.z : nullptr;
        if (!p) throw DomainError(std::string("unbound variable '") + n.letter + "'");
        const int idx = n.subscript == 0 ? 0 : n.subscript - 1;
        if (idx >= p->size())
            throw DomainError(std::string("variable ") + n.letter + std::to_string(n.subscript) +
                              " exceeds point dimension");
        return (*p)(idx);
    }
    case Kind::Negate:
        return -n.args[0].evaluate(env);
    case Kind::Add:
        return checked(n.args[0].evaluate(env) + n.args[1].evaluate(env), "addition");
    case Kind::Sub:
        return checked(n.args[0].evaluate(env) - n.args[1].evaluate(env), "subtraction");
    case Kind::Mul:
        return checked(n.args[0].evaluate(env) * n.args[1].evaluate(env), "multiplication");
    case Kind::Div: {
        const double den = n.args[1].evaluate(env);
        if (den == 0.0) throw DomainError("division by zero");
        return checked(n.args[0].evaluate(env) / den, "division");
    }
    case Kind::Abs:
        return std::abs(n.args[0].evaluate(env));
    case Kind::Exp:
        return checked(std::exp(n.args[0].evaluate(env)), "exp");
    case Kind::Ln: {
        const double a = n.args[0].evaluate(env);
        if (!(a > 0.0)) throw DomainError("ln of nonpositive value");
        return std::log(a);
    }
    }
    throw DomainError("corrupt expression");
}

std::string Expr::to_string() const
{
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::Number:
        return format_number(n.value);
    case Kind::Variable:
        return n.subscript == 0 ? std::string(1, n.letter) : n.letter + std::to_string(n.subscript);
    case Kind::Negate:
        return "-(" + n.args[0].to_string() + ")";
    case Kind::Add:
        return "(" + n.args[0].to_string() + " + " + n.args[1].to_string() + ")";
    case Kind::Sub:
        return "(" + n.args[0].to_string() + " - " + n.args[1].to_string() + ")";
    case Kind::Mul:
        return "(" + n.args[0].to_string() + " * " + n.args[1].to_string() + ")";
    case Kind::Div:
        return "(" + n.args[0].to_string() + " / " + n.args[1].to_string() + ")";
    case Kind::Abs:
        return "abs(" + n.args[0].to_string() + ")";
    case Kind::Exp:
        return "exp(" + n.args[0].to_string() + ")";
    case Kind::Ln:
        return "ln(" + n.args[0].to_string() + ")";
    }
    return {};
}

int Expr::max_subscript(char letter) const
{
    const Node& n = *node_;
    if (n.kind == Kind::Variable) return n.letter == letter ? std::max(1, n.subscript) : 0;
    int m = 0;
    for (const auto& a : n.args) m = std::max(m, a.max_subscript(letter));
    return m;
}

bool Expr::uses_bare(char letter) const
{
    const Node& n = *node_;
    if (n.kind == Kind::Variable) return n.letter == letter && n.subscript == 0;
    for (const auto& a : n.args)
        if (a.uses_bare(letter)) return true;
    return false;
}

bool Expr::uses_letter(char letter) const { return max_subscript(letter) > 0; }

void validate_variables(const Expr& e, const ExprContext& ctx)
{
    for (char c : ctx.letters) {
        if (e.uses_bare(c) && ctx.dimension != 1)
            throw InvalidArgument(std::string("dimension mismatch: bare '") + c + "' requires dimension 1, got " +
                                  std::to_string(ctx.dimension) + " (use " + c + "1.." + c +
                                  std::to_string(ctx.dimension) + ")");
        if (e.max_subscript(c) > ctx.dimension)
            throw InvalidArgument(std::string("dimension mismatch: ") + c + std::to_string(e.max_subscript(c)) +
                                  " used with dimension " + std::to_string(ctx.dimension));
    }
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace detail {

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                }
            }
            t.kind = Tok::Number;
            t.text = std::string(src.substr(i, j - i));
            auto res = std::from_chars(src.data() + i, src.data() + j, t.number);
            if (res.ec != std::errc() || res.ptr != src.data() + j)
                throw ParseError("malformed number '" + t.text + "'", line, col);
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else {
            static constexpr std::string_view two[] = {"->", ">=", "<=", "=="};
            t.kind = Tok::Symbol;
            bool matched = false;
            for (auto s : two) {
                if (src.substr(i, 2) == s) {
                    t.text = std::string(s);
                    advance(2);
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                static constexpr std::string_view one = "+-*/(),;{}=<>";
                if (one.find(c) == std::string_view::npos)
                    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
                t.text = std::string(1, c);
                advance(1);
            }
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.text = "end of input";
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

void TokenStream::fail(const std::string& msg) const { fail_at(peek(), msg); }

void TokenStream::fail_at(const Token& t, const std::string& msg) const
{
    throw ParseError(msg, t.line, t.column);
}

void TokenStream::expect_symbol(std::string_view s)
{
    if (!accept_symbol(s)) fail("expected '" + std::string(s) + "', found '" + peek().text + "'");
}

void TokenStream::expect_ident(std::string_view s)
{
    if (!is_ident(s)) fail("expected '" + std::string(s) + "', found '" + peek().text + "'");
    next();
}

bool split_variable(std::string_view ident, std::string_view letters, char& letter, int& subscript)
{
    if (ident.empty() || letters.find(ident[0]) == std::string_view::npos) return false;
    if (ident.size() == 1) {
        letter = ident[0];
        subscript = 0;
        return true;
    }
    int value = 0;
    auto res = std::from_chars(ident.data() + 1, ident.data() + ident.size(), value);
    if (res.ec != std::errc() || res.ptr != ident.data() + ident.size() || value < 1 || ident[1] == '0')
        return false;
    letter = ident[0];
    subscript = value;
    return true;
}

namespace {

Expr parse_sum(TokenStream& ts, const ExprContext& ctx);

Expr parse_primary(TokenStream& ts, const ExprContext& ctx)
{
    const Token& t = ts.peek();
    if (t.kind == Tok::Number) {
        ts.next();
        return Expr::number(t.number);
    }
    if (t.kind == Tok::Symbol && t.text == "(") {
        ts.next();
        Expr e = parse_sum(ts, ctx);
        ts.expect_symbol(")");
        return e;
    }
    if (t.kind == Tok::Ident) {
        const Token tok = ts.next();
        if (tok.text == "abs" || tok.text == "exp" || tok.text == "ln") {
            ts.expect_symbol("(");
            Expr a = parse_sum(ts, ctx);
            ts.expect_symbol(")");
            const auto fn = tok.text == "abs" ? Expr::Kind::Abs : tok.text == "exp" ? Expr::Kind::Exp : Expr::Kind::Ln;
            return Expr::call(fn, std::move(a));
        }
        char letter = 0;
        int sub = 0;
        if (!split_variable(tok.text, ctx.letters, letter, sub))
            ts.fail_at(tok, "unknown identifier '" + tok.text + "'");
        if (sub == 0 && ctx.dimension != 1)
            ts.fail_at(tok, "dimension mismatch: bare '" + tok.text + "' requires dimension 1");
        if (sub > ctx.dimension)
            ts.fail_at(tok, "dimension mismatch: '" + tok.text + "' exceeds dimension " +
                                std::to_string(ctx.dimension));
        return Expr::variable(letter, sub);
    }
    ts.fail("expected expression, found '" + t.text + "'");
}

Expr parse_unary(TokenStream& ts, const ExprContext& ctx)
{
    if (ts.is_symbol("-")) {
        ts.next();
        if (ts.peek().kind == Tok::Number) return Expr::number(-ts.next().number);
        return Expr::negate(parse_unary(ts, ctx));
    }
    if (ts.accept_symbol("+")) return parse_unary(ts, ctx);
    return parse_primary(ts, ctx);
}

Expr parse_product(TokenStream& ts, const ExprContext& ctx)
{
    Expr lhs = parse_unary(ts, ctx);
    for (;;) {
        if (ts.accept_symbol("*"))
            lhs = Expr::binary(Expr::Kind::Mul, std::move(lhs), parse_unary(ts, ctx));
        else if (ts.accept_symbol("/"))
            lhs = Expr::binary(Expr::Kind::Div, std::move(lhs), parse_unary(ts, ctx));
        else
            return lhs;
    }
}

Expr parse_sum(TokenStream& ts, const ExprContext& ctx)
{
    Expr lhs = parse_product(ts, ctx);
    for (;;) {
        if (ts.accept_symbol("+"))
            lhs = Expr::binary(Expr::Kind::Add, std::move(lhs), parse_product(ts, ctx));
        else if (ts.accept_symbol("-"))
            lhs = Expr::binary(Expr::Kind::Sub, std::move(lhs), parse_product(ts, ctx));
        else
            return lhs;
    }
}

} // namespace

Expr parse_expr(TokenStream& ts, const ExprContext& ctx) { return parse_sum(ts, ctx); }

double parse_signed_number(TokenStream& ts)
{
    double sign = 1.0;
    if (ts.accept_symbol("-"))
        sign = -1.0;
    else
        ts.accept_symbol("+");
    if (ts.peek().kind != Tok::Number) ts.fail("expected number, found '" + ts.peek().text + "'");
    double v = ts.next().number;
    if (ts.is_symbol("/") && ts.peek(1).kind == Tok::Number) {
        ts.next();
        const Token& den = ts.next();
        if (den.number == 0.0) ts.fail_at(den, "zero denominator in fraction");
        v /= den.number;
    }
    return sign * v;
}

} // namespace detail

Expr parse_expression(std::string_view text, const ExprContext& ctx)
{
    detail::TokenStream ts(detail::tokenize(text));
    Expr e = detail::parse_expr(ts, ctx);
    if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after expression");
    return e;
}

} // namespace smetric
