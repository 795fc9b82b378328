// Tokenizer and recursive-descent expression parser shared by the map and
// metric DSL front ends. Internal to the library.
#ifndef SMETRIC_SRC_LEXER_HPP
#define SMETRIC_SRC_LEXER_HPP

#include "smetric/expr.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace smetric::detail {

enum class Tok { Number, Ident, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

std::vector<Token> tokenize(std::string_view src);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const
    {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().kind == Tok::End; }

    bool is_symbol(std::string_view s, std::size_t ahead = 0) const
    {
        const auto& t = peek(ahead);
        return t.kind == Tok::Symbol && t.text == s;
    }
    bool is_ident(std::string_view s, std::size_t ahead = 0) const
    {
        const auto& t = peek(ahead);
        return t.kind == Tok::Ident && t.text == s;
    }
    bool accept_symbol(std::string_view s)
    {
        if (!is_symbol(s)) return false;
        next();
        return true;
    }
    void expect_symbol(std::string_view s);
    void expect_ident(std::string_view s);

    [[noreturn]] void fail(const std::string& msg) const;
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const;

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

/// Parses one arithmetic expression starting at the current token.
Expr parse_expr(TokenStream& ts, const ExprContext& ctx);

/// Signed decimal or fraction literal: ["+"|"-"] NUMBER ["/" NUMBER].
double parse_signed_number(TokenStream& ts);

/// Splits `x12` into ('x', 12) and `x` into ('x', 0). Returns false when the
/// identifier is not a variable of one of `letters`.
bool split_variable(std::string_view ident, std::string_view letters, char& letter, int& subscript);

} // namespace smetric::detail

#endif // SMETRIC_SRC_LEXER_HPP
