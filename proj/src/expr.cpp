#include "varsep/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "varsep/errors.hpp"

namespace varsep {

namespace {

constexpr std::array<std::pair<Function, std::string_view>, 6> kFunctions{{
    {Function::Sin, "sin"},
    {Function::Cos, "cos"},
    {Function::Tan, "tan"},
    {Function::Exp, "exp"},
    {Function::Ln, "ln"},
    {Function::Abs, "abs"},
}};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ident_tail(char c) { return is_alpha(c) || is_digit(c) || c == '_'; }

class Parser {
public:
    explicit Parser(std::string_view source) : source_(source), tokens_(tokenize(source)) {}

    ExprPtr parse_all() {
        if (tokens_.empty()) throw ParseError("empty expression", 0);
        ExprPtr result = parse_sum();
        if (pos_ < tokens_.size()) {
            const Token& t = tokens_[pos_];
            if (t.kind == TokenKind::Identifier || t.kind == TokenKind::Number ||
                (t.kind == TokenKind::Paren && t.lexeme == "(")) {
                throw ParseError("missing operator before '" + t.lexeme + "' (write multiplication with '*')",
                                 t.position);
            }
            throw ParseError("unexpected '" + t.lexeme + "'", t.position);
        }
        return result;
    }

private:
    const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

    bool peek_operator(std::string_view op) const {
        const Token* t = peek();
        return t != nullptr && t->kind == TokenKind::Operator && t->lexeme == op;
    }

    bool peek_paren(std::string_view p) const {
        const Token* t = peek();
        return t != nullptr && t->kind == TokenKind::Paren && t->lexeme == p;
    }

    std::size_t end_offset() const { return source_.size(); }

    ExprPtr parse_sum() {
        ExprPtr lhs = parse_product();
        while (peek_operator("+") || peek_operator("-")) {
            const Token& op = tokens_[pos_++];
            ExprPtr rhs = parse_product();
            lhs = make_binary(op.lexeme == "+" ? BinaryOp::Add : BinaryOp::Sub, lhs, rhs, lhs->position);
        }
        return lhs;
    }

    ExprPtr parse_product() {
        ExprPtr lhs = parse_unary();
        while (peek_operator("*") || peek_operator("/")) {
            const Token& op = tokens_[pos_++];
            ExprPtr rhs = parse_unary();
            lhs = make_binary(op.lexeme == "*" ? BinaryOp::Mul : BinaryOp::Div, lhs, rhs, lhs->position);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (peek_operator("-")) {
            const std::size_t at = tokens_[pos_++].position;
            return make_negate(parse_unary(), at);
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (peek_operator("^")) {
            ++pos_;
            ExprPtr exponent = parse_unary();
            return make_binary(BinaryOp::Pow, base, exponent, base->position);
        }
        return base;
    }

    ExprPtr parse_primary() {
        const Token* t = peek();
        if (t == nullptr) throw ParseError("unexpected end of expression", end_offset());
        switch (t->kind) {
            case TokenKind::Number: {
                ++pos_;
                return make_constant(Rational::parse(t->lexeme), t->position);
            }
            case TokenKind::Identifier: {
                ++pos_;
                auto fn = function_from_name(t->lexeme);
                if (peek_paren("(")) {
                    if (!fn) throw ParseError("unknown function '" + t->lexeme + "'", t->position);
                    ++pos_;
                    ExprPtr arg = parse_sum();
                    expect_close();
                    return make_call(*fn, arg, t->position);
                }
                if (fn) throw ParseError("function '" + t->lexeme + "' needs a parenthesized argument", t->position);
                return make_variable(t->lexeme, t->position);
            }
            case TokenKind::Paren: {
                if (t->lexeme == "(") {
                    ++pos_;
                    ExprPtr inner = parse_sum();
                    expect_close();
                    return inner;
                }
                throw ParseError("unexpected ')'", t->position);
            }
            case TokenKind::Operator:
                throw ParseError("unexpected operator '" + t->lexeme + "'", t->position);
        }
        throw ParseError("unexpected token", t->position);
    }

    void expect_close() {
        if (!peek_paren(")")) {
            const Token* t = peek();
            throw ParseError("expected ')'", t != nullptr ? t->position : end_offset());
        }
        ++pos_;
    }

    std::string_view source_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Binding strength used by the printer.
int precedence(const ExprNode& node) {
    if (const auto* b = std::get_if<Binary>(&node.value)) {
        switch (b->op) {
            case BinaryOp::Add:
            case BinaryOp::Sub: return 1;
            case BinaryOp::Mul:
            case BinaryOp::Div: return 2;
            case BinaryOp::Pow: return 4;
        }
    }
    if (std::holds_alternative<Negate>(node.value)) return 3;
    return 5;
}

// Exact decimal text when the denominator has only factors 2 and 5.
std::optional<std::string> terminating_decimal(const Rational& r) {
    mpz_class den = r.denominator();
    unsigned twos = 0;
    unsigned fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2) != 0) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5) != 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return std::nullopt;
    const unsigned places = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = abs(r.numerator()) * scale / r.denominator();
    std::string digits = scaled.get_str(10);
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
    return (r.sign() < 0 ? "-" : "") + digits;
}

std::string constant_text(const Rational& value) {
    if (value.is_integer()) return value.sign() < 0 ? "(" + value.to_string() + ")" : value.to_string();
    if (auto decimal = terminating_decimal(value)) return value.sign() < 0 ? "(" + *decimal + ")" : *decimal;
    return "(" + value.to_string() + ")";
}

void print(const ExprNode& node, std::string& out);

void print_operand(const ExprNode& node, bool parenthesize, std::string& out) {
    if (parenthesize) out += '(';
    print(node, out);
    if (parenthesize) out += ')';
}

void print(const ExprNode& node, std::string& out) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                out += constant_text(v.value);
            } else if constexpr (std::is_same_v<T, Variable>) {
                out += v.name;
            } else if constexpr (std::is_same_v<T, Negate>) {
                out += '-';
                print_operand(*v.operand, precedence(*v.operand) < 3, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const int lp = precedence(*v.lhs);
                const int rp = precedence(*v.rhs);
                switch (v.op) {
                    case BinaryOp::Add:
                    case BinaryOp::Sub:
                        print_operand(*v.lhs, lp < 1, out);
                        out += v.op == BinaryOp::Add ? " + " : " - ";
                        print_operand(*v.rhs, rp <= 1, out);
                        break;
                    case BinaryOp::Mul:
                    case BinaryOp::Div:
                        print_operand(*v.lhs, lp < 2, out);
                        out += v.op == BinaryOp::Mul ? "*" : "/";
                        print_operand(*v.rhs, rp <= 2, out);
                        break;
                    case BinaryOp::Pow:
                        print_operand(*v.lhs, lp < 5, out);
                        out += '^';
                        print_operand(*v.rhs, rp < 3, out);
                        break;
                }
            } else if constexpr (std::is_same_v<T, Call>) {
                out += function_name(v.function);
                out += '(';
                print(*v.argument, out);
                out += ')';
            }
        },
        node.value);
}

void collect_variables(const ExprNode& node, VariableList& out) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Variable>) {
                if (std::find(out.begin(), out.end(), v.name) == out.end()) out.push_back(v.name);
            } else if constexpr (std::is_same_v<T, Negate>) {
                collect_variables(*v.operand, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                collect_variables(*v.lhs, out);
                collect_variables(*v.rhs, out);
            } else if constexpr (std::is_same_v<T, Call>) {
                collect_variables(*v.argument, out);
            }
        },
        node.value);
}

}  // namespace

std::string_view function_name(Function f) {
    for (const auto& [fn, name] : kFunctions) {
        if (fn == f) return name;
    }
    return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
    for (const auto& [fn, n] : kFunctions) {
        if (n == name) return fn;
    }
    return std::nullopt;
}

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < source.size()) {
        const char c = source[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_digit(c) || c == '.') {
            while (i < source.size() && is_digit(source[i])) ++i;
            if (i < source.size() && source[i] == '.') {
                ++i;
                const std::size_t frac = i;
                while (i < source.size() && is_digit(source[i])) ++i;
                if (i == frac) throw ParseError("malformed number", start);
            }
            tokens.push_back({TokenKind::Number, std::string(source.substr(start, i - start)), start});
        } else if (is_alpha(c)) {
            while (i < source.size() && is_ident_tail(source[i])) ++i;
            tokens.push_back({TokenKind::Identifier, std::string(source.substr(start, i - start)), start});
        } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
            tokens.push_back({TokenKind::Operator, std::string(1, c), start});
            ++i;
        } else if (c == '(' || c == ')') {
            tokens.push_back({TokenKind::Paren, std::string(1, c), start});
            ++i;
        } else {
            const auto byte = static_cast<unsigned char>(c);
            std::string shown = byte >= 0x20 && byte < 0x7f ? std::string(1, c) : "\\x" + std::to_string(byte);
            throw ParseError("unexpected character '" + shown + "'", start);
        }
    }
    return tokens;
}

bool operator==(const ExprNode& a, const ExprNode& b) {
    if (a.value.index() != b.value.index()) return false;
    return std::visit(
        [&](const auto& va) {
            using T = std::decay_t<decltype(va)>;
            const auto& vb = std::get<T>(b.value);
            if constexpr (std::is_same_v<T, Constant>) {
                return va.value == vb.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                return va.name == vb.name;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return *va.operand == *vb.operand;
            } else if constexpr (std::is_same_v<T, Binary>) {
                return va.op == vb.op && *va.lhs == *vb.lhs && *va.rhs == *vb.rhs;
            } else {
                return va.function == vb.function && *va.argument == *vb.argument;
            }
        },
        a.value);
}

ExprPtr make_constant(Rational value, std::size_t position) {
    return std::make_shared<const ExprNode>(ExprNode{Constant{std::move(value)}, position});
}

ExprPtr make_variable(std::string name, std::size_t position) {
    return std::make_shared<const ExprNode>(ExprNode{Variable{std::move(name)}, position});
}

ExprPtr make_negate(ExprPtr operand, std::size_t position) {
    return std::make_shared<const ExprNode>(ExprNode{Negate{std::move(operand)}, position});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, std::size_t position) {
    return std::make_shared<const ExprNode>(ExprNode{Binary{op, std::move(lhs), std::move(rhs)}, position});
}

ExprPtr make_call(Function function, ExprPtr argument, std::size_t position) {
    return std::make_shared<const ExprNode>(ExprNode{Call{function, std::move(argument)}, position});
}

ExprPtr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string to_string(const ExprNode& node) {
    std::string out;
    print(node, out);
    return out;
}

VariableList variables_in_order(const ExprNode& node) {
    VariableList out;
    collect_variables(node, out);
    return out;
}

}  // namespace varsep
