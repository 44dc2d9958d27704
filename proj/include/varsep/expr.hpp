#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "varsep/polynomial.hpp"
#include "varsep/rational.hpp"

namespace varsep {

enum class TokenKind { Number, Identifier, Operator, Paren };

struct Token {
    TokenKind kind;
    std::string lexeme;
    std::size_t position;  // byte offset into the source
};

/// Splits `source` into tokens. Throws ParseError on a stray character.
std::vector<Token> tokenize(std::string_view source);

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sin, Cos, Tan, Exp, Ln, Abs };

std::string_view function_name(Function f);
std::optional<Function> function_from_name(std::string_view name);

struct Constant {
    Rational value;
};

struct Variable {
    std::string name;
};

struct Negate {
    ExprPtr operand;
};

struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Call {
    Function function;
    ExprPtr argument;
};

/// Immutable AST node. `position` is the byte offset where the node starts
/// in its source and does not take part in equality.
struct ExprNode {
    std::variant<Constant, Variable, Negate, Binary, Call> value;
    std::size_t position = 0;

    friend bool operator==(const ExprNode& a, const ExprNode& b);
};

ExprPtr make_constant(Rational value, std::size_t position = 0);
ExprPtr make_variable(std::string name, std::size_t position = 0);
ExprPtr make_negate(ExprPtr operand, std::size_t position = 0);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, std::size_t position = 0);
ExprPtr make_call(Function function, ExprPtr argument, std::size_t position = 0);

/// Parses an arithmetic expression. Precedence from loosest to tightest:
/// `+ -`, `* /`, unary `-`, `^` (right associative). Throws ParseError.
ExprPtr parse(std::string_view source);

/// Prints with the minimum parentheses needed for `parse` to rebuild the
/// same tree.
std::string to_string(const ExprNode& node);

/// Variable names in order of first occurrence.
VariableList variables_in_order(const ExprNode& node);

/// Expands a polynomial expression over `vars`. Throws LoweringError for
/// function calls, non-literal or negative exponents, division by anything
/// but a nonzero constant, and variables missing from `vars`.
Polynomial lower_to_polynomial(const ExprNode& node, const VariableList& vars);

/// Floating-point evaluator bound to a fixed variable order. Resolves names
/// once so repeated evaluation only walks a flat instruction list.
class CompiledExpr {
public:
    /// Throws EvalError if the expression uses a variable not in `vars`.
    CompiledExpr(ExprPtr expr, VariableList vars);

    const VariableList& vars() const noexcept { return vars_; }
    const ExprNode& expr() const noexcept { return *expr_; }

    /// Throws DomainError for ln of a nonpositive value, division by zero or
    /// any non-finite intermediate.
    double operator()(std::span<const double> point) const;

private:
    struct Instruction {
        enum class Code { Constant, Load, Negate, Add, Sub, Mul, Div, Pow, Call } code;
        double constant = 0.0;
        std::size_t index = 0;
        Function function = Function::Sin;
        const ExprNode* node = nullptr;
    };

    void emit(const ExprNode& node);

    ExprPtr expr_;
    VariableList vars_;
    std::vector<Instruction> program_;
};

/// Evaluates with every free variable bound in `point`. Throws EvalError for
/// an unbound variable and DomainError as CompiledExpr does.
double eval_float(const ExprNode& node, const std::map<std::string, double>& point);

}  // namespace varsep
