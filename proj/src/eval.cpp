#include <algorithm>
#include <cmath>

#include "varsep/errors.hpp"
#include "varsep/expr.hpp"

namespace varsep {

CompiledExpr::CompiledExpr(ExprPtr expr, VariableList vars) : expr_(std::move(expr)), vars_(std::move(vars)) {
    emit(*expr_);
}

void CompiledExpr::emit(const ExprNode& node) {
    using Code = Instruction::Code;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                program_.push_back({Code::Constant, v.value.to_double(), 0, Function::Sin, &node});
            } else if constexpr (std::is_same_v<T, Variable>) {
                auto it = std::find(vars_.begin(), vars_.end(), v.name);
                if (it == vars_.end()) throw EvalError("unbound variable '" + v.name + "'");
                program_.push_back({Code::Load, 0.0, static_cast<std::size_t>(it - vars_.begin()), Function::Sin, &node});
            } else if constexpr (std::is_same_v<T, Negate>) {
                emit(*v.operand);
                program_.push_back({Code::Negate, 0.0, 0, Function::Sin, &node});
            } else if constexpr (std::is_same_v<T, Binary>) {
                emit(*v.lhs);
                emit(*v.rhs);
                Code code = Code::Add;
                switch (v.op) {
                    case BinaryOp::Add: code = Code::Add; break;
                    case BinaryOp::Sub: code = Code::Sub; break;
                    case BinaryOp::Mul: code = Code::Mul; break;
                    case BinaryOp::Div: code = Code::Div; break;
                    case BinaryOp::Pow: code = Code::Pow; break;
                }
                program_.push_back({code, 0.0, 0, Function::Sin, &node});
            } else if constexpr (std::is_same_v<T, Call>) {
                emit(*v.argument);
                program_.push_back({Code::Call, 0.0, 0, v.function, &node});
            }
        },
        node.value);
}

double CompiledExpr::operator()(std::span<const double> point) const {
    using Code = Instruction::Code;
    if (point.size() != vars_.size()) throw InvalidArgument("evaluation point dimension does not match variables");

    std::vector<double> stack;
    stack.reserve(program_.size());
    for (const auto& ins : program_) {
        double result = 0.0;
        switch (ins.code) {
            case Code::Constant: result = ins.constant; break;
            case Code::Load: result = point[ins.index]; break;
            case Code::Negate: result = -stack.back(); stack.pop_back(); break;
            case Code::Call: {
                const double x = stack.back();
                stack.pop_back();
                switch (ins.function) {
                    case Function::Sin: result = std::sin(x); break;
                    case Function::Cos: result = std::cos(x); break;
                    case Function::Tan: result = std::tan(x); break;
                    case Function::Exp: result = std::exp(x); break;
                    case Function::Abs: result = std::fabs(x); break;
                    case Function::Ln:
                        if (!(x > 0.0)) throw DomainError("ln of a nonpositive value", to_string(*ins.node));
                        result = std::log(x);
                        break;
                }
                break;
            }
            default: {
                const double b = stack.back();
                stack.pop_back();
                const double a = stack.back();
                stack.pop_back();
                switch (ins.code) {
                    case Code::Add: result = a + b; break;
                    case Code::Sub: result = a - b; break;
                    case Code::Mul: result = a * b; break;
                    case Code::Div:
                        if (b == 0.0) throw DomainError("division by zero", to_string(*ins.node));
                        result = a / b;
                        break;
                    case Code::Pow:
                        if (a == 0.0 && b < 0.0) throw DomainError("division by zero", to_string(*ins.node));
                        result = std::pow(a, b);
                        break;
                    default: break;
                }
                break;
            }
        }
        if (!std::isfinite(result)) throw DomainError("non-finite result", to_string(*ins.node));
        stack.push_back(result);
    }
    return stack.back();
}

double eval_float(const ExprNode& node, const std::map<std::string, double>& point) {
    VariableList vars;
    std::vector<double> values;
    for (const auto& name : variables_in_order(node)) {
        auto it = point.find(name);
        if (it == point.end()) throw EvalError("unbound variable '" + name + "'");
        vars.push_back(name);
        values.push_back(it->second);
    }
    // Non-owning handle: the caller keeps `node` alive for the duration of the call.
    ExprPtr handle(std::shared_ptr<const ExprNode>{}, &node);
    return CompiledExpr(handle, std::move(vars))(values);
}

}  // namespace varsep
