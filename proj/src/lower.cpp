#include <algorithm>
#include <limits>

#include "varsep/errors.hpp"
#include "varsep/expr.hpp"

namespace varsep {

namespace {

class Lowering {
public:
    explicit Lowering(const VariableList& vars) : vars_(vars) {}

    Polynomial lower(const ExprNode& node) const {
        return std::visit([&](const auto& v) { return lower_node(v, node.position); }, node.value);
    }

private:
    Polynomial lower_node(const Constant& c, std::size_t) const { return Polynomial::constant(vars_, c.value); }

    Polynomial lower_node(const Variable& v, std::size_t position) const {
        auto it = std::find(vars_.begin(), vars_.end(), v.name);
        if (it == vars_.end()) throw LoweringError("variable '" + v.name + "' is not registered", position);
        return Polynomial::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
    }

    Polynomial lower_node(const Negate& n, std::size_t) const { return -lower(*n.operand); }

    Polynomial lower_node(const Binary& b, std::size_t position) const {
        switch (b.op) {
            case BinaryOp::Add: return lower(*b.lhs) + lower(*b.rhs);
            case BinaryOp::Sub: return lower(*b.lhs) - lower(*b.rhs);
            case BinaryOp::Mul: return lower(*b.lhs) * lower(*b.rhs);
            case BinaryOp::Div: {
                const Polynomial divisor = lower(*b.rhs);
                if (!divisor.is_constant()) {
                    throw LoweringError("division by a non-constant is not polynomial", b.rhs->position);
                }
                if (divisor.is_zero()) throw LoweringError("division by zero", b.rhs->position);
                return lower(*b.lhs) * (Rational(1) / divisor.terms().begin()->second);
            }
            case BinaryOp::Pow: {
                const auto* literal = std::get_if<Constant>(&b.rhs->value);
                if (literal == nullptr || !literal->value.is_integer() || literal->value.sign() < 0) {
                    throw LoweringError("exponent must be a nonnegative integer literal", b.rhs->position);
                }
                const mpz_class e = literal->value.numerator();
                if (!e.fits_uint_p()) throw LoweringError("exponent too large", b.rhs->position);
                return lower(*b.lhs).pow(static_cast<unsigned>(e.get_ui()));
            }
        }
        throw LoweringError("unsupported operator", position);
    }

    Polynomial lower_node(const Call& c, std::size_t position) const {
        throw LoweringError("function '" + std::string(function_name(c.function)) + "' is not polynomial", position);
    }

    const VariableList& vars_;
};

}  // namespace

Polynomial lower_to_polynomial(const ExprNode& node, const VariableList& vars) { return Lowering(vars).lower(node); }

}  // namespace varsep
