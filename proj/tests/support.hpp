#pragma once

// Shared fixtures, generators and brute-force oracles for the test suites.
// The oracles only use polynomial ring operations and substitution; none of
// them calls into the separability engines they are used to check.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "varsep/expr.hpp"
#include "varsep/partition.hpp"
#include "varsep/polynomial.hpp"

namespace varsep::testing {

inline Polynomial poly(const std::string& source, VariableList vars = {}) {
    auto e = parse(source);
    if (vars.empty()) vars = variables_in_order(*e);
    return lower_to_polynomial(*e, vars);
}

/// The 5x4 coefficient matrix of the two-variable worked example: rows are
/// x^4..x^0, columns y^3..y^0.
inline Polynomial two_var_example() {
    const long m[5][4] = {{1, 2, -1, 3}, {-3, -6, 3, -9}, {5, 10, -5, 15}, {2, 4, -2, 6}, {7, 14, -7, 21}};
    Polynomial p({"x", "y"});
    for (std::uint32_t row = 0; row < 5; ++row) {
        for (std::uint32_t col = 0; col < 4; ++col) p.add_term({4 - row, 3 - col}, Rational(m[row][col]));
    }
    return p;
}

inline Polynomial three_var_example() {
    return poly("x^2*y^3*z^4 + 2*x^2*y^3*z + x^2*y*z^4 + 2*x^2*y*z + 2*x*y^3*z^4 + 4*x*y^3*z + 2*x*y*z^4 + "
                "4*x*y*z + 3*y^3*z^4 + 6*y^3*z + 3*y*z^4 + 6*y*z",
                {"x", "y", "z"});
}

inline VariableList numbered_vars(std::size_t n) {
    VariableList vars;
    for (std::size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    return vars;
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    long nonzero(long lo, long hi) {
        long v = 0;
        while (v == 0) v = integer(lo, hi);
        return v;
    }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937_64& engine() { return rng_; }

    /// Univariate polynomial in variable `index` with the given degree and a
    /// leading coefficient of 1.
    Polynomial monic_univariate(const VariableList& vars, std::size_t index, std::uint32_t degree, long lo, long hi) {
        Polynomial p(vars);
        ExponentVector e(vars.size(), 0);
        for (std::uint32_t k = 0; k < degree; ++k) {
            e[index] = k;
            p.add_term(e, Rational(integer(lo, hi)));
        }
        e[index] = degree;
        p.add_term(e, Rational(1));
        return p;
    }

    /// Random polynomial in the variables of `block` with per-variable degree
    /// at most `max_degree`; never zero.
    Polynomial block_polynomial(const VariableList& vars, const std::vector<std::size_t>& block,
                                std::uint32_t max_degree, long lo, long hi, double density = 0.6) {
        Polynomial p(vars);
        while (p.is_zero()) {
            ExponentVector top(vars.size(), 0);
            for (std::size_t v : block) top[v] = max_degree;
            ExponentVector e(vars.size(), 0);
            for (;;) {
                if (coin(density)) p.add_term(e, Rational(integer(lo, hi)));
                std::size_t k = block.size();
                while (k-- > 0) {
                    if (++e[block[k]] <= top[block[k]]) break;
                    e[block[k]] = 0;
                }
                if (k == static_cast<std::size_t>(-1)) break;
            }
        }
        return p;
    }

    /// Random polynomial in all variables, each exponent at most `max_degree`.
    Polynomial dense_random(const VariableList& vars, std::uint32_t max_degree, long lo, long hi, double density) {
        std::vector<std::size_t> all(vars.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return block_polynomial(vars, all, max_degree, lo, hi, density);
    }

private:
    std::mt19937_64 rng_;
};

/// Every set partition of {0..n-1}, via restricted growth strings.
inline std::vector<Partition> all_partitions(std::size_t n) {
    std::vector<Partition> out;
    std::vector<std::size_t> label(n, 0);
    auto emit = [&] {
        std::size_t blocks = 0;
        for (auto l : label) blocks = std::max(blocks, l + 1);
        std::vector<Partition::Block> b(blocks);
        for (std::size_t i = 0; i < n; ++i) b[label[i]].push_back(i);
        out.emplace_back(std::move(b));
    };
    if (n == 0) return {Partition()};
    for (;;) {
        emit();
        std::size_t i = n;
        bool advanced = false;
        while (i-- > 1) {
            std::size_t max_prefix = 0;
            for (std::size_t k = 0; k < i; ++k) max_prefix = std::max(max_prefix, label[k]);
            if (label[i] <= max_prefix) {
                ++label[i];
                for (std::size_t k = i + 1; k < n; ++k) label[k] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) return out;
    }
}

/// A point with small integer coordinates where f does not vanish, found by
/// scanning a growing box.
inline std::vector<Rational> nonvanishing_point(const Polynomial& f) {
    const std::size_t n = f.variable_count();
    for (long radius = 0;; ++radius) {
        std::vector<long> c(n, -radius);
        for (;;) {
            std::vector<Rational> point(c.begin(), c.end());
            if (!f.evaluate(point).is_zero()) return point;
            std::size_t k = n;
            while (k-- > 0) {
                if (++c[k] <= radius) break;
                c[k] = -radius;
            }
            if (k == static_cast<std::size_t>(-1)) break;
        }
    }
}

/// Margin oracle: f separates over `q` iff f(a)^(r-1) * f equals the product
/// of its margins with every other block frozen at a nonvanishing point a.
inline bool separates_by_margins(const Polynomial& f, const Partition& q) {
    const auto a = nonvanishing_point(f);
    const Rational fa = f.evaluate(a);
    Polynomial product = Polynomial::constant(f.vars(), Rational(1));
    for (const auto& block : q.blocks()) {
        std::map<std::size_t, Rational> frozen;
        for (std::size_t v = 0; v < f.variable_count(); ++v) {
            if (std::find(block.begin(), block.end(), v) == block.end()) frozen.emplace(v, a[v]);
        }
        product *= f.fix(frozen);
    }
    Polynomial lhs = f;
    lhs *= fa.pow(static_cast<unsigned>(q.block_count() - 1));
    return lhs == product;
}

/// Finest partition by exhaustive search over all set partitions.
inline Partition brute_force_finest(const Polynomial& f) {
    Partition best = Partition::single_block(f.variable_count());
    for (const auto& q : all_partitions(f.variable_count())) {
        if (q.block_count() > best.block_count() && separates_by_margins(f, q)) best = q;
    }
    return best;
}

/// Exact evaluation of an expression tree with rational arithmetic.
inline Rational eval_exact(const ExprNode& node, const std::map<std::string, Rational>& point) {
    return std::visit(
        [&](const auto& v) -> Rational {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                return point.at(v.name);
            } else if constexpr (std::is_same_v<T, Negate>) {
                return -eval_exact(*v.operand, point);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const Rational a = eval_exact(*v.lhs, point);
                const Rational b = eval_exact(*v.rhs, point);
                switch (v.op) {
                    case BinaryOp::Add: return a + b;
                    case BinaryOp::Sub: return a - b;
                    case BinaryOp::Mul: return a * b;
                    case BinaryOp::Div: return a / b;
                    case BinaryOp::Pow: return a.pow(static_cast<unsigned>(b.numerator().get_ui()));
                }
                return {};
            } else {
                throw std::logic_error("exact evaluation of a function call");
            }
        },
        node.value);
}

}  // namespace varsep::testing
