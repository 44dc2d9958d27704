#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "varsep/rational.hpp"

namespace varsep {

/// One exponent per registered variable.
using ExponentVector = std::vector<std::uint32_t>;

/// Ordered list of variable names. Index i is variable x_i.
using VariableList = std::vector<std::string>;

/// Graded lexicographic "greater than" under registry order: higher total
/// degree first, ties broken by the first differing exponent.
bool graded_lex_greater(const ExponentVector& a, const ExponentVector& b);

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The variable registry is part of the value: two polynomials over
/// different registries are different objects and ring operations between
/// them are rejected (use `align` first). No zero coefficient is ever stored,
/// so the zero polynomial is the empty term map.
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, Rational>;

    Polynomial() = default;
    explicit Polynomial(VariableList vars) : vars_(std::move(vars)) {}
    Polynomial(VariableList vars, TermMap terms);

    static Polynomial constant(VariableList vars, const Rational& value);
    static Polynomial variable(VariableList vars, std::size_t index);
    static Polynomial monomial(VariableList vars, ExponentVector exponents, const Rational& coef);

    const VariableList& vars() const noexcept { return vars_; }
    std::size_t variable_count() const noexcept { return vars_.size(); }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;

    /// Coefficient of the given monomial, zero when absent.
    Rational coefficient(const ExponentVector& exponents) const;

    /// Adds `coef` to the coefficient of `exponents`, erasing it if it cancels.
    void add_term(const ExponentVector& exponents, const Rational& coef);

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& scalar);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend Polynomial operator*(Polynomial lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Polynomial operator*(const Rational& lhs, Polynomial rhs) { return rhs *= lhs; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    Polynomial pow(unsigned exponent) const;

    /// Exact derivative with respect to variable `index`.
    Polynomial partial_derivative(std::size_t index) const;

    /// Mixed partial derivative; `orders[i]` is the order in variable i.
    Polynomial derivative(std::span<const unsigned> orders) const;

    Rational evaluate(std::span<const Rational> point) const;

    /// Substitutes the fixed variables and keeps the registry unchanged; the
    /// fixed variables no longer occur in the result.
    Polynomial fix(const std::map<std::size_t, Rational>& fixed) const;

    /// Substitutes the fixed variables and drops them from the registry.
    Polynomial margin(const std::map<std::size_t, Rational>& fixed) const;

    /// Per-variable maximum exponent. Throws DegenerateInput for zero.
    std::vector<std::uint32_t> degree_vector() const;
    std::uint32_t total_degree() const;

    /// Largest term under graded lex. Throws DegenerateInput for zero.
    std::pair<ExponentVector, Rational> leading_term() const;
    Rational leading_coefficient() const { return leading_term().second; }

    /// Variables that occur with a positive exponent in some term.
    std::vector<bool> support() const;

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that occurs in this polynomial.
    Polynomial with_vars(const VariableList& vars) const;

    /// Substitutes x_i -> sum_j T[i][j] * y_j + b[i]. The result lives over
    /// `new_vars` (defaults to the current registry).
    Polynomial apply_affine_transform(const std::vector<std::vector<Rational>>& transform,
                                      const std::vector<Rational>& shift,
                                      VariableList new_vars = {}) const;

    /// Terms in graded-lex descending order.
    std::vector<std::pair<ExponentVector, Rational>> sorted_terms() const;

    /// Canonical text: graded-lex descending, explicit * and ^, re-parseable.
    std::string to_string() const;

private:
    void require_same_registry(const Polynomial& other) const;

    VariableList vars_;
    TermMap terms_;
};

/// Union registry: `a`'s variables in order, then `b`'s new names in order.
VariableList merge_registries(const VariableList& a, const VariableList& b);

/// Both polynomials re-expressed over the merged registry.
std::pair<Polynomial, Polynomial> align(const Polynomial& a, const Polynomial& b);

}  // namespace varsep
