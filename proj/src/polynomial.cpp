#include "varsep/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "varsep/errors.hpp"

namespace varsep {

namespace {

std::uint64_t degree_sum(const ExponentVector& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

// Powers base^0 .. base^max_exp.
std::vector<Rational> power_table(const Rational& base, std::uint32_t max_exp) {
    std::vector<Rational> table(max_exp + 1);
    table[0] = Rational(1);
    for (std::uint32_t k = 1; k <= max_exp; ++k) table[k] = table[k - 1] * base;
    return table;
}

void append_monomial(std::string& out, const VariableList& vars, const ExponentVector& e) {
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) out += '*';
        first = false;
        out += vars[i];
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
}

}  // namespace

bool graded_lex_greater(const ExponentVector& a, const ExponentVector& b) {
    const auto da = degree_sum(a);
    const auto db = degree_sum(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial::Polynomial(VariableList vars, TermMap terms) : vars_(std::move(vars)) {
    for (auto& [e, c] : terms) {
        if (e.size() != vars_.size()) throw InvalidArgument("exponent vector length does not match registry");
        if (!c.is_zero()) terms_.emplace(e, std::move(c));
    }
}

Polynomial Polynomial::constant(VariableList vars, const Rational& value) {
    Polynomial p(std::move(vars));
    if (!value.is_zero()) p.terms_.emplace(ExponentVector(p.vars_.size(), 0), value);
    return p;
}

Polynomial Polynomial::variable(VariableList vars, std::size_t index) {
    if (index >= vars.size()) throw InvalidArgument("variable index out of range");
    ExponentVector e(vars.size(), 0);
    e[index] = 1;
    return monomial(std::move(vars), std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(VariableList vars, ExponentVector exponents, const Rational& coef) {
    if (exponents.size() != vars.size()) throw InvalidArgument("exponent vector length does not match registry");
    Polynomial p(std::move(vars));
    if (!coef.is_zero()) p.terms_.emplace(std::move(exponents), coef);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](auto k) { return k == 0; });
}

Rational Polynomial::coefficient(const ExponentVector& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const ExponentVector& exponents, const Rational& coef) {
    if (coef.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponents, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Polynomial::require_same_registry(const Polynomial& other) const {
    if (vars_ != other.vars_) throw InvalidArgument("variable registries differ; align the operands first");
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    require_same_registry(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    require_same_registry(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    lhs.require_same_registry(rhs);
    Polynomial out(lhs.vars_);
    ExponentVector e(lhs.vars_.size());
    for (const auto& [ea, ca] : lhs.terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial& Polynomial::operator*=(const Rational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= scalar;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(*this);
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result = constant(vars_, Rational(1));
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

Polynomial Polynomial::partial_derivative(std::size_t index) const {
    if (index >= vars_.size()) throw InvalidArgument("derivative variable index out of range");
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0) continue;
        ExponentVector d = e;
        --d[index];
        out.terms_.emplace(std::move(d), c * Rational(static_cast<long>(e[index])));
    }
    return out;
}

Polynomial Polynomial::derivative(std::span<const unsigned> orders) const {
    if (orders.size() != vars_.size()) throw InvalidArgument("derivative multi-index length does not match registry");
    Polynomial out = *this;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        for (unsigned k = 0; k < orders[i] && !out.is_zero(); ++k) out = out.partial_derivative(i);
    }
    return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != vars_.size()) throw InvalidArgument("point dimension does not match registry");
    if (terms_.empty()) return Rational(0);
    const auto degrees = degree_vector();
    std::vector<std::vector<Rational>> powers;
    powers.reserve(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) powers.push_back(power_table(point[i], degrees[i]));

    Rational sum;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) term *= powers[i][e[i]];
        }
        sum += term;
    }
    return sum;
}

Polynomial Polynomial::fix(const std::map<std::size_t, Rational>& fixed) const {
    for (const auto& [index, value] : fixed) {
        if (index >= vars_.size()) throw InvalidArgument("margin variable index out of range");
    }
    if (fixed.empty() || terms_.empty()) return *this;

    const auto degrees = degree_vector();
    std::map<std::size_t, std::vector<Rational>> powers;
    for (const auto& [index, value] : fixed) powers.emplace(index, power_table(value, degrees[index]));

    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        Rational coef = c;
        ExponentVector rest = e;
        for (const auto& [index, table] : powers) {
            coef *= table[e[index]];
            rest[index] = 0;
        }
        out.add_term(rest, coef);
    }
    return out;
}

Polynomial Polynomial::margin(const std::map<std::size_t, Rational>& fixed) const {
    const Polynomial substituted = fix(fixed);
    VariableList remaining;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!fixed.contains(i)) {
            remaining.push_back(vars_[i]);
            kept.push_back(i);
        }
    }
    Polynomial out(remaining);
    for (const auto& [e, c] : substituted.terms_) {
        ExponentVector shrunk(kept.size());
        for (std::size_t k = 0; k < kept.size(); ++k) shrunk[k] = e[kept[k]];
        out.terms_.emplace(std::move(shrunk), c);
    }
    return out;
}

std::vector<std::uint32_t> Polynomial::degree_vector() const {
    if (terms_.empty()) throw DegenerateInput("degree of the zero polynomial is undefined");
    std::vector<std::uint32_t> degrees(vars_.size(), 0);
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) degrees[i] = std::max(degrees[i], e[i]);
    }
    return degrees;
}

std::uint32_t Polynomial::total_degree() const {
    if (terms_.empty()) throw DegenerateInput("degree of the zero polynomial is undefined");
    std::uint64_t best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, degree_sum(e));
    return static_cast<std::uint32_t>(best);
}

std::pair<ExponentVector, Rational> Polynomial::leading_term() const {
    if (terms_.empty()) throw DegenerateInput("the zero polynomial has no leading term");
    auto best = terms_.begin();
    for (auto it = std::next(best); it != terms_.end(); ++it) {
        if (graded_lex_greater(it->first, best->first)) best = it;
    }
    return *best;
}

std::vector<bool> Polynomial::support() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) used[i] = true;
        }
    }
    return used;
}

Polynomial Polynomial::with_vars(const VariableList& vars) const {
    std::vector<std::size_t> position(vars_.size(), vars.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it != vars.end()) position[i] = static_cast<std::size_t>(it - vars.begin());
    }
    const auto used = support();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (used[i] && position[i] == vars.size()) {
            throw InvalidArgument("variable '" + vars_[i] + "' missing from target registry");
        }
    }
    Polynomial out(vars);
    for (const auto& [e, c] : terms_) {
        ExponentVector mapped(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) mapped[position[i]] = e[i];
        }
        out.terms_.emplace(std::move(mapped), c);
    }
    return out;
}

Polynomial Polynomial::apply_affine_transform(const std::vector<std::vector<Rational>>& transform,
                                              const std::vector<Rational>& shift,
                                              VariableList new_vars) const {
    const std::size_t n = vars_.size();
    if (new_vars.empty()) new_vars = vars_;
    if (transform.size() != n || shift.size() != n || new_vars.size() != n) {
        throw InvalidArgument("affine transform dimension does not match registry");
    }
    for (const auto& row : transform) {
        if (row.size() != n) throw InvalidArgument("affine transform matrix must be square");
    }

    std::vector<Polynomial> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial image = constant(new_vars, shift[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (!transform[i][j].is_zero()) image += variable(new_vars, j) * transform[i][j];
        }
        images.push_back(std::move(image));
    }

    Polynomial out(new_vars);
    if (terms_.empty()) return out;
    const auto degrees = degree_vector();
    std::vector<std::vector<Polynomial>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        powers[i].push_back(constant(new_vars, Rational(1)));
        for (std::uint32_t k = 1; k <= degrees[i]; ++k) powers[i].push_back(powers[i].back() * images[i]);
    }
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(new_vars, c);
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] != 0) term *= powers[i][e[i]];
        }
        out += term;
    }
    return out;
}

std::vector<std::pair<ExponentVector, Rational>> Polynomial::sorted_terms() const {
    std::vector<std::pair<ExponentVector, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return graded_lex_greater(a.first, b.first); });
    return out;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : sorted_terms()) {
        const bool negative = c.sign() < 0;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;

        const Rational magnitude = c.abs();
        const bool bare = std::all_of(e.begin(), e.end(), [](auto k) { return k == 0; });
        if (bare) {
            out += magnitude.to_string();
        } else {
            if (magnitude != Rational(1)) out += magnitude.to_string() + '*';
            append_monomial(out, vars_, e);
        }
    }
    return out;
}

VariableList merge_registries(const VariableList& a, const VariableList& b) {
    VariableList merged = a;
    for (const auto& name : b) {
        if (std::find(merged.begin(), merged.end(), name) == merged.end()) merged.push_back(name);
    }
    return merged;
}

std::pair<Polynomial, Polynomial> align(const Polynomial& a, const Polynomial& b) {
    const auto merged = merge_registries(a.vars(), b.vars());
    return {a.with_vars(merged), b.with_vars(merged)};
}

}  // namespace varsep
