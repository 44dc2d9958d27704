#include "varsep/sep_exact.hpp"

#include <algorithm>

#include "parallel.hpp"
#include "varsep/errors.hpp"

namespace varsep {

namespace {

void require_nonzero(const Polynomial& f) {
    if (f.is_zero()) throw DegenerateInput("input is the zero polynomial");
}

void require_index(const Polynomial& f, std::size_t i) {
    if (i >= f.variable_count()) throw InvalidArgument("variable index out of range");
}

// c[N_1..i_r..N_n] for i_r = 0..N_r, per variable r.
std::vector<std::vector<Rational>> corner_slices(const Polynomial& f, const std::vector<std::uint32_t>& top) {
    std::vector<std::vector<Rational>> slices(top.size());
    ExponentVector index(top.begin(), top.end());
    for (std::size_t r = 0; r < top.size(); ++r) {
        slices[r].resize(top[r] + 1);
        for (std::uint32_t k = 0; k <= top[r]; ++k) {
            index[r] = k;
            slices[r][k] = f.coefficient(index);
        }
        index[r] = top[r];
    }
    return slices;
}

// Steps `index` to its lexicographic predecessor inside the box [0, top].
bool step_down(ExponentVector& index, const std::vector<std::uint32_t>& top) {
    for (std::size_t r = index.size(); r-- > 0;) {
        if (index[r] > 0) {
            --index[r];
            return true;
        }
        index[r] = top[r];
    }
    return false;
}

// Steps `index` to its lexicographic successor inside the box [0, top].
bool step_up(ExponentVector& index, const std::vector<std::uint32_t>& top) {
    for (std::size_t r = index.size(); r-- > 0;) {
        if (index[r] < top[r]) {
            ++index[r];
            return true;
        }
        index[r] = 0;
    }
    return false;
}

SeparationResult finish(const Polynomial& f, SeparationResult result) {
    if (!verify_separation(f, result)) {
        throw VerificationError("factors do not multiply back to the input polynomial");
    }
    result.verified = true;
    return result;
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Separable: return "separable";
        case Verdict::NotSeparable: return "not separable";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Polynomial SeparationResult::expand(const VariableList& vars) const {
    Polynomial product = Polynomial::constant(vars, constant);
    for (const auto& bf : factors) product *= bf.factor;
    return product;
}

bool verify_separation(const Polynomial& f, const SeparationResult& result) {
    for (const auto& bf : result.factors) {
        if (bf.factor.vars() != f.vars()) return false;
        const auto used = bf.factor.support();
        for (std::size_t i = 0; i < used.size(); ++i) {
            if (used[i] && !std::binary_search(bf.block.begin(), bf.block.end(), i)) return false;
        }
    }
    return result.expand(f.vars()) == f;
}

Polynomial sep_matrix_entry(const Polynomial& f, std::size_t i, std::size_t j) {
    require_nonzero(f);
    require_index(f, i);
    require_index(f, j);
    if (i == j) throw InvalidArgument("diagonal entries are not separability conditions; use sep_matrix_diagonal");
    const Polynomial fi = f.partial_derivative(i);
    const Polynomial fj = f.partial_derivative(j);
    if (fi.is_zero() || fj.is_zero()) return Polynomial(f.vars());
    return f * fi.partial_derivative(j) - fi * fj;
}

Polynomial sep_matrix_diagonal(const Polynomial& f, std::size_t i) {
    require_nonzero(f);
    require_index(f, i);
    const Polynomial fi = f.partial_derivative(i);
    return f * fi.partial_derivative(i) - fi * fi;
}

SepMatrixReport finest_partition(const Polynomial& f) {
    require_nonzero(f);
    const std::size_t n = f.variable_count();
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
    }

    std::vector<char> zero(cells.size(), 0);
    detail::parallel_for(cells.size(), [&](std::size_t k) {
        const auto [i, j] = cells[k];
        zero[k] = (i == j ? sep_matrix_diagonal(f, i) : sep_matrix_entry(f, i, j)).is_zero() ? 1 : 0;
    });

    SepMatrixReport report;
    report.vanishes.assign(n, std::vector<bool>(n, false));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto [i, j] = cells[k];
        report.vanishes[i][j] = report.vanishes[j][i] = zero[k] != 0;
        if (i != j && zero[k] == 0) edges.emplace_back(i, j);
    }
    report.partition = Partition::components(n, edges);
    return report;
}

Verdict anomalous_precheck(const Polynomial& f) {
    require_nonzero(f);
    const auto top = f.degree_vector();
    return f.coefficient(ExponentVector(top.begin(), top.end())).is_zero() ? Verdict::NotSeparable
                                                                           : Verdict::Inconclusive;
}

CriterionResult coeff_criterion_total(const Polynomial& f) {
    require_nonzero(f);
    const auto top = f.degree_vector();
    const ExponentVector corner(top.begin(), top.end());
    const Rational lead = f.coefficient(corner);
    if (lead.is_zero()) return {Verdict::NotSeparable, corner};

    const std::size_t n = top.size();
    if (n <= 1) return {Verdict::Separable, std::nullopt};

    const auto slices = corner_slices(f, top);
    const Rational scale = lead.pow(static_cast<unsigned>(n - 1));
    ExponentVector index = corner;
    do {
        Rational rhs = slices[0][index[0]];
        for (std::size_t r = 1; r < n && !rhs.is_zero(); ++r) rhs *= slices[r][index[r]];
        if (scale * f.coefficient(index) != rhs) return {Verdict::NotSeparable, index};
    } while (step_down(index, top));
    return {Verdict::Separable, std::nullopt};
}

SeparationResult separate_total(const Polynomial& f) {
    const CriterionResult criterion = coeff_criterion_total(f);
    if (criterion.verdict != Verdict::Separable) throw NotSeparable("polynomial is not totally separable");

    const auto top = f.degree_vector();
    const auto slices = corner_slices(f, top);
    const std::size_t n = top.size();
    const Rational lead = f.coefficient(ExponentVector(top.begin(), top.end()));

    SeparationResult result;
    result.constant = lead;
    for (std::size_t r = 0; r < n; ++r) {
        Polynomial factor(f.vars());
        ExponentVector e(n, 0);
        for (std::uint32_t k = 0; k <= top[r]; ++k) {
            e[r] = k;
            factor.add_term(e, slices[r][k] / lead);
        }
        result.factors.push_back({{r}, std::move(factor)});
    }
    return finish(f, std::move(result));
}

SeparationResult separate_by_partition(const Polynomial& f, const Partition& partition,
                                       std::optional<std::vector<Rational>> anchor) {
    require_nonzero(f);
    const std::size_t n = f.variable_count();
    if (partition.variable_count() != n) throw InvalidArgument("partition size does not match registry");

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (partition.block_of(i) == partition.block_of(j)) continue;
            if (!sep_matrix_entry(f, i, j).is_zero()) {
                throw NotSeparable("partition is not a coarsening of the finest partition: '" + f.vars()[i] +
                                   "' and '" + f.vars()[j] + "' interact");
            }
        }
    }

    const std::vector<Rational> point = anchor ? std::move(*anchor) : anchor_search(f);
    if (point.size() != n) throw InvalidArgument("anchor dimension does not match registry");
    const Rational at_anchor = f.evaluate(point);
    if (at_anchor.is_zero()) throw InvalidArgument("polynomial vanishes at the anchor");

    SeparationResult result;
    Rational scalar(1);
    for (const auto& block : partition.blocks()) {
        std::map<std::size_t, Rational> frozen;
        for (std::size_t v = 0; v < n; ++v) {
            if (!std::binary_search(block.begin(), block.end(), v)) frozen.emplace(v, point[v]);
        }
        Polynomial margin = f.fix(frozen);
        const Rational lead = margin.leading_coefficient();
        margin *= Rational(1) / lead;
        scalar *= lead;
        result.factors.push_back({block, std::move(margin)});
    }
    const auto blocks = static_cast<unsigned>(partition.block_count());
    result.constant = blocks == 0 ? f.evaluate(point) : scalar / at_anchor.pow(blocks - 1);
    return finish(f, std::move(result));
}

std::vector<Rational> anchor_search(const Polynomial& f) {
    require_nonzero(f);
    const auto top = f.degree_vector();
    ExponentVector index(top.size(), 0);
    std::vector<Rational> point(top.size());
    do {
        for (std::size_t r = 0; r < index.size(); ++r) point[r] = Rational(static_cast<long>(index[r]));
        if (!f.evaluate(point).is_zero()) return point;
    } while (step_up(index, top));
    throw DegenerateInput("polynomial vanishes on its whole degree grid");
}

Verdict refute_by_derivative(const Polynomial& f, std::span<const unsigned> orders) {
    require_nonzero(f);
    const Polynomial d = f.derivative(orders);
    if (d.is_zero()) return Verdict::Inconclusive;
    return finest_partition(d).partition.is_all_singletons() ? Verdict::Inconclusive : Verdict::NotSeparable;
}

Verdict additive_separability(const Polynomial& f) {
    for (const auto& [e, c] : f.terms()) {
        if (std::count_if(e.begin(), e.end(), [](auto k) { return k != 0; }) > 1) return Verdict::NotSeparable;
    }
    return Verdict::Separable;
}

}  // namespace varsep
