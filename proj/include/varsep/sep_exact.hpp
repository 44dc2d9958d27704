#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "varsep/partition.hpp"
#include "varsep/polynomial.hpp"
#include "varsep/rational.hpp"

namespace varsep {

enum class Verdict { Separable, NotSeparable, Inconclusive };

std::string_view to_string(Verdict v);

/// Pairwise vanishing table of M_ij = F*F_ij - F_i*F_j and the partition it induces.
struct SepMatrixReport {
    /// vanishes[i][j] is true when M_ij is identically zero. The diagonal is
    /// filled in (M_ii = 0 is the condition for staying separable under every
    /// affine change of variables) but never feeds the partition.
    std::vector<std::vector<bool>> vanishes;
    Partition partition;
};

struct CriterionResult {
    Verdict verdict = Verdict::Inconclusive;
    /// First index tuple whose coefficient breaks the rank-1 condition.
    std::optional<ExponentVector> violation;
};

struct BlockFactor {
    Partition::Block block;
    Polynomial factor;  // over the full registry, monic under graded lex
};

struct SeparationResult {
    Rational constant;
    std::vector<BlockFactor> factors;
    bool verified = false;

    /// constant * product of factors.
    Polynomial expand(const VariableList& vars) const;
};

/// F*F_ij - F_i*F_j for i != j.
Polynomial sep_matrix_entry(const Polynomial& f, std::size_t i, std::size_t j);

/// F*F_ii - F_i^2.
Polynomial sep_matrix_diagonal(const Polynomial& f, std::size_t i);

/// Connected components of the graph with an edge wherever M_ij is not
/// identically zero. F separates over a partition Q exactly when Q is a
/// coarsening of the returned partition.
SepMatrixReport finest_partition(const Polynomial& f);

/// NotSeparable when the coefficient of x_1^N_1 ... x_n^N_n (per-variable
/// maximum degrees) is zero, Inconclusive otherwise.
Verdict anomalous_precheck(const Polynomial& f);

/// Rank-1 test on the dense coefficient box: with L the leading product
/// coefficient, checks L^(n-1) * c[i_1..i_n] == prod_r c[N_1..i_r..N_n] for
/// every index tuple. Scans from the top corner down in lexicographic order.
CriterionResult coeff_criterion_total(const Polynomial& f);

/// Total separation from the coefficient slices through the top corner.
/// Throws NotSeparable if the criterion fails, VerificationError if the
/// re-multiplied factors disagree with the input.
SeparationResult separate_total(const Polynomial& f);

/// Separation according to `partition` by freezing all other blocks at an
/// anchor a with F(a) != 0 and using F(a)^(r-1) * F = prod_s F(x_s, a_rest).
/// Throws NotSeparable if `partition` is not a coarsening of the finest
/// partition.
SeparationResult separate_by_partition(const Polynomial& f, const Partition& partition,
                                       std::optional<std::vector<Rational>> anchor = std::nullopt);

/// First point of the integer grid prod_i {0..N_i}, in lexicographic order,
/// where F does not vanish.
std::vector<Rational> anchor_search(const Polynomial& f);

/// Differentiates by `orders` and reports NotSeparable if the derivative is
/// not totally separable; a separable or zero derivative proves nothing.
Verdict refute_by_derivative(const Polynomial& f, std::span<const unsigned> orders);

/// Separable iff no monomial mixes two variables.
Verdict additive_separability(const Polynomial& f);

/// Exact check that result.constant * prod factors == f.
bool verify_separation(const Polynomial& f, const SeparationResult& result);

}  // namespace varsep
