#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "varsep/expr.hpp"
#include "varsep/partition.hpp"

namespace varsep {

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr double kDegeneracyFloor = 1e-300;
/// Grid tests divide by at least this fraction of f(a)^2 (pairs) or |f(a)|
/// (reconstruction), so points on a zero set of f compare as noise.
inline constexpr double kNoiseFloor = 1e-6;
inline constexpr std::size_t kDefaultSampleBudget = 1'000'000;

/// `count` evenly spaced values from `start` to `stop` inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

/// Sample coordinates for each variable plus the policy for visiting them.
class SampleGrid {
public:
    enum class Strategy {
        Cartesian,    // every coordinate pair of every variable pair
        RandomPairs,  // budget / pair_count random coordinate pairs per variable pair
    };

    /// Throws InvalidArgument unless each variable has at least two distinct
    /// coordinates and the budget covers one sample per variable pair.
    explicit SampleGrid(std::vector<std::vector<double>> coordinates, Strategy strategy = Strategy::Cartesian,
                        std::size_t budget = kDefaultSampleBudget, std::uint64_t seed = 0);

    /// Same coordinates for all `n` variables.
    static SampleGrid uniform(std::size_t n, double start = -1.2, double stop = 1.2, std::size_t count = 9);

    const std::vector<std::vector<double>>& coordinates() const noexcept { return coordinates_; }
    std::size_t variable_count() const noexcept { return coordinates_.size(); }
    Strategy strategy() const noexcept { return strategy_; }
    std::size_t budget() const noexcept { return budget_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::vector<std::vector<double>> coordinates_;
    Strategy strategy_;
    std::size_t budget_;
    std::uint64_t seed_;
};

/// Parses "name=start:stop:count" into a name and its coordinates.
std::pair<std::string, std::vector<double>> parse_grid_spec(std::string_view spec);

enum class NumericKind { Separable, Partition, NotSeparable };

std::string_view to_string(NumericKind kind);

struct NumericVerdict {
    VariableList vars;
    /// residuals[i][j]: largest relative margin residual seen for the pair.
    std::vector<std::vector<double>> residuals;
    std::vector<double> anchor;
    double tolerance = kDefaultTolerance;
    NumericKind kind = NumericKind::NotSeparable;
    Partition partition;
    std::size_t samples = 0;
    std::size_t skipped = 0;
};

/// |f(a)f(x) - f(x_I, a_J) f(a_I, x_J)| / max(|f(a)f(x)|, |f(x_I, a_J) f(a_I, x_J)|, floor).
/// `in_block[i]` marks the variables of I. Throws DegenerateInput if |f(a)|
/// is at or below the floor; DomainError propagates from evaluation.
double margin_residual(const CompiledExpr& f, const std::vector<bool>& in_block, std::span<const double> anchor,
                       std::span<const double> x, double floor = kDegeneracyFloor);

/// Pairwise margin tests around an anchor: for each pair (i, j) only x_i and
/// x_j move, the rest stay at the anchor. Residuals use the floor
/// max(kDegeneracyFloor, kNoiseFloor * f(a)^2). Pairs whose worst residual exceeds
/// `tol` are joined; the partition is the connected components. The anchor
/// defaults to the sampled point of largest |f|. Sample points that raise a
/// domain error are skipped; more than half skipped throws DegenerateInput.
NumericVerdict numeric_finest_partition(const CompiledExpr& f, const SampleGrid& grid,
                                        double tol = kDefaultTolerance,
                                        std::optional<std::vector<double>> anchor = std::nullopt);

struct FactorTable {
    Partition::Block block;
    std::vector<std::vector<double>> coordinates;  // one row per sample, values of the block's variables
    std::vector<double> values;
};

struct FactorSamples {
    std::vector<FactorTable> tables;
    /// Largest relative gap between the product of tables and f over the checked points.
    double reconstruction_residual = 0.0;
    std::size_t checked = 0;
    std::size_t skipped = 0;
};

/// Sampled factors G_s(x_s) = f(x_s, a_rest), with every block but the last
/// divided by f(a) so that the product of the tables reproduces f. Gaps are
/// relative with the floor max(kDegeneracyFloor, kNoiseFloor * |f(a)|). Throws
/// NotSeparable if the reconstruction misses f by more than 10 * tol.
FactorSamples numeric_factor_samples(const CompiledExpr& f, const SampleGrid& grid, const Partition& partition,
                                     std::span<const double> anchor, double tol = kDefaultTolerance);

}  // namespace varsep
