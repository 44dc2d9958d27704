#include "varsep/sep_numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "parallel.hpp"
#include "varsep/errors.hpp"

namespace varsep {

namespace {

// Product of the sizes, saturating at SIZE_MAX.
std::size_t grid_size(const std::vector<std::size_t>& sizes) {
    std::size_t total = 1;
    for (std::size_t s : sizes) {
        if (s != 0 && total > std::numeric_limits<std::size_t>::max() / s) return std::numeric_limits<std::size_t>::max();
        total *= s;
    }
    return total;
}

// Visits index tuples of the box prod [0, sizes[i]): all of them when the box
// fits in `budget`, otherwise `budget` uniform random tuples.
template <typename Visit>
void visit_indices(const std::vector<std::size_t>& sizes, std::size_t budget, std::uint64_t seed, Visit visit) {
    std::vector<std::size_t> index(sizes.size(), 0);
    if (grid_size(sizes) <= budget) {
        while (true) {
            visit(index);
            std::size_t r = sizes.size();
            while (r-- > 0) {
                if (++index[r] < sizes[r]) break;
                index[r] = 0;
            }
            if (r == static_cast<std::size_t>(-1)) return;
        }
    }
    std::mt19937_64 rng(seed);
    for (std::size_t draw = 0; draw < budget; ++draw) {
        for (std::size_t r = 0; r < sizes.size(); ++r) {
            index[r] = std::uniform_int_distribution<std::size_t>(0, sizes[r] - 1)(rng);
        }
        visit(index);
    }
}

std::optional<double> try_eval(const CompiledExpr& f, std::span<const double> point) {
    try {
        return f(point);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

double relative_gap(double a, double b, double floor) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor});
}

std::vector<double> pick_anchor(const CompiledExpr& f, const SampleGrid& grid) {
    const auto& coords = grid.coordinates();
    std::vector<std::size_t> sizes;
    for (const auto& c : coords) sizes.push_back(c.size());

    std::vector<double> best;
    double best_magnitude = -1.0;
    std::vector<double> point(coords.size());
    visit_indices(sizes, grid.budget(), grid.seed(), [&](const std::vector<std::size_t>& index) {
        for (std::size_t r = 0; r < coords.size(); ++r) point[r] = coords[r][index[r]];
        if (auto value = try_eval(f, point); value && std::fabs(*value) > best_magnitude) {
            best_magnitude = std::fabs(*value);
            best = point;
        }
    });
    if (best_magnitude <= kDegeneracyFloor) throw DegenerateInput("no usable anchor: function vanishes on the sample grid");
    return best;
}

}  // namespace

std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count < 2) throw InvalidArgument("linspace needs at least two points");
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    out.back() = stop;
    return out;
}

SampleGrid::SampleGrid(std::vector<std::vector<double>> coordinates, Strategy strategy, std::size_t budget,
                       std::uint64_t seed)
    : coordinates_(std::move(coordinates)), strategy_(strategy), budget_(budget), seed_(seed) {
    for (const auto& c : coordinates_) {
        if (std::set<double>(c.begin(), c.end()).size() < 2) {
            throw InvalidArgument("each variable needs at least two distinct sample coordinates");
        }
        if (!std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); })) {
            throw InvalidArgument("sample coordinates must be finite");
        }
    }
    const std::size_t n = coordinates_.size();
    if (budget_ < std::max<std::size_t>(1, n * (n - (n > 0 ? 1 : 0)) / 2)) {
        throw InvalidArgument("sample budget is smaller than the number of variable pairs");
    }
}

SampleGrid SampleGrid::uniform(std::size_t n, double start, double stop, std::size_t count) {
    return SampleGrid(std::vector<std::vector<double>>(n, linspace(start, stop, count)));
}

std::pair<std::string, std::vector<double>> parse_grid_spec(std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw InvalidArgument("grid spec must look like name=start:stop:count, got '" + std::string(spec) + "'");
    }
    std::string name(spec.substr(0, eq));
    std::string_view rest = spec.substr(eq + 1);

    std::vector<std::string_view> parts;
    for (std::size_t pos = 0;;) {
        const auto colon = rest.find(':', pos);
        parts.push_back(rest.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
        if (colon == std::string_view::npos) break;
        pos = colon + 1;
    }
    if (parts.size() != 3) throw InvalidArgument("grid spec must look like name=start:stop:count");

    auto parse_double = [&](std::string_view text) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
            throw InvalidArgument("bad number '" + std::string(text) + "' in grid spec");
        }
        return value;
    };
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    std::size_t count = 0;
    auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || count < 2 || count > 100000) {
        throw InvalidArgument("grid count must be an integer between 2 and 100000");
    }
    if (start == stop) throw InvalidArgument("grid start and stop must differ");
    return {std::move(name), linspace(start, stop, count)};
}

std::string_view to_string(NumericKind kind) {
    switch (kind) {
        case NumericKind::Separable: return "separable";
        case NumericKind::Partition: return "partition";
        case NumericKind::NotSeparable: return "not separable";
    }
    return "?";
}

double margin_residual(const CompiledExpr& f, const std::vector<bool>& in_block, std::span<const double> anchor,
                       std::span<const double> x, double floor) {
    const std::size_t n = f.vars().size();
    if (in_block.size() != n || anchor.size() != n || x.size() != n) {
        throw InvalidArgument("margin residual arguments do not match the variable count");
    }
    const double fa = f(anchor);
    if (std::fabs(fa) <= floor) throw DegenerateInput("anchor is too close to a zero of the function");

    std::vector<double> x_i_a_j(n);
    std::vector<double> a_i_x_j(n);
    for (std::size_t k = 0; k < n; ++k) {
        x_i_a_j[k] = in_block[k] ? x[k] : anchor[k];
        a_i_x_j[k] = in_block[k] ? anchor[k] : x[k];
    }
    const double whole = fa * f(x);
    const double margins = f(x_i_a_j) * f(a_i_x_j);
    return std::fabs(whole - margins) / std::max({std::fabs(whole), std::fabs(margins), floor});
}

NumericVerdict numeric_finest_partition(const CompiledExpr& f, const SampleGrid& grid, double tol,
                                        std::optional<std::vector<double>> anchor) {
    const std::size_t n = f.vars().size();
    if (grid.variable_count() != n) throw InvalidArgument("grid does not match the variable count");
    if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
    const auto& coords = grid.coordinates();

    NumericVerdict verdict;
    verdict.vars = f.vars();
    verdict.tolerance = tol;
    verdict.anchor = anchor ? std::move(*anchor) : pick_anchor(f, grid);
    if (verdict.anchor.size() != n) throw InvalidArgument("anchor dimension does not match the variable count");
    const auto& a = verdict.anchor;
    const double fa = f(a);
    if (std::fabs(fa) <= kDegeneracyFloor) throw DegenerateInput("anchor is too close to a zero of the function");
    const double floor = std::max(kDegeneracyFloor, kNoiseFloor * fa * fa);

    // f with a single coordinate moved off the anchor.
    std::vector<std::vector<std::optional<double>>> single(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> point = a;
        for (double c : coords[i]) {
            point[i] = c;
            single[i].push_back(try_eval(f, point));
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    struct PairStats {
        double worst = 0.0;
        std::size_t samples = 0;
        std::size_t skipped = 0;
    };
    std::vector<PairStats> stats(pairs.size());
    const std::size_t per_pair = pairs.empty() ? 0 : std::max<std::size_t>(1, grid.budget() / pairs.size());

    detail::parallel_for(pairs.size(), [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        PairStats& s = stats[p];
        std::vector<double> point = a;
        auto sample = [&](std::size_t k, std::size_t l) {
            ++s.samples;
            if (!single[i][k] || !single[j][l]) {
                ++s.skipped;
                return;
            }
            point[i] = coords[i][k];
            point[j] = coords[j][l];
            auto fx = try_eval(f, point);
            if (!fx) {
                ++s.skipped;
                return;
            }
            s.worst = std::max(s.worst, relative_gap(fa * *fx, *single[i][k] * *single[j][l], floor));
        };
        if (grid.strategy() == SampleGrid::Strategy::Cartesian) {
            for (std::size_t k = 0; k < coords[i].size(); ++k) {
                for (std::size_t l = 0; l < coords[j].size(); ++l) sample(k, l);
            }
        } else {
            std::mt19937_64 rng(grid.seed() + 0x9e3779b97f4a7c15ULL * (p + 1));
            std::uniform_int_distribution<std::size_t> pick_i(0, coords[i].size() - 1);
            std::uniform_int_distribution<std::size_t> pick_j(0, coords[j].size() - 1);
            for (std::size_t d = 0; d < per_pair; ++d) {
                const std::size_t k = pick_i(rng);
                sample(k, pick_j(rng));
            }
        }
    });

    verdict.residuals.assign(n, std::vector<double>(n, 0.0));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        const PairStats& s = stats[p];
        if (s.samples == s.skipped) {
            throw DegenerateInput("no evaluable samples for the pair (" + verdict.vars[i] + ", " + verdict.vars[j] + ")");
        }
        verdict.samples += s.samples;
        verdict.skipped += s.skipped;
        verdict.residuals[i][j] = verdict.residuals[j][i] = s.worst;
        if (s.worst > tol) edges.emplace_back(i, j);
    }
    if (verdict.skipped * 2 > verdict.samples) {
        throw DegenerateInput("more than half of the sample points fall outside the function's domain");
    }

    verdict.partition = Partition::components(n, edges);
    if (verdict.partition.is_all_singletons()) {
        verdict.kind = NumericKind::Separable;
    } else if (verdict.partition.block_count() == 1) {
        verdict.kind = NumericKind::NotSeparable;
    } else {
        verdict.kind = NumericKind::Partition;
    }
    return verdict;
}

FactorSamples numeric_factor_samples(const CompiledExpr& f, const SampleGrid& grid, const Partition& partition,
                                     std::span<const double> anchor, double tol) {
    const std::size_t n = f.vars().size();
    if (grid.variable_count() != n || partition.variable_count() != n || anchor.size() != n) {
        throw InvalidArgument("grid, partition and anchor must match the variable count");
    }
    const auto& coords = grid.coordinates();
    const double fa = f(anchor);
    if (std::fabs(fa) <= kDegeneracyFloor) throw DegenerateInput("anchor is too close to a zero of the function");
    const double floor = std::max(kDegeneracyFloor, kNoiseFloor * std::fabs(fa));

    const auto& blocks = partition.blocks();
    const std::size_t r = blocks.size();
    std::vector<std::map<std::vector<std::size_t>, std::optional<double>>> memo(r);

    auto factor_value = [&](std::size_t s, const std::vector<std::size_t>& full_index) -> std::optional<double> {
        std::vector<std::size_t> key;
        for (std::size_t v : blocks[s]) key.push_back(full_index[v]);
        auto it = memo[s].find(key);
        if (it != memo[s].end()) return it->second;
        std::vector<double> point(anchor.begin(), anchor.end());
        for (std::size_t v : blocks[s]) point[v] = coords[v][full_index[v]];
        std::optional<double> value = try_eval(f, point);
        if (value && s + 1 < r) *value /= fa;
        memo[s].emplace(std::move(key), value);
        return value;
    };

    FactorSamples out;
    std::vector<std::size_t> sizes;
    for (const auto& c : coords) sizes.push_back(c.size());
    std::vector<double> point(n);
    visit_indices(sizes, grid.budget(), grid.seed(), [&](const std::vector<std::size_t>& index) {
        double product = 1.0;
        bool ok = true;
        for (std::size_t s = 0; s < r && ok; ++s) {
            auto value = factor_value(s, index);
            if (value) {
                product *= *value;
            } else {
                ok = false;
            }
        }
        for (std::size_t v = 0; v < n; ++v) point[v] = coords[v][index[v]];
        std::optional<double> fx = ok ? try_eval(f, point) : std::nullopt;
        if (!fx) {
            ++out.skipped;
            return;
        }
        ++out.checked;
        out.reconstruction_residual =
            std::max(out.reconstruction_residual, relative_gap(product, *fx, floor));
    });

    if (out.checked == 0 || out.skipped > out.checked) {
        throw DegenerateInput("more than half of the sample points fall outside the function's domain");
    }
    if (out.reconstruction_residual > 10.0 * tol) {
        throw NotSeparable("partition is incompatible with the function: reconstruction residual " +
                           std::to_string(out.reconstruction_residual));
    }

    for (std::size_t s = 0; s < r; ++s) {
        FactorTable table;
        table.block = blocks[s];
        for (const auto& [key, value] : memo[s]) {
            if (!value) continue;
            std::vector<double> row;
            for (std::size_t k = 0; k < key.size(); ++k) row.push_back(coords[blocks[s][k]][key[k]]);
            table.coordinates.push_back(std::move(row));
            table.values.push_back(*value);
        }
        out.tables.push_back(std::move(table));
    }
    return out;
}

}  // namespace varsep
