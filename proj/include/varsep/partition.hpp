#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "varsep/polynomial.hpp"

namespace varsep {

/// Disjoint-set forest with path compression and union by rank.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n);

    std::size_t find(std::size_t x);
    void unite(std::size_t a, std::size_t b);
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

/// Partition of the variable indices {0, ..., n-1} into disjoint nonempty
/// blocks. Stored canonically: members sorted within each block, blocks
/// sorted by their smallest member.
class Partition {
public:
    using Block = std::vector<std::size_t>;

    Partition() = default;

    /// Throws InvalidArgument unless the blocks are nonempty, disjoint and
    /// cover 0..n-1 exactly.
    explicit Partition(std::vector<Block> blocks);

    static Partition singletons(std::size_t n);
    static Partition single_block(std::size_t n);

    /// Connected components of the graph on n vertices with the given edges.
    static Partition components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    std::size_t variable_count() const noexcept { return n_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }

    /// Index of the block holding `variable`.
    std::size_t block_of(std::size_t variable) const;

    bool is_all_singletons() const noexcept { return blocks_.size() == n_; }

    /// True when every block of this partition lies inside a block of `coarser`.
    bool refines(const Partition& coarser) const;

    /// Block names, e.g. {{x, y}, {z}}.
    std::string to_string(const VariableList& vars) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Block> blocks_;
    std::vector<std::size_t> owner_;
};

}  // namespace varsep
