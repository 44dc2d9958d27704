#include "varsep/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "varsep/errors.hpp"

namespace varsep {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
}

void DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
}

Partition::Partition(std::vector<Block> blocks) {
    std::size_t total = 0;
    for (auto& block : blocks) {
        if (block.empty()) throw InvalidArgument("partition blocks must be nonempty");
        std::sort(block.begin(), block.end());
        total += block.size();
    }
    n_ = total;
    owner_.assign(n_, n_);
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
    for (std::size_t s = 0; s < blocks.size(); ++s) {
        for (std::size_t v : blocks[s]) {
            if (v >= n_) throw InvalidArgument("partition does not cover 0..n-1 exactly");
            if (owner_[v] != n_) throw InvalidArgument("partition blocks overlap");
            owner_[v] = s;
        }
    }
    blocks_ = std::move(blocks);
}

Partition Partition::singletons(std::size_t n) {
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
    return Partition(std::move(blocks));
}

Partition Partition::single_block(std::size_t n) {
    if (n == 0) return Partition();
    Block all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return Partition({all});
}

Partition Partition::components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    DisjointSets sets(n);
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) throw InvalidArgument("edge endpoint out of range");
        sets.unite(a, b);
    }
    std::map<std::size_t, Block> grouped;
    for (std::size_t i = 0; i < n; ++i) grouped[sets.find(i)].push_back(i);
    std::vector<Block> blocks;
    for (auto& [root, block] : grouped) blocks.push_back(std::move(block));
    return Partition(std::move(blocks));
}

std::size_t Partition::block_of(std::size_t variable) const {
    if (variable >= n_) throw InvalidArgument("variable index out of range");
    return owner_[variable];
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.n_ != n_) return false;
    return std::all_of(blocks_.begin(), blocks_.end(), [&](const Block& block) {
        const std::size_t target = coarser.owner_[block.front()];
        return std::all_of(block.begin(), block.end(), [&](std::size_t v) { return coarser.owner_[v] == target; });
    });
}

std::string Partition::to_string(const VariableList& vars) const {
    std::string out = "{";
    for (std::size_t s = 0; s < blocks_.size(); ++s) {
        if (s > 0) out += ", ";
        out += '{';
        for (std::size_t k = 0; k < blocks_[s].size(); ++k) {
            if (k > 0) out += ", ";
            const std::size_t v = blocks_[s][k];
            out += v < vars.size() ? vars[v] : std::to_string(v);
        }
        out += '}';
    }
    return out + '}';
}

}  // namespace varsep
