#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "riesz/errors.hpp"

namespace riesz {

using Label = std::string;
using LabelPair = std::pair<Label, Label>;

/// Pairwise disjoint family of coordinate blocks {P_label}. The family need
/// not cover every coordinate: uncovered coordinates belong to no block, and
/// the top inner projection over a partial family is not the identity.
class BlockFamily {
public:
    using BlockMap = std::map<Label, std::set<std::size_t>>;

    BlockFamily(std::size_t dim, BlockMap blocks)
        : dim_(dim), blocks_(std::move(blocks)), owner_(dim) {
        if (dim == 0) throw DimensionError("lattice dimension must be >= 1");
        for (const auto& [label, coords] : blocks_) {
            if (coords.empty())
                throw DimensionError("block \"" + label + "\" is empty");
            for (std::size_t c : coords) {
                if (c >= dim_)
                    throw DimensionError("block \"" + label + "\" has coordinate " +
                                         std::to_string(c) + " outside dimension " +
                                         std::to_string(dim_));
                if (owner_[c] != nullptr)
                    throw DimensionError("blocks overlap at coordinate " + std::to_string(c));
                owner_[c] = &label;
            }
        }
    }

    BlockFamily(const BlockFamily& o) : BlockFamily(o.dim_, o.blocks_) {}
    BlockFamily& operator=(const BlockFamily& o) {
        if (this != &o) *this = BlockFamily(o);
        return *this;
    }
    BlockFamily(BlockFamily&&) = default;
    BlockFamily& operator=(BlockFamily&&) = default;

    /// One block per coordinate, labelled by its decimal index.
    static BlockFamily singletons(std::size_t dim) {
        BlockMap m;
        for (std::size_t i = 0; i < dim; ++i) m[std::to_string(i)] = {i};
        return BlockFamily(dim, std::move(m));
    }

    std::size_t dim() const { return dim_; }
    const BlockMap& blocks() const { return blocks_; }
    bool has_label(const Label& l) const { return blocks_.count(l) != 0; }
    const std::set<std::size_t>& block(const Label& l) const {
        auto it = blocks_.find(l);
        if (it == blocks_.end())
            throw DimensionError("unknown block label \"" + l + "\"");
        return it->second;
    }

    /// Label owning a coordinate, or nullptr when uncovered.
    const Label* owner(std::size_t coord) const { return owner_[coord]; }

    bool covers_all() const {
        for (const Label* l : owner_)
            if (l == nullptr) return false;
        return true;
    }

    std::set<Label> labels() const {
        std::set<Label> out;
        for (const auto& [label, coords] : blocks_) out.insert(label);
        return out;
    }

    friend bool operator==(const BlockFamily& a, const BlockFamily& b) {
        return a.dim_ == b.dim_ && a.blocks_ == b.blocks_;
    }
    friend bool operator!=(const BlockFamily& a, const BlockFamily& b) { return !(a == b); }

private:
    std::size_t dim_;
    BlockMap blocks_;
    std::vector<const Label*> owner_; // points into blocks_ keys
};

/// A set of ordered label pairs: the index set Gamma of an inner projection.
class IndexRelation {
public:
    IndexRelation() = default;
    explicit IndexRelation(std::set<LabelPair> pairs) : pairs_(std::move(pairs)) {}
    IndexRelation(std::initializer_list<LabelPair> pairs) : pairs_(pairs) {}

    const std::set<LabelPair>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    bool contains(const Label& a, const Label& b) const {
        return pairs_.count({a, b}) != 0;
    }
    void insert(Label a, Label b) { pairs_.insert({std::move(a), std::move(b)}); }

    auto begin() const { return pairs_.begin(); }
    auto end() const { return pairs_.end(); }

    /// pi_1: labels occurring as first coordinate.
    std::set<Label> project_first() const {
        std::set<Label> out;
        for (const auto& [a, b] : pairs_) out.insert(a);
        return out;
    }
    /// pi_2: labels occurring as second coordinate.
    std::set<Label> project_second() const {
        std::set<Label> out;
        for (const auto& [a, b] : pairs_) out.insert(b);
        return out;
    }
    /// Gamma_alpha: second coordinates paired with a fixed first label.
    std::set<Label> slice_row(const Label& alpha) const {
        std::set<Label> out;
        for (const auto& [a, b] : pairs_)
            if (a == alpha) out.insert(b);
        return out;
    }
    /// Gamma^beta: first coordinates paired with a fixed second label.
    std::set<Label> slice_col(const Label& beta) const {
        std::set<Label> out;
        for (const auto& [a, b] : pairs_)
            if (b == beta) out.insert(a);
        return out;
    }

    friend IndexRelation intersection(const IndexRelation& x, const IndexRelation& y) {
        std::set<LabelPair> out;
        for (const auto& p : x.pairs_)
            if (y.pairs_.count(p)) out.insert(p);
        return IndexRelation(std::move(out));
    }
    friend IndexRelation set_union(const IndexRelation& x, const IndexRelation& y) {
        std::set<LabelPair> out = x.pairs_;
        out.insert(y.pairs_.begin(), y.pairs_.end());
        return IndexRelation(std::move(out));
    }
    friend IndexRelation set_difference(const IndexRelation& x, const IndexRelation& y) {
        std::set<LabelPair> out;
        for (const auto& p : x.pairs_)
            if (!y.pairs_.count(p)) out.insert(p);
        return IndexRelation(std::move(out));
    }

    friend bool operator==(const IndexRelation& a, const IndexRelation& b) = default;

private:
    std::set<LabelPair> pairs_;
};

/// Lambda x Lambda over the family's label set: the top relation.
inline IndexRelation all_pairs(const BlockFamily& family) {
    IndexRelation r;
    for (const auto& [a, ca] : family.blocks())
        for (const auto& [b, cb] : family.blocks()) r.insert(a, b);
    return r;
}

} // namespace riesz
