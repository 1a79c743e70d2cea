#pragma once

// Thesaurus trees and tree cuts. Leaves carry words, internal nodes are
// word classes. Node ids are depth-first preorder, so the subtree of n is
// the contiguous id range [n, n + subtree_size(n)); ancestor tests and
// bottom-up sweeps use that layout. Immutable after construction.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "treecut/errors.hpp"

namespace treecut {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

class Taxonomy {
public:
    NodeId root() const { return 0; }
    std::int32_t node_count() const { return static_cast<std::int32_t>(labels_.size()); }
    std::int32_t total_leaves() const { return static_cast<std::int32_t>(leaf_ids_.size()); }

    const std::string& label(NodeId n) const { return labels_[check(n)]; }
    NodeId parent(NodeId n) const { return parent_[check(n)]; }
    std::int32_t depth(NodeId n) const { return depth_[check(n)]; }
    std::int32_t subtree_size(NodeId n) const { return size_[check(n)]; }
    std::int32_t leaf_count(NodeId n) const { return nleaves_[check(n)]; }
    bool is_leaf(NodeId n) const { return child_off_[check(n)] == child_off_[n + 1]; }

    std::span<const NodeId> children(NodeId n) const {
        check(n);
        return {child_ids_.data() + child_off_[n],
                static_cast<std::size_t>(child_off_[n + 1] - child_off_[n])};
    }

    // All leaves, in preorder.
    std::span<const NodeId> leaf_ids() const { return leaf_ids_; }

    // Leaves dominated by n, in preorder.
    std::vector<NodeId> leaves_under(NodeId n) const;

    std::optional<NodeId> leaf_of(std::string_view word) const;

    // Ancestor-or-self test via the preorder span.
    bool dominates(NodeId a, NodeId d) const {
        check(a);
        check(d);
        return a <= d && d < a + size_[a];
    }

private:
    NodeId check(NodeId n) const {
        if (n < 0 || n >= node_count()) {
            throw std::out_of_range("unknown node id " + std::to_string(n));
        }
        return n;
    }

    friend Taxonomy build_taxonomy(std::vector<std::string> labels,
                                   std::vector<NodeId> parents);

    std::vector<std::string> labels_;
    std::vector<NodeId> parent_;
    std::vector<std::int32_t> child_off_;
    std::vector<NodeId> child_ids_;
    std::vector<std::int32_t> size_;
    std::vector<std::int32_t> nleaves_;
    std::vector<std::int32_t> depth_;
    std::vector<NodeId> leaf_ids_;
    std::unordered_map<std::string, NodeId> word_to_leaf_;
};

// An antichain of nodes partitioning the leaf set. Members are kept in
// preorder (canonical order); validity is checked by validate_cut.
struct TreeCut {
    std::vector<NodeId> members;

    bool operator==(const TreeCut&) const = default;
};

// Internal constructor: labels/parents in preorder (parent[i] < i, parent[0]
// == kNoNode). Validates leaf-word uniqueness. Parsers funnel through here.
Taxonomy build_taxonomy(std::vector<std::string> labels,
                        std::vector<NodeId> parents);

// S-expression form: `(LABEL child child ...)`, a bare token is a leaf word,
// `(LABEL)` is a single leaf, `;` starts a comment line.
Taxonomy parse_taxonomy(std::string_view text);

// JSON form: {"label": ..., "children": [...]}; a node without children
// (or with an empty array) is a leaf. Round-trips with taxonomy_to_json.
Taxonomy parse_taxonomy_json(std::string_view text);
std::string taxonomy_to_json(const Taxonomy& t);

struct CutCheck {
    bool ok = false;
    std::string violation;  // names the first offending node(s)
};

CutCheck validate_cut(const Taxonomy& t, const TreeCut& cut);

// Coarsest partition finer than both cuts: per leaf, the deeper of its two
// covering members. Throws std::invalid_argument on an invalid input cut.
TreeCut meet(const Taxonomy& t, const TreeCut& a, const TreeCut& b);

// cover[n] = index into cut.members of the member at-or-above node n, or -1
// for nodes strictly above the cut. The cut must be valid.
std::vector<std::int32_t> cover_map(const Taxonomy& t, const TreeCut& cut);

}  // namespace treecut
