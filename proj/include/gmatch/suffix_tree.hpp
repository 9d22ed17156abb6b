#pragma once

// Compact suffix tree over the sentinel-extended text, stored as a flat node
// array with a fixed 5-slot child table per node.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gmatch/error.hpp"
#include "gmatch/sequence.hpp"
#include "gmatch/suffix_array.hpp"

namespace gmatch {

using NodeIndex = std::uint32_t;

inline constexpr NodeIndex no_node = static_cast<NodeIndex>(-1);
inline constexpr Pos no_suffix = static_cast<Pos>(-1);

/// One node and the edge leading into it. Edge bounds index the
/// sentinel-extended text and are half-open.
struct TreeNode {
    Pos edge_start = 0;
    Pos edge_end = 0;
    std::array<NodeIndex, Alphabet::code_space> child{no_node, no_node, no_node, no_node, no_node};
    Pos leaf_suffix = no_suffix;

    bool is_leaf() const noexcept { return leaf_suffix != no_suffix; }
    Pos edge_length() const noexcept { return edge_end - edge_start; }
};

class FlatSuffixTree {
public:
    const TreeNode& node(NodeIndex v) const {
        if (v >= nodes_.size())
            throw InvalidNode(v);
        return nodes_[v];
    }
    std::span<const TreeNode> nodes() const noexcept { return nodes_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    NodeIndex root() const noexcept { return 0; }
    std::size_t text_len() const noexcept { return text_len_; }

    /// The leaf for the suffix consisting of the sentinel alone.
    bool is_sentinel_leaf(NodeIndex v) const { return node(v).leaf_suffix == text_len_; }

    /// Symbol i of the sentinel-extended text (code 0 at index n).
    Code symbol(std::size_t i) const noexcept { return text_[i]; }
    std::span<const Code> extended_text() const noexcept { return text_; }

private:
    friend FlatSuffixTree build_tree(const EncodedSequence&);

    std::vector<TreeNode> nodes_;
    std::vector<Code> text_;
    std::size_t text_len_ = 0;
};

namespace detail {

// Ukkonen's online construction. Leaf edges are open-ended during the
// build and closed at the end; suffix links live only in this builder.
class UkkonenBuilder {
public:
    explicit UkkonenBuilder(std::span<const Code> text) : text_(text) {
        nodes_.reserve(2 * text.size() + 1);
        links_.reserve(2 * text.size() + 1);
        new_node(0, 0);
    }

    std::vector<TreeNode> run() {
        for (std::size_t i = 0; i < text_.size(); ++i)
            extend(static_cast<Pos>(i));
        const Pos end = static_cast<Pos>(text_.size());
        for (auto& v : nodes_)
            if (v.edge_end == open_end)
                v.edge_end = end;
        return std::move(nodes_);
    }

private:
    static constexpr Pos open_end = static_cast<Pos>(-1);

    NodeIndex new_node(Pos start, Pos end) {
        nodes_.push_back(TreeNode{start, end, {no_node, no_node, no_node, no_node, no_node}, no_suffix});
        links_.push_back(0);
        return static_cast<NodeIndex>(nodes_.size() - 1);
    }

    Pos edge_length(NodeIndex v, Pos i) const {
        const Pos end = nodes_[v].edge_end == open_end ? i + 1 : nodes_[v].edge_end;
        return end - nodes_[v].edge_start;
    }

    void add_link(NodeIndex v) {
        if (pending_link_ != no_node)
            links_[pending_link_] = v;
        pending_link_ = v;
    }

    void extend(Pos i) {
        pending_link_ = no_node;
        ++remainder_;
        while (remainder_ > 0) {
            if (active_len_ == 0)
                active_edge_ = i;
            const Code c = text_[active_edge_];
            const NodeIndex next = nodes_[active_node_].child[c];
            if (next == no_node) {
                nodes_[active_node_].child[c] = new_node(i, open_end);
                add_link(active_node_);
            } else {
                const Pos len = edge_length(next, i);
                if (active_len_ >= len) {
                    active_edge_ += len;
                    active_len_ -= len;
                    active_node_ = next;
                    continue;
                }
                if (text_[nodes_[next].edge_start + active_len_] == text_[i]) {
                    ++active_len_;
                    add_link(active_node_);
                    break;
                }
                const Pos start = nodes_[next].edge_start;
                const NodeIndex split = new_node(start, start + active_len_);
                nodes_[active_node_].child[c] = split;
                nodes_[split].child[text_[i]] = new_node(i, open_end);
                nodes_[next].edge_start += active_len_;
                nodes_[split].child[text_[nodes_[next].edge_start]] = next;
                add_link(split);
            }
            --remainder_;
            if (active_node_ == 0 && active_len_ > 0) {
                --active_len_;
                active_edge_ = i - remainder_ + 1;
            } else {
                active_node_ = links_[active_node_];
            }
        }
    }

    std::span<const Code> text_;
    std::vector<TreeNode> nodes_;
    std::vector<NodeIndex> links_;
    NodeIndex pending_link_ = no_node;
    NodeIndex active_node_ = 0;
    Pos active_edge_ = 0;
    Pos active_len_ = 0;
    Pos remainder_ = 0;
};

} // namespace detail

/// Builds the suffix tree of seq followed by the sentinel (code 0).
/// Leaves carry their suffix start; the sentinel-only leaf has leaf_suffix == n.
inline FlatSuffixTree build_tree(const EncodedSequence& seq) {
    if (seq.empty())
        throw EmptySequence();
    check_text_length(seq.size());

    FlatSuffixTree tree;
    tree.text_len_ = seq.size();
    tree.text_.assign(seq.begin(), seq.end());
    tree.text_.push_back(Alphabet::pad_code);
    tree.nodes_ = detail::UkkonenBuilder(tree.text_).run();

    // Leaf labels from string depth: suffix = (n + 1) - depth.
    const std::size_t total = tree.text_.size();
    std::vector<std::pair<NodeIndex, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [v, depth] = stack.back();
        stack.pop_back();
        TreeNode& node = tree.nodes_[v];
        const std::size_t d = depth + node.edge_length();
        bool leaf = true;
        for (NodeIndex c : node.child) {
            if (c != no_node) {
                stack.emplace_back(c, d);
                leaf = false;
            }
        }
        if (leaf && v != 0)
            node.leaf_suffix = static_cast<Pos>(total - d);
    }
    tree.nodes_.shrink_to_fit();
    return tree;
}

namespace detail {

// Visits leaves below v in lexicographic order (children by ascending code).
template <typename Visit>
void for_each_leaf(const FlatSuffixTree& tree, NodeIndex v, Visit&& visit) {
    std::vector<NodeIndex> stack{v};
    while (!stack.empty()) {
        const TreeNode& node = tree.nodes()[stack.back()];
        stack.pop_back();
        if (node.is_leaf()) {
            visit(node.leaf_suffix);
            continue;
        }
        for (auto it = node.child.rbegin(); it != node.child.rend(); ++it)
            if (*it != no_node)
                stack.push_back(*it);
    }
}

} // namespace detail

/// Suffix starts of every leaf under node, ascending, sentinel leaf excluded.
inline std::vector<Pos> collect_occurrences(const FlatSuffixTree& tree, NodeIndex node) {
    tree.node(node);
    std::vector<Pos> out;
    detail::for_each_leaf(tree, node, [&](Pos p) {
        if (p != tree.text_len())
            out.push_back(p);
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Rank array read off the leaf order; agrees with rank_array(build_dc3(text)).
inline RankArray leaf_rank_array(const FlatSuffixTree& tree) {
    std::vector<Pos> rank(tree.text_len());
    Pos next = 0;
    detail::for_each_leaf(tree, tree.root(), [&](Pos p) {
        if (p != tree.text_len())
            rank[p] = next++;
    });
    return RankArray(std::move(rank));
}

/// Root counts as an internal node: node_count == leaf_count + internal_count.
struct TreeStats {
    std::size_t node_count = 0;
    std::size_t leaf_count = 0;
    std::size_t internal_count = 0;
    /// Size of the node array; the text is not included.
    std::size_t bytes = 0;
};

inline TreeStats tree_stats(const FlatSuffixTree& tree) {
    TreeStats stats;
    stats.node_count = tree.node_count();
    for (const auto& v : tree.nodes())
        stats.leaf_count += v.is_leaf() ? 1 : 0;
    stats.internal_count = stats.node_count - stats.leaf_count;
    stats.bytes = stats.node_count * sizeof(TreeNode);
    return stats;
}

} // namespace gmatch
