#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace dendriform {

// A planar binary tree whose internal vertices carry generator labels.
// The empty tree (a bare leaf) has degree 0 and is only a bookkeeping
// device inside product recursions; algebra basis elements always have
// degree >= 1.
//
// Canonical text encoding, injective by construction:
//   leaf          "·"
//   node(l, k, r) "(" + enc(l) + " x<k> " + enc(r) + ")"
class Tree {
public:
    Tree() = default;  // leaf

    static Tree leaf() { return Tree(); }
    // No generator-count check here; see graft() below for the checked form.
    static Tree node(const Tree& left, int label, const Tree& right);

    bool is_leaf() const noexcept { return node_ == nullptr; }
    int degree() const noexcept;
    // Largest label anywhere in the tree; -1 for the leaf.
    int max_label() const noexcept;

    // Only valid on non-leaf trees.
    const Tree& left() const;
    const Tree& right() const;
    int label() const;

    const std::string& encoding() const;

    // Total order: degree first, then lexicographic on the encoding.
    std::strong_ordering operator<=>(const Tree& o) const;
    bool operator==(const Tree& o) const;

private:
    struct Node;

    std::shared_ptr<const Node> node_;
};

// Grafts two subtrees under a fresh labeled root.  The label must be a
// valid generator index, i.e. 0 <= label < generator_count.
Tree graft(const Tree& left, int label, const Tree& right, int generator_count);

// All distinct trees of the given degree with labels < generator_count,
// in canonical order.  Degree 0 is rejected: there is no basis in degree 0.
std::vector<Tree> enumerate_trees(int degree, int generator_count);

// Catalan(degree) * generator_count^degree, the size of enumerate_trees
// output, without materializing it.
std::uint64_t tree_count(int degree, int generator_count);

// Inverse of Tree::encoding(); throws std::invalid_argument on malformed
// input.
Tree parse_tree(const std::string& text);

}  // namespace dendriform
