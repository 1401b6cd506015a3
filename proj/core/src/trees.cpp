#include "dendriform/trees.hpp"

#include <algorithm>
#include <stdexcept>

namespace dendriform {

namespace {

const std::string kLeafEncoding = "·";

}  // namespace

struct Tree::Node {
    Tree left;
    Tree right;
    int label;
    int degree;
    int max_label;
    std::string enc;
};

int Tree::degree() const noexcept { return node_ ? node_->degree : 0; }

int Tree::max_label() const noexcept { return node_ ? node_->max_label : -1; }

Tree Tree::node(const Tree& left, int label, const Tree& right) {
    if (label < 0) throw std::invalid_argument("negative generator label");
    auto n = std::make_shared<Node>();
    n->left = left;
    n->right = right;
    n->label = label;
    n->degree = left.degree() + right.degree() + 1;
    n->max_label = std::max(label, std::max(left.max_label(), right.max_label()));
    n->enc = "(" + left.encoding() + " x" + std::to_string(label) + " " +
             right.encoding() + ")";
    Tree t;
    t.node_ = std::move(n);
    return t;
}

const Tree& Tree::left() const {
    if (!node_) throw std::logic_error("leaf has no subtrees");
    return node_->left;
}

const Tree& Tree::right() const {
    if (!node_) throw std::logic_error("leaf has no subtrees");
    return node_->right;
}

int Tree::label() const {
    if (!node_) throw std::logic_error("leaf has no label");
    return node_->label;
}

const std::string& Tree::encoding() const {
    return node_ ? node_->enc : kLeafEncoding;
}

std::strong_ordering Tree::operator<=>(const Tree& o) const {
    if (degree() != o.degree()) return degree() <=> o.degree();
    int c = encoding().compare(o.encoding());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool Tree::operator==(const Tree& o) const {
    if (node_ == o.node_) return true;
    return degree() == o.degree() && encoding() == o.encoding();
}

Tree graft(const Tree& left, int label, const Tree& right, int generator_count) {
    if (label < 0 || label >= generator_count) {
        throw std::invalid_argument("generator label " + std::to_string(label) +
                                    " out of range [0, " +
                                    std::to_string(generator_count) + ")");
    }
    return Tree::node(left, label, right);
}

std::vector<Tree> enumerate_trees(int degree, int generator_count) {
    if (degree < 1) {
        throw std::invalid_argument("no tree basis in degree " +
                                    std::to_string(degree));
    }
    if (generator_count < 1) {
        throw std::invalid_argument("generator count must be positive");
    }
    // levels[k] = all trees of degree k; level 0 is the bare leaf.
    std::vector<std::vector<Tree>> levels(degree + 1);
    levels[0] = {Tree::leaf()};
    for (int n = 1; n <= degree; ++n) {
        for (int ln = 0; ln <= n - 1; ++ln) {
            int rn = n - 1 - ln;
            for (const Tree& l : levels[ln]) {
                for (int label = 0; label < generator_count; ++label) {
                    for (const Tree& r : levels[rn]) {
                        levels[n].push_back(Tree::node(l, label, r));
                    }
                }
            }
        }
        std::sort(levels[n].begin(), levels[n].end());
    }
    return std::move(levels[degree]);
}

std::uint64_t tree_count(int degree, int generator_count) {
    if (degree < 1) {
        throw std::invalid_argument("no tree basis in degree " +
                                    std::to_string(degree));
    }
    std::vector<std::uint64_t> catalan(degree + 1, 0);
    catalan[0] = 1;
    for (int n = 1; n <= degree; ++n) {
        for (int i = 0; i <= n - 1; ++i) {
            catalan[n] += catalan[i] * catalan[n - 1 - i];
        }
    }
    std::uint64_t labels = 1;
    for (int i = 0; i < degree; ++i) labels *= static_cast<std::uint64_t>(generator_count);
    return catalan[degree] * labels;
}

namespace {

// Recursive-descent reader mirroring the encoding grammar.
struct TreeReader {
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("bad tree encoding at byte " +
                                    std::to_string(pos) + ": " + what);
    }

    void expect(char c) {
        if (pos >= s.size() || s[pos] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos;
    }

    Tree read() {
        if (s.compare(pos, kLeafEncoding.size(), kLeafEncoding) == 0) {
            pos += kLeafEncoding.size();
            return Tree::leaf();
        }
        expect('(');
        Tree left = read();
        expect(' ');
        expect('x');
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) fail("expected generator index");
        int label = std::stoi(s.substr(start, pos - start));
        expect(' ');
        Tree right = read();
        expect(')');
        return Tree::node(left, label, right);
    }
};

}  // namespace

Tree parse_tree(const std::string& text) {
    TreeReader reader{text};
    Tree t = reader.read();
    if (reader.pos != text.size()) reader.fail("trailing input");
    return t;
}

}  // namespace dendriform
