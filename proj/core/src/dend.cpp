#include "dendriform/dend.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dendriform {

DendElem::DendElem(std::uint32_t modulus, int generator_count)
    : p_(modulus), gens_(generator_count) {
    require_prime_modulus(modulus);
    if (generator_count < 0) {
        throw std::invalid_argument("negative generator count");
    }
}

DendElem DendElem::generator(std::uint32_t modulus, int generator_count,
                             int index) {
    DendElem e(modulus, generator_count);
    e.add_term(graft(Tree::leaf(), index, Tree::leaf(), generator_count),
               FpScalar(1, modulus));
    return e;
}

DendElem DendElem::single(const Tree& t, const FpScalar& coeff,
                          int generator_count) {
    DendElem e(coeff.modulus(), generator_count);
    e.add_term(t, coeff);
    return e;
}

FpScalar DendElem::coefficient(const Tree& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? FpScalar(0, p_) : it->second;
}

void DendElem::add_term(const Tree& t, const FpScalar& c) {
    if (c.modulus() != p_) throw ModulusMismatch(p_, c.modulus());
    if (t.is_leaf()) {
        throw std::invalid_argument("the bare leaf is not a basis element");
    }
    if (t.max_label() >= gens_) {
        throw std::invalid_argument("tree label " +
                                    std::to_string(t.max_label()) +
                                    " out of range for " +
                                    std::to_string(gens_) + " generator(s)");
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(t, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int DendElem::max_degree() const noexcept {
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

int DendElem::min_degree() const noexcept {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

DendElem DendElem::homogeneous_part(int degree) const {
    DendElem out(p_, gens_);
    for (const auto& [t, c] : terms_) {
        if (t.degree() == degree) out.add_term(t, c);
    }
    return out;
}

DendElem DendElem::truncated(int max_degree) const {
    DendElem out(p_, gens_);
    for (const auto& [t, c] : terms_) {
        if (t.degree() <= max_degree) out.add_term(t, c);
    }
    return out;
}

void DendElem::check_compatible(const DendElem& o) const {
    if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
    if (gens_ != o.gens_) {
        throw std::invalid_argument("generator count mismatch: " +
                                    std::to_string(gens_) + " vs " +
                                    std::to_string(o.gens_));
    }
}

DendElem DendElem::operator+(const DendElem& o) const {
    check_compatible(o);
    DendElem out = *this;
    for (const auto& [t, c] : o.terms_) out.add_term(t, c);
    return out;
}

DendElem DendElem::operator-(const DendElem& o) const {
    check_compatible(o);
    DendElem out = *this;
    for (const auto& [t, c] : o.terms_) out.add_term(t, -c);
    return out;
}

DendElem DendElem::operator-() const {
    DendElem out(p_, gens_);
    for (const auto& [t, c] : terms_) out.add_term(t, -c);
    return out;
}

DendElem DendElem::operator*(const FpScalar& c) const {
    if (c.modulus() != p_) throw ModulusMismatch(p_, c.modulus());
    DendElem out(p_, gens_);
    if (c.is_zero()) return out;
    for (const auto& [t, k] : terms_) out.add_term(t, k * c);
    return out;
}

bool DendElem::operator==(const DendElem& o) const {
    return p_ == o.p_ && gens_ == o.gens_ && terms_ == o.terms_;
}

std::string DendElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (c.value() != 1) os << c.value() << "*";
        os << t.encoding();
    }
    return os.str();
}

std::string DendElem::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [t, c] : terms_) {
        nlohmann::ordered_json term;
        term["tree"] = t.encoding();
        term["coeff"] = c.value();
        arr.push_back(std::move(term));
    }
    return arr.dump();
}

namespace {

// Basis-tree product kernels.  All three keep the unit conventions local:
// the leaf never escapes into a result term.
DendElem tree_star(const Tree& s, const Tree& t, std::uint32_t p, int gens,
                   int bound);

// s ≺ t for non-leaf s, t.
DendElem tree_prec(const Tree& s, const Tree& t, std::uint32_t p, int gens,
                   int bound) {
    DendElem out(p, gens);
    if (s.degree() + t.degree() > bound) return out;
    // s.right ⋆ t, with unit ⋆ t = t when s.right is the leaf.
    DendElem rest = s.right().is_leaf()
                        ? DendElem::single(t, FpScalar(1, p), gens)
                        : tree_star(s.right(), t, p, gens, kNoTruncation);
    for (const auto& [u, c] : rest.terms()) {
        out.add_term(Tree::node(s.left(), s.label(), u), c);
    }
    return out;
}

// s ≻ t for non-leaf s, t.
DendElem tree_succ(const Tree& s, const Tree& t, std::uint32_t p, int gens,
                   int bound) {
    DendElem out(p, gens);
    if (s.degree() + t.degree() > bound) return out;
    // s ⋆ t.left, with s ⋆ unit = s when t.left is the leaf.
    DendElem rest = t.left().is_leaf()
                        ? DendElem::single(s, FpScalar(1, p), gens)
                        : tree_star(s, t.left(), p, gens, kNoTruncation);
    for (const auto& [u, c] : rest.terms()) {
        out.add_term(Tree::node(u, t.label(), t.right()), c);
    }
    return out;
}

DendElem tree_star(const Tree& s, const Tree& t, std::uint32_t p, int gens,
                   int bound) {
    DendElem out = tree_prec(s, t, p, gens, bound);
    DendElem succ_part = tree_succ(s, t, p, gens, bound);
    for (const auto& [u, c] : succ_part.terms()) out.add_term(u, c);
    return out;
}

using TreeKernel = DendElem (*)(const Tree&, const Tree&, std::uint32_t, int,
                                int);

DendElem bilinear(const DendElem& x, const DendElem& y, int bound,
                  TreeKernel kernel) {
    if (x.modulus() != y.modulus()) {
        throw ModulusMismatch(x.modulus(), y.modulus());
    }
    if (x.generator_count() != y.generator_count()) {
        throw std::invalid_argument(
            "generator count mismatch: " +
            std::to_string(x.generator_count()) + " vs " +
            std::to_string(y.generator_count()));
    }
    DendElem out(x.modulus(), x.generator_count());
    for (const auto& [s, cs] : x.terms()) {
        for (const auto& [t, ct] : y.terms()) {
            if (s.degree() + t.degree() > bound) continue;
            FpScalar c = cs * ct;
            DendElem part =
                kernel(s, t, x.modulus(), x.generator_count(), bound);
            for (const auto& [u, cu] : part.terms()) out.add_term(u, cu * c);
        }
    }
    return out;
}

}  // namespace

DendElem prec(const DendElem& x, const DendElem& y, int truncate_above) {
    return bilinear(x, y, truncate_above, &tree_prec);
}

DendElem succ(const DendElem& x, const DendElem& y, int truncate_above) {
    return bilinear(x, y, truncate_above, &tree_succ);
}

DendElem star(const DendElem& x, const DendElem& y, int truncate_above) {
    return bilinear(x, y, truncate_above, &tree_star);
}

DendElem pre_lie(const DendElem& x, const DendElem& y, int truncate_above) {
    return succ(x, y, truncate_above) - prec(y, x, truncate_above);
}

DendElem lie_bracket(const DendElem& x, const DendElem& y,
                     int truncate_above) {
    return pre_lie(x, y, truncate_above) - pre_lie(y, x, truncate_above);
}

DendElem star_power(const DendElem& x, std::uint32_t exponent,
                    int truncate_above) {
    if (exponent != x.modulus()) {
        throw std::invalid_argument(
            "star power exponent " + std::to_string(exponent) +
            " must equal the coefficient modulus " +
            std::to_string(x.modulus()));
    }
    DendElem acc = x;
    for (std::uint32_t i = 1; i < exponent; ++i) {
        acc = star(acc, x, truncate_above);
    }
    return acc;
}

DendOperator DendOperator::compose(const DendOperator& inner) const {
    auto outer = f_;
    auto in = inner.f_;
    return DendOperator(
        [outer, in](const DendElem& y) { return outer(in(y)); });
}

DendOperator DendOperator::operator+(const DendOperator& o) const {
    auto a = f_;
    auto b = o.f_;
    return DendOperator([a, b](const DendElem& y) { return a(y) + b(y); });
}

DendOperator DendOperator::operator-(const DendOperator& o) const {
    auto a = f_;
    auto b = o.f_;
    return DendOperator([a, b](const DendElem& y) { return a(y) - b(y); });
}

DendElem DendOperator::apply_power(int k, const DendElem& y) const {
    DendElem acc = y;
    for (int i = 0; i < k; ++i) acc = f_(acc);
    return acc;
}

DendOperator left_succ_action(const DendElem& x) {
    return DendOperator([x](const DendElem& y) { return succ(x, y); });
}

DendOperator right_prec_action(const DendElem& x) {
    return DendOperator([x](const DendElem& y) { return prec(y, x); });
}

}  // namespace dendriform
