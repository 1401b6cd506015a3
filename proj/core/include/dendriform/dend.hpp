#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dendriform/fp.hpp"
#include "dendriform/trees.hpp"

namespace dendriform {

inline constexpr int kNoTruncation = std::numeric_limits<int>::max();

// An element of the free dendriform algebra on `generator_count` generators
// over F_p: a finitely supported linear combination of labeled planar binary
// trees.  Stored normalized (no zero coefficients), keyed in canonical tree
// order, so iteration and serialization are deterministic.
class DendElem {
public:
    DendElem(std::uint32_t modulus, int generator_count);

    // The degree-1 tree carrying generator `index`.
    static DendElem generator(std::uint32_t modulus, int generator_count,
                              int index);
    static DendElem single(const Tree& t, const FpScalar& coeff,
                           int generator_count);

    std::uint32_t modulus() const noexcept { return p_; }
    int generator_count() const noexcept { return gens_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const std::map<Tree, FpScalar>& terms() const noexcept { return terms_; }

    FpScalar coefficient(const Tree& t) const;

    // Accumulates c on t, dropping the entry when it cancels.  Rejects the
    // bare leaf and trees with labels outside [0, generator_count).
    void add_term(const Tree& t, const FpScalar& c);

    // 0 for the zero element.
    int max_degree() const noexcept;
    int min_degree() const noexcept;

    DendElem homogeneous_part(int degree) const;
    DendElem truncated(int max_degree) const;

    DendElem operator+(const DendElem& o) const;
    DendElem operator-(const DendElem& o) const;
    DendElem operator-() const;
    DendElem operator*(const FpScalar& c) const;

    bool operator==(const DendElem& o) const;
    bool operator!=(const DendElem& o) const { return !(*this == o); }

    std::string str() const;
    // JSON array of {"tree": canonical encoding, "coeff": residue}.
    std::string to_json() const;

private:
    void check_compatible(const DendElem& o) const;

    std::uint32_t p_;
    int gens_;
    std::map<Tree, FpScalar> terms_;
};

inline DendElem zero_like(const DendElem& x) {
    return DendElem(x.modulus(), x.generator_count());
}

// The two dendriform products and their sum.  On basis trees s = l ∨_a r
// (grafting of l and r under a root labeled a):
//
//   s ≺ t = l ∨_a (r ⋆ t)        t ≺ s-side unit rules: s ≺ unit = s
//   s ≻ t = (s ⋆ l') ∨_b r'      for t = l' ∨_b r', unit ≻ t = t
//   s ⋆ t = s ≺ t + s ≻ t
//
// The unit conventions apply only inside the recursion; the unit itself is
// never an element.  Every term of a product of homogeneous elements has
// degree deg(x) + deg(y); `truncate_above` prunes term pairs whose product
// would exceed the bound.
DendElem prec(const DendElem& x, const DendElem& y,
              int truncate_above = kNoTruncation);
DendElem succ(const DendElem& x, const DendElem& y,
              int truncate_above = kNoTruncation);
DendElem star(const DendElem& x, const DendElem& y,
              int truncate_above = kNoTruncation);

// {x, y} = x ≻ y − y ≺ x, the pre-Lie product carried by every dendriform
// algebra.
DendElem pre_lie(const DendElem& x, const DendElem& y,
                 int truncate_above = kNoTruncation);

// [x, y] = {x, y} − {y, x}; coincides with the ⋆ commutator.
DendElem lie_bracket(const DendElem& x, const DendElem& y,
                     int truncate_above = kNoTruncation);

// x^{⋆p}, the p-map of the restricted pre-Lie structure.  `exponent` must
// equal the coefficient modulus.
DendElem star_power(const DendElem& x, std::uint32_t exponent,
                    int truncate_above = kNoTruncation);

// A linear operator on free dendriform elements, closed under composition
// and linear combination.
class DendOperator {
public:
    explicit DendOperator(std::function<DendElem(const DendElem&)> f)
        : f_(std::move(f)) {}

    DendElem operator()(const DendElem& y) const { return f_(y); }

    DendOperator compose(const DendOperator& inner) const;
    DendOperator operator+(const DendOperator& o) const;
    DendOperator operator-(const DendOperator& o) const;

    // k-fold application.
    DendElem apply_power(int k, const DendElem& y) const;

private:
    std::function<DendElem(const DendElem&)> f_;
};

// L_x: y ↦ x ≻ y and R_x: y ↦ y ≺ x.  They commute.
DendOperator left_succ_action(const DendElem& x);
DendOperator right_prec_action(const DendElem& x);

// Polynomial in a formal variable λ with coefficients in an algebra;
// trailing zero coefficients trimmed.
template <class Elem>
struct LambdaPoly {
    std::vector<Elem> coeffs;  // coeffs[i] multiplies λ^i

    void trim() {
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    }
};

// The formal (p−1)-fold product [λx+y, [λx+y, … [λx+y, x] … ]], innermost
// argument x, expanded over any bilinear bracket.
template <class Elem, class Bracket>
LambdaPoly<Elem> lambda_bracket_expansion(const Elem& x, const Elem& y,
                                          Bracket&& bracket) {
    const std::uint32_t p = x.modulus();
    LambdaPoly<Elem> poly;
    poly.coeffs = {x};
    for (std::uint32_t step = 0; step + 1 < p; ++step) {
        std::vector<Elem> next(poly.coeffs.size() + 1, zero_like(x));
        for (std::size_t j = 0; j < poly.coeffs.size(); ++j) {
            next[j] = next[j] + bracket(y, poly.coeffs[j]);
            next[j + 1] = next[j + 1] + bracket(x, poly.coeffs[j]);
        }
        poly.coeffs = std::move(next);
    }
    poly.trim();
    return poly;
}

// s_1 … s_{p−1} with i·s_i(x, y) the coefficient of λ^{i−1} in the expansion
// above.  These are the additivity-defect terms of a p-map:
// (x+y)^{[p]} = x^{[p]} + y^{[p]} + Σ s_i(x, y).
template <class Elem, class Bracket>
std::vector<Elem> s_coefficients(const Elem& x, const Elem& y,
                                 Bracket&& bracket) {
    const std::uint32_t p = x.modulus();
    auto poly = lambda_bracket_expansion(x, y, bracket);
    std::vector<Elem> s;
    s.reserve(p - 1);
    for (std::uint32_t i = 1; i <= p - 1; ++i) {
        Elem c = (i - 1 < poly.coeffs.size()) ? poly.coeffs[i - 1]
                                              : zero_like(x);
        s.push_back(c * FpScalar(i, p).inverse());
    }
    return s;
}

}  // namespace dendriform
