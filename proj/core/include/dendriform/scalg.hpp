#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dendriform/fp.hpp"

namespace dendriform {

// A finite-dimensional associative algebra over F_p presented by structure
// constants: e_i · e_j = Σ_k c[i][j][k] e_k.  Associativity is verified on
// all basis triples at construction, which settles it for every element by
// trilinearity.
class SCAlgebra {
public:
    SCAlgebra(std::uint32_t modulus, std::size_t dim,
              std::vector<std::uint32_t> constants,  // dim^3, [i][j][k]
              std::vector<std::string> basis_names = {});

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::string& basis_name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& basis_names() const noexcept { return names_; }

    FpScalar constant(std::size_t i, std::size_t j, std::size_t k) const;
    FpVec basis_vector(std::size_t i) const;

    FpVec mul(const FpVec& x, const FpVec& y) const;
    // x^n for n >= 1 (no unit is assumed, so n = 0 is rejected).
    FpVec power(const FpVec& x, std::uint64_t n) const;
    // The p-th power map x ↦ x^{·p}.
    FpVec frobenius(const FpVec& x) const { return power(x, p_); }
    FpVec commutator(const FpVec& x, const FpVec& y) const;

    std::string to_json() const;
    static SCAlgebra from_json(const std::string& text);

    // Stock examples.
    static SCAlgebra matrix_algebra(int n, std::uint32_t p);
    static SCAlgebra upper_triangular(int n, std::uint32_t p);
    // F_p[x]/(x^N) with basis 1, x, …, x^{N-1}.
    static SCAlgebra truncated_polynomial(int N, std::uint32_t p);

private:
    std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const {
        return (i * dim_ + j) * dim_ + k;
    }
    void check_element(const FpVec& x) const;

    std::uint32_t p_;
    std::size_t dim_;
    std::vector<std::uint32_t> c_;
    std::vector<std::string> names_;
};

// A linear map on algebra coordinates, stored row-major: the image of e_j
// is column j.
class LinearOperator {
public:
    LinearOperator(std::uint32_t modulus, std::size_t dim,
                   std::vector<std::uint32_t> row_major);

    static LinearOperator zero(std::uint32_t modulus, std::size_t dim);
    static LinearOperator identity(std::uint32_t modulus, std::size_t dim);

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return dim_; }
    std::uint32_t entry(std::size_t row, std::size_t col) const {
        return m_.at(row * dim_ + col);
    }

    FpVec apply(const FpVec& x) const;

    bool operator==(const LinearOperator& o) const {
        return p_ == o.p_ && dim_ == o.dim_ && m_ == o.m_;
    }

    std::string to_json() const;
    static LinearOperator from_json(const std::string& text,
                                    std::uint32_t modulus, std::size_t dim);

    std::string str() const;

private:
    std::uint32_t p_;
    std::size_t dim_;
    std::vector<std::uint32_t> m_;
};

// Σ u_i ⊗ v_i with zero summands pruned; the r-matrix datum of the
// associative Yang-Baxter equation.
class TensorElement {
public:
    TensorElement(std::uint32_t modulus, std::size_t dim,
                  std::vector<std::pair<FpVec, FpVec>> summands);

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::pair<FpVec, FpVec>>& summands() const noexcept {
        return summands_;
    }

    std::string to_json() const;
    static TensorElement from_json(const std::string& text,
                                   std::uint32_t modulus, std::size_t dim);

private:
    std::uint32_t p_;
    std::size_t dim_;
    std::vector<std::pair<FpVec, FpVec>> summands_;
};

// A pair of bilinear products on coordinates, the concrete (non-free)
// counterpart of the two dendriform products.  No axioms are assumed at
// construction; verification is a separate concern.
class BilinearStructure {
public:
    BilinearStructure(std::uint32_t modulus, std::size_t dim,
                      std::vector<std::uint32_t> prec_constants,
                      std::vector<std::uint32_t> succ_constants,
                      std::string tag = "dendriform",
                      std::vector<std::string> basis_names = {});

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::string& tag() const noexcept { return tag_; }
    const std::vector<std::string>& basis_names() const noexcept { return names_; }

    FpVec prec(const FpVec& x, const FpVec& y) const;
    FpVec succ(const FpVec& x, const FpVec& y) const;
    FpVec star(const FpVec& x, const FpVec& y) const {
        return prec(x, y) + succ(x, y);
    }
    FpVec pre_lie(const FpVec& x, const FpVec& y) const {
        return succ(x, y) - prec(y, x);
    }
    FpVec lie_bracket(const FpVec& x, const FpVec& y) const {
        return pre_lie(x, y) - pre_lie(y, x);
    }
    // x^{⋆p}, left-nested.
    FpVec star_power(const FpVec& x) const;

    // One perturbed structure constant, for failure-path fixtures.
    BilinearStructure perturbed(std::size_t i, std::size_t j, std::size_t k,
                                bool in_prec) const;

    std::string to_json() const;
    static BilinearStructure from_json(const std::string& text);

private:
    FpVec apply(const std::vector<std::uint32_t>& table, const FpVec& x,
                const FpVec& y) const;

    std::uint32_t p_;
    std::size_t dim_;
    std::vector<std::uint32_t> prec_c_;
    std::vector<std::uint32_t> succ_c_;
    std::string tag_;
    std::vector<std::string> names_;
};

// Outcome of the weight-0 Rota-Baxter identity
//   β(x)·β(y) = β(β(x)·y + x·β(y))
// over all basis pairs; bilinearity of both sides makes basis pairs
// conclusive.
struct RotaBaxterReport {
    struct Violation {
        std::size_t i;
        std::size_t j;
        FpVec lhs;
        FpVec rhs;
    };
    std::vector<Violation> violations;

    bool pass() const noexcept { return violations.empty(); }
    std::string str() const;
};

RotaBaxterReport check_rota_baxter(const SCAlgebra& A,
                                   const LinearOperator& beta);

// The dendriform structure x ≻ y = β(x)·y, x ≺ y = x·β(y).  Refuses a β
// that fails the Rota-Baxter gate.
BilinearStructure induced_dendriform(const SCAlgebra& A,
                                     const LinearOperator& beta);

// Residual of r13 r12 − r12 r23 + r23 r13 in A⊗A⊗A.
struct AybeReport {
    struct Entry {
        std::size_t a;
        std::size_t b;
        std::size_t c;
        std::uint32_t coeff;
    };
    std::vector<Entry> residual;  // nonzero entries, lexicographic

    bool pass() const noexcept { return residual.empty(); }
    std::string str() const;
};

AybeReport check_aybe(const SCAlgebra& A, const TensorElement& r);

// β(a) = Σ u_i · a · v_i from an r-matrix that passed the AYBE check.
// The result is additionally pushed through the Rota-Baxter gate and the
// construction fails loudly when the gate does not pass, so downstream
// structures only ever see verified operators.
LinearOperator rb_from_tensor(const SCAlgebra& A, const TensorElement& r);

}  // namespace dendriform
