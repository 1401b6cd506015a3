#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dendriform/dend.hpp"
#include "dendriform/fp.hpp"

namespace dendriform {

// A finite-dimensional pre-Lie algebra by structure constants,
// {e_i, e_j} = Σ_k b[i][j][k] e_k, optionally carrying a p-map table
// (the coordinates of e_i^{[p]} per basis element).  Construction
// verifies the pre-Lie law on all basis triples, and, when the table is
// present, the restricted relations on basis pairs plus seeded random
// samples; invalid data throws with the violating tuple.
class PreLieData {
public:
    PreLieData(std::uint32_t modulus, int dim,
               std::vector<std::uint32_t> brackets,  // dim^3, [i][j][k]
               std::optional<std::vector<FpVec>> pmap_table = std::nullopt,
               std::vector<std::string> basis_names = {});

    std::uint32_t modulus() const noexcept { return p_; }
    int dim() const noexcept { return dim_; }
    bool has_pmap() const noexcept { return pmap_table_.has_value(); }
    const std::vector<FpVec>& pmap_table() const;
    const std::vector<std::string>& basis_names() const noexcept {
        return names_;
    }

    FpVec basis_vector(int i) const;
    FpVec brace(const FpVec& x, const FpVec& y) const;
    FpVec lie_bracket(const FpVec& x, const FpVec& y) const;

    // Extends the basis table to arbitrary elements through scalar
    // homogeneity and Jacobson additivity: (u+v)^[p] = u^[p] + v^[p] +
    // Σ s_i(u,v), folding over the support in basis order.
    FpVec pmap(const FpVec& x) const;

    std::string to_json() const;
    static PreLieData from_json(const std::string& text);

private:
    std::uint32_t p_;
    int dim_;
    std::vector<std::uint32_t> b_;
    std::optional<std::vector<FpVec>> pmap_table_;
    std::vector<std::string> names_;
};

// Σ x_i · Y_i, the degree-1 embedding of coordinates into the free
// dendriform algebra on dim(P) generators.
DendElem embed_vector(const FpVec& x, int generator_count);

// Ideal generators {e_i, e_j} − (e_i ≻ e_j − e_j ≺ e_i), one per ordered
// basis pair; both sides are bilinear, so basis pairs generate the same
// ideal as all pairs.
std::vector<DendElem> relation_generators_U(const PreLieData& P);

// The pair relations plus e_i^{[p]} − e_i^{⋆p} per basis element.  The
// p-map relation is not linear in its argument, so basis sufficiency is
// audited (see audit_pmap_membership) rather than assumed.
std::vector<DendElem> relation_generators_Up(const PreLieData& P);

// The span of a dendriform ideal's generators inside the degree filtration
// F_≤d, closed under ≺ and ≻ multiplication by basis trees on both sides.
// Only products that stay entirely within degree d are formed, so every
// element of the span is exactly an ideal element; ranks can only be
// missing contributions that pass through degrees above d, which makes the
// reported quotient dimensions upper bounds that are exact once the
// closure has stabilized below d.
class TruncatedIdeal {
public:
    TruncatedIdeal(std::uint32_t modulus, int generator_count, int truncation,
                   const std::vector<DendElem>& generators);

    std::uint32_t modulus() const noexcept { return p_; }
    int generator_count() const noexcept { return g_; }
    int truncation() const noexcept { return d_; }

    std::size_t rank() const noexcept { return rows_.size(); }
    // Generators whose top degree exceeded the truncation and were dropped.
    std::size_t skipped_generators() const noexcept { return skipped_; }

    const std::vector<Tree>& columns() const noexcept { return columns_; }

    // Reduced-row-echelon basis, one element per row, ordered by pivot
    // tree; unique for the subspace, hence independent of generator order.
    std::vector<DendElem> echelon_basis() const;
    std::vector<std::string> pivot_encodings() const;

    // dim(span ∩ F_≤degree).
    std::size_t rank_within(int degree) const;

    // Remainder after elimination against the echelon basis.
    DendElem reduce(const DendElem& e) const;
    bool contains(const DendElem& e) const { return reduce(e).is_zero(); }

private:
    std::vector<std::uint32_t> to_row(const DendElem& e) const;
    DendElem from_row(const std::vector<std::uint32_t>& row) const;
    void reduce_row(std::vector<std::uint32_t>& row) const;
    bool insert_row(std::vector<std::uint32_t> row, DendElem* stored);

    std::uint32_t p_;
    int g_;
    int d_;
    std::size_t skipped_ = 0;
    std::vector<Tree> columns_;
    std::map<Tree, std::size_t> col_index_;
    std::vector<std::vector<std::uint32_t>> rows_;  // RREF, pivots = 1
    std::vector<std::size_t> row_pivot_;
    std::vector<std::ptrdiff_t> col_to_row_;
};

struct QuotientRow {
    int n;
    std::uint64_t free_dim;
    std::uint64_t cumulative_free;
    std::uint64_t ideal_rank;
    std::uint64_t quotient_dim;
    // -1 unknown (stability not requested), 0 provisional, 1 stabilized.
    int stabilized = -1;
};

struct QuotientReport {
    std::uint32_t p = 0;
    int generators = 0;
    int truncation = 0;
    bool restricted = false;
    std::uint64_t skipped_generators = 0;
    std::vector<QuotientRow> rows;
    std::vector<std::string> pivots;

    std::string to_json() const;
    std::string to_csv() const;
};

// Filtered quotient dimensions of U(P) (or U_p(P) with `restricted`) at
// truncation d: row n reports dim(F_≤n / (ideal ∩ F_≤n)).  When
// `check_stability` is set the closure also runs at d+1 and each degree is
// marked stabilized iff its ideal rank agrees between the two runs.
QuotientReport quotient_dims(const PreLieData& P, int truncation,
                             bool restricted, bool check_stability = false);

// For random x in P, checks x^{[p]} − x^{⋆p} against the computed ideal,
// with x^{[p]} evaluated through the table extension.  Membership is
// reported, not assumed; a non-member would witness that basis p-map
// relations failed to generate the ideal at this truncation.
struct MembershipAudit {
    std::uint64_t seed = 0;
    int trials = 0;
    struct Entry {
        std::string element;
        bool member;
    };
    std::vector<Entry> entries;

    int members() const noexcept;
    bool all_members() const noexcept { return members() == trials; }
    std::string to_json() const;
};

MembershipAudit audit_pmap_membership(const PreLieData& P,
                                      const TruncatedIdeal& ideal, int trials,
                                      std::uint64_t seed);

}  // namespace dendriform
