#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dendriform {

// Largest supported modulus: keeps every product of two residues inside
// an unsigned 64-bit intermediate.
inline constexpr std::uint32_t kMaxModulus = 0x7fffffffu;

// Two residues with different moduli met in one operation.
class ModulusMismatch : public std::invalid_argument {
public:
    ModulusMismatch(std::uint32_t lhs, std::uint32_t rhs);
    std::uint32_t lhs_modulus() const noexcept { return lhs_; }
    std::uint32_t rhs_modulus() const noexcept { return rhs_; }

private:
    std::uint32_t lhs_;
    std::uint32_t rhs_;
};

// Deterministic Miller-Rabin; exact for the whole supported range.
bool is_prime(std::uint32_t n) noexcept;

// Throws std::invalid_argument unless 2 <= p <= kMaxModulus and p is prime.
// Verified moduli are cached, so repeated construction is cheap.
void require_prime_modulus(std::uint32_t p);

// A residue in the prime field F_p.  Immutable; every operation returns a
// fresh value and requires equal moduli on both sides.
class FpScalar {
public:
    FpScalar(std::uint64_t value, std::uint32_t modulus)
        : p_(modulus) {
        require_prime_modulus(modulus);
        v_ = static_cast<std::uint32_t>(value % modulus);
    }

    static FpScalar from_signed(std::int64_t value, std::uint32_t modulus);

    std::uint32_t value() const noexcept { return v_; }
    std::uint32_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }

    FpScalar operator+(const FpScalar& o) const;
    FpScalar operator-(const FpScalar& o) const;
    FpScalar operator*(const FpScalar& o) const;
    FpScalar operator-() const;

    // a^e by binary exponentiation; 0^0 = 1 by convention.
    FpScalar pow(std::uint64_t e) const;

    // Fermat inverse a^(p-2); throws std::domain_error on zero.
    FpScalar inverse() const;

    bool operator==(const FpScalar& o) const {
        return v_ == o.v_ && p_ == o.p_;
    }
    bool operator!=(const FpScalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::uint32_t v_;
    std::uint32_t p_;
};

// Coordinate vector over F_p; the element type of structure-constant
// algebras and the row type of the exact linear algebra.
class FpVec {
public:
    FpVec(std::size_t dim, std::uint32_t modulus);
    FpVec(std::vector<std::uint32_t> coords, std::uint32_t modulus);

    std::size_t dim() const noexcept { return v_.size(); }
    std::uint32_t modulus() const noexcept { return p_; }

    FpScalar at(std::size_t i) const { return FpScalar(v_.at(i), p_); }
    std::uint32_t raw(std::size_t i) const { return v_[i]; }
    void set(std::size_t i, const FpScalar& c);
    void set_raw(std::size_t i, std::uint32_t residue) { v_[i] = residue % p_; }

    bool is_zero() const noexcept;

    FpVec operator+(const FpVec& o) const;
    FpVec operator-(const FpVec& o) const;
    FpVec operator-() const;
    FpVec operator*(const FpScalar& c) const;

    bool operator==(const FpVec& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const FpVec& o) const { return !(*this == o); }

    const std::vector<std::uint32_t>& coords() const noexcept { return v_; }

    std::string str() const;

private:
    void check_compatible(const FpVec& o) const;

    std::vector<std::uint32_t> v_;
    std::uint32_t p_;
};

inline FpVec zero_like(const FpVec& v) { return FpVec(v.dim(), v.modulus()); }

}  // namespace dendriform
