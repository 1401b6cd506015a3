#include "dendriform/fp.hpp"

#include <mutex>
#include <sstream>
#include <unordered_set>

namespace dendriform {

ModulusMismatch::ModulusMismatch(std::uint32_t lhs, std::uint32_t rhs)
    : std::invalid_argument("modulus mismatch: " + std::to_string(lhs) +
                            " vs " + std::to_string(rhs)),
      lhs_(lhs),
      rhs_(rhs) {}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t acc = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return acc;
}

// One Miller-Rabin round; n odd, n > 2, base already reduced and nonzero.
bool mr_witness(std::uint64_t n, std::uint64_t base, std::uint64_t d, int r) {
    std::uint64_t x = pow_mod(base, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Bases {2,3,5,7} decide primality for all n < 3,215,031,751, which
    // covers the full supported modulus range.
    for (std::uint64_t base : {2ull, 3ull, 5ull, 7ull}) {
        if (mr_witness(n, base % n, d, r)) return false;
    }
    return true;
}

void require_prime_modulus(std::uint32_t p) {
    static std::mutex mu;
    static std::unordered_set<std::uint32_t> verified;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (verified.count(p)) return;
    }
    if (p < 2 || p > kMaxModulus) {
        throw std::invalid_argument("modulus " + std::to_string(p) +
                                    " outside supported range [2, 2^31-1]");
    }
    if (!is_prime(p)) {
        throw std::invalid_argument("modulus " + std::to_string(p) +
                                    " is not prime");
    }
    std::lock_guard<std::mutex> lock(mu);
    verified.insert(p);
}

FpScalar FpScalar::from_signed(std::int64_t value, std::uint32_t modulus) {
    require_prime_modulus(modulus);
    std::int64_t r = value % static_cast<std::int64_t>(modulus);
    if (r < 0) r += modulus;
    return FpScalar(static_cast<std::uint64_t>(r), modulus);
}

FpScalar FpScalar::operator+(const FpScalar& o) const {
    if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
    std::uint64_t s = static_cast<std::uint64_t>(v_) + o.v_;
    if (s >= p_) s -= p_;
    return FpScalar(s, p_);
}

FpScalar FpScalar::operator-(const FpScalar& o) const {
    if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
    return FpScalar(v_ >= o.v_ ? v_ - o.v_ : p_ - (o.v_ - v_), p_);
}

FpScalar FpScalar::operator*(const FpScalar& o) const {
    if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
    return FpScalar(static_cast<std::uint64_t>(v_) * o.v_ % p_, p_);
}

FpScalar FpScalar::operator-() const {
    return FpScalar(v_ == 0 ? 0 : p_ - v_, p_);
}

FpScalar FpScalar::pow(std::uint64_t e) const {
    return FpScalar(pow_mod(v_, e, p_), p_);
}

FpScalar FpScalar::inverse() const {
    if (v_ == 0) {
        throw std::domain_error("division by zero in F_" + std::to_string(p_));
    }
    return pow(static_cast<std::uint64_t>(p_) - 2);
}

std::string FpScalar::str() const {
    return std::to_string(v_);
}

FpVec::FpVec(std::size_t dim, std::uint32_t modulus)
    : v_(dim, 0), p_(modulus) {
    require_prime_modulus(modulus);
}

FpVec::FpVec(std::vector<std::uint32_t> coords, std::uint32_t modulus)
    : v_(std::move(coords)), p_(modulus) {
    require_prime_modulus(modulus);
    for (auto& c : v_) c %= p_;
}

void FpVec::set(std::size_t i, const FpScalar& c) {
    if (c.modulus() != p_) throw ModulusMismatch(p_, c.modulus());
    v_.at(i) = c.value();
}

bool FpVec::is_zero() const noexcept {
    for (auto c : v_) {
        if (c != 0) return false;
    }
    return true;
}

void FpVec::check_compatible(const FpVec& o) const {
    if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
    if (v_.size() != o.v_.size()) {
        throw std::invalid_argument("vector dimension mismatch: " +
                                    std::to_string(v_.size()) + " vs " +
                                    std::to_string(o.v_.size()));
    }
}

FpVec FpVec::operator+(const FpVec& o) const {
    check_compatible(o);
    FpVec out(v_.size(), p_);
    for (std::size_t i = 0; i < v_.size(); ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(v_[i]) + o.v_[i];
        out.v_[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    return out;
}

FpVec FpVec::operator-(const FpVec& o) const {
    check_compatible(o);
    FpVec out(v_.size(), p_);
    for (std::size_t i = 0; i < v_.size(); ++i) {
        out.v_[i] = v_[i] >= o.v_[i] ? v_[i] - o.v_[i] : p_ - (o.v_[i] - v_[i]);
    }
    return out;
}

FpVec FpVec::operator-() const {
    FpVec out(v_.size(), p_);
    for (std::size_t i = 0; i < v_.size(); ++i) {
        out.v_[i] = v_[i] == 0 ? 0 : p_ - v_[i];
    }
    return out;
}

FpVec FpVec::operator*(const FpScalar& c) const {
    if (c.modulus() != p_) throw ModulusMismatch(p_, c.modulus());
    FpVec out(v_.size(), p_);
    for (std::size_t i = 0; i < v_.size(); ++i) {
        out.v_[i] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(v_[i]) * c.value() % p_);
    }
    return out;
}

std::string FpVec::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (i) os << ' ';
        os << v_[i];
    }
    os << ']';
    return os.str();
}

}  // namespace dendriform
