#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dendriform/scalg.hpp"

using namespace dendriform;

namespace {

FpVec random_vec(std::mt19937_64& rng, std::uint32_t p, std::size_t dim) {
    std::uniform_int_distribution<std::uint32_t> pick(0, p - 1);
    FpVec v(dim, p);
    for (std::size_t i = 0; i < dim; ++i) v.set_raw(i, pick(rng));
    return v;
}

// Independent oracle for the weight-0 Rota-Baxter identity: evaluates both
// sides directly from the algebra product, never calling the checker.
bool rb_oracle(const SCAlgebra& A, const LinearOperator& beta) {
    for (std::size_t i = 0; i < A.dim(); ++i) {
        for (std::size_t j = 0; j < A.dim(); ++j) {
            FpVec x = A.basis_vector(i), y = A.basis_vector(j);
            FpVec lhs = A.mul(beta.apply(x), beta.apply(y));
            FpVec rhs = beta.apply(A.mul(beta.apply(x), y) +
                                   A.mul(x, beta.apply(y)));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

LinearOperator nth_operator(std::uint32_t p, std::size_t dim, std::uint64_t n) {
    std::vector<std::uint32_t> m(dim * dim);
    for (auto& cell : m) {
        cell = static_cast<std::uint32_t>(n % p);
        n /= p;
    }
    return LinearOperator(p, dim, std::move(m));
}

}  // namespace

TEST_CASE("matrix algebra multiplication table") {
    SCAlgebra m2 = SCAlgebra::matrix_algebra(2, 2);
    REQUIRE_EQ(m2.dim(), 4);
    // basis order: e11, e12, e21, e22
    FpVec e11 = m2.basis_vector(0), e12 = m2.basis_vector(1);
    FpVec e21 = m2.basis_vector(2), e22 = m2.basis_vector(3);
    CHECK(m2.mul(e12, e12).is_zero());
    CHECK_EQ(m2.mul(e11, e12), e12);
    CHECK_EQ(m2.mul(e12, e21), e11);
    CHECK_EQ(m2.mul(e21, e12), e22);
    CHECK_EQ(m2.basis_name(1), "e12");

    // the identity element acts as a unit
    FpVec identity = e11 + e22;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        FpVec x = random_vec(rng, 2, 4);
        CHECK_EQ(m2.mul(identity, x), x);
        CHECK_EQ(m2.mul(x, identity), x);
    }

    // oracle: e_{ab} e_{cd} = delta_{bc} e_{ad}, on every pair in M_3
    SCAlgebra m3 = SCAlgebra::matrix_algebra(3, 3);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int c = 0; c < 3; ++c) {
                for (int d = 0; d < 3; ++d) {
                    FpVec lhs = m3.mul(m3.basis_vector(a * 3 + b),
                                       m3.basis_vector(c * 3 + d));
                    FpVec expected(9, 3);
                    if (b == c) expected.set_raw(a * 3 + d, 1);
                    CHECK_EQ(lhs, expected);
                }
            }
        }
    }
}

TEST_CASE("non-associative constants are rejected at construction") {
    // dim 2 with e0 e0 = e1, e1 e0 = e0, rest zero: (e0e0)e0 = e0 but
    // e0(e0e0) = e0 e1 = 0.
    std::vector<std::uint32_t> c(8, 0);
    c[(0 * 2 + 0) * 2 + 1] = 1;  // e0*e0 = e1
    c[(1 * 2 + 0) * 2 + 0] = 1;  // e1*e0 = e0
    CHECK_THROWS_AS(SCAlgebra(2, 2, std::move(c)), std::invalid_argument);
}

TEST_CASE("truncated polynomial and upper triangular algebras") {
    SCAlgebra nil = SCAlgebra::truncated_polynomial(2, 2);
    REQUIRE_EQ(nil.dim(), 2);
    FpVec one = nil.basis_vector(0), x = nil.basis_vector(1);
    CHECK_EQ(nil.mul(one, x), x);
    CHECK(nil.mul(x, x).is_zero());

    SCAlgebra ut = SCAlgebra::upper_triangular(2, 3);
    REQUIRE_EQ(ut.dim(), 3);  // e11, e12, e22
    CHECK_EQ(ut.mul(ut.basis_vector(0), ut.basis_vector(1)),
             ut.basis_vector(1));
    CHECK_EQ(ut.mul(ut.basis_vector(1), ut.basis_vector(2)),
             ut.basis_vector(1));
    CHECK(ut.mul(ut.basis_vector(1), ut.basis_vector(1)).is_zero());
}

TEST_CASE("frobenius") {
    SCAlgebra m2 = SCAlgebra::matrix_algebra(2, 2);
    CHECK(m2.frobenius(m2.basis_vector(1)).is_zero());  // e12^2 = 0

    // diag(a, b) -> diag(a^p, b^p), forced by Fermat
    for (std::uint32_t p : {2u, 3u}) {
        SCAlgebra alg = SCAlgebra::matrix_algebra(2, p);
        for (std::uint32_t a = 0; a < p; ++a) {
            for (std::uint32_t b = 0; b < p; ++b) {
                FpVec diag(4, p);
                diag.set_raw(0, a);
                diag.set_raw(3, b);
                CHECK_EQ(alg.frobenius(diag), diag);
            }
        }
    }

    // [x^{[p]}, y] = [x,[x,..[x,y]..]] with p nested brackets, M_2(F_3)
    SCAlgebra m2f3 = SCAlgebra::matrix_algebra(2, 3);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        FpVec x = random_vec(rng, 3, 4), y = random_vec(rng, 3, 4);
        FpVec nested = y;
        for (int i = 0; i < 3; ++i) nested = m2f3.commutator(x, nested);
        CHECK_EQ(m2f3.commutator(m2f3.frobenius(x), y), nested);
    }

    CHECK_THROWS_AS(m2.power(m2.basis_vector(0), 0), std::invalid_argument);
}

TEST_CASE("rota-baxter gate") {
    SCAlgebra nil = SCAlgebra::truncated_polynomial(2, 2);
    SCAlgebra m2f2 = SCAlgebra::matrix_algebra(2, 2);
    SCAlgebra m2f3 = SCAlgebra::matrix_algebra(2, 3);

    CHECK(check_rota_baxter(nil, LinearOperator::zero(2, 2)).pass());
    CHECK(check_rota_baxter(m2f2, LinearOperator::zero(2, 4)).pass());

    // The identity map satisfies the weight -1 identity, never the
    // weight-0 identity on an algebra with any nonzero basis product:
    // lhs = xy while rhs = beta(2xy), and 2xy differs from xy whenever
    // xy != 0 (it is 0 in characteristic 2).
    CHECK_FALSE(check_rota_baxter(nil, LinearOperator::identity(2, 2)).pass());
    CHECK_FALSE(
        check_rota_baxter(m2f2, LinearOperator::identity(2, 4)).pass());
    CHECK_FALSE(
        check_rota_baxter(m2f3, LinearOperator::identity(3, 4)).pass());
    auto id_report = check_rota_baxter(m2f3, LinearOperator::identity(3, 4));
    CHECK_FALSE(id_report.violations.empty());
    CHECK(id_report.str().find("violating") != std::string::npos);

    // Exhaustive search over all 16 maps on F_2[x]/(x^2) against the
    // direct-evaluation oracle.
    std::vector<std::uint64_t> passers;
    for (std::uint64_t n = 0; n < 16; ++n) {
        LinearOperator beta = nth_operator(2, 2, n);
        bool oracle = rb_oracle(nil, beta);
        CHECK_EQ(check_rota_baxter(nil, beta).pass(), oracle);
        if (oracle) passers.push_back(n);
    }
    // Exactly two survive: the zero map and 1 -> x, x -> 0.
    REQUIRE_EQ(passers.size(), 2);
    CHECK_EQ(passers[0], 0);
    LinearOperator nonzero = nth_operator(2, 2, passers[1]);
    FpVec img_one = nonzero.apply(nil.basis_vector(0));
    FpVec img_x = nonzero.apply(nil.basis_vector(1));
    CHECK_EQ(img_one, nil.basis_vector(1));
    CHECK(img_x.is_zero());
}

TEST_CASE("induced dendriform structure") {
    SCAlgebra nil = SCAlgebra::truncated_polynomial(2, 2);

    // beta = 0: all products vanish
    BilinearStructure zero_struct =
        induced_dendriform(nil, LinearOperator::zero(2, 2));
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(zero_struct.prec(nil.basis_vector(i), nil.basis_vector(j))
                      .is_zero());
            CHECK(zero_struct.succ(nil.basis_vector(i), nil.basis_vector(j))
                      .is_zero());
        }
    }

    // beta(1) = x, beta(x) = 0: a > b = beta(a) b, a < b = a beta(b)
    LinearOperator beta(2, 2, {0, 0, 1, 0});
    REQUIRE(check_rota_baxter(nil, beta).pass());
    BilinearStructure s = induced_dendriform(nil, beta);
    FpVec one = nil.basis_vector(0), x = nil.basis_vector(1);
    CHECK_EQ(s.succ(one, one), x);    // beta(1)*1 = x
    CHECK_EQ(s.prec(one, one), x);    // 1*beta(1) = x
    CHECK(s.succ(x, one).is_zero());  // beta(x)*1 = 0
    CHECK(s.prec(x, one).is_zero());  // x*beta(1) = x^2 = 0

    // a non-Rota-Baxter operator is refused with a report
    CHECK_THROWS_AS(induced_dendriform(nil, LinearOperator::identity(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("aybe residual") {
    SCAlgebra nil = SCAlgebra::truncated_polynomial(2, 2);
    FpVec one = nil.basis_vector(0), x = nil.basis_vector(1);

    // r = 0
    TensorElement zero_tensor(2, 2, {});
    CHECK(check_aybe(nil, zero_tensor).pass());

    // r = x (x) x with x^2 = 0: every term carries a factor of x*x
    TensorElement nilpotent(2, 2, {{x, x}});
    CHECK(check_aybe(nil, nilpotent).pass());

    // independent residual oracle over all 16 single-summand tensors
    auto residual_oracle = [&](const FpVec& u, const FpVec& v) {
        FpVec uu = nil.mul(u, u), vu = nil.mul(v, u), vv = nil.mul(v, v);
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                for (std::size_t c = 0; c < 2; ++c) {
                    std::uint32_t t1 = uu.raw(a) * v.raw(b) * v.raw(c);
                    std::uint32_t t2 = u.raw(a) * vu.raw(b) * v.raw(c);
                    std::uint32_t t3 = u.raw(a) * u.raw(b) * vv.raw(c);
                    // t1 - t2 + t3, with -t2 = (p-1) t2 and p = 2
                    if ((t1 + t2 + t3) % 2 != 0) return false;
                }
            }
        }
        return true;
    };
    int solutions = 0;
    for (std::uint32_t u0 = 0; u0 < 2; ++u0) {
        for (std::uint32_t u1 = 0; u1 < 2; ++u1) {
            for (std::uint32_t v0 = 0; v0 < 2; ++v0) {
                for (std::uint32_t v1 = 0; v1 < 2; ++v1) {
                    FpVec u({u0, u1}, 2), v({v0, v1}, 2);
                    TensorElement r(2, 2, {{u, v}});
                    bool expected = residual_oracle(u, v);
                    CHECK_EQ(check_aybe(nil, r).pass(), expected);
                    if (expected) ++solutions;
                }
            }
        }
    }
    CHECK_GE(solutions, 2);
}

TEST_CASE("operator from tensor, gated") {
    SCAlgebra nil = SCAlgebra::truncated_polynomial(2, 2);
    FpVec one = nil.basis_vector(0), x = nil.basis_vector(1);

    // r = 0 induces beta = 0
    LinearOperator beta0 = rb_from_tensor(nil, TensorElement(2, 2, {}));
    CHECK_EQ(beta0, LinearOperator::zero(2, 2));

    // r = x (x) x: beta(a) = x a x = 0
    LinearOperator betax = rb_from_tensor(nil, TensorElement(2, 2, {{x, x}}));
    CHECK_EQ(betax, LinearOperator::zero(2, 2));

    // non-AYBE tensor is rejected before any operator is built
    TensorElement bad(2, 2, {{one, one}});
    REQUIRE_FALSE(check_aybe(nil, bad).pass());
    CHECK_THROWS_AS(rb_from_tensor(nil, bad), std::invalid_argument);

    // single-summand solutions on M_2(F_2): every AYBE passer yields an
    // operator that passes the Rota-Baxter gate
    SCAlgebra m2 = SCAlgebra::matrix_algebra(2, 2);
    int aybe_ok = 0;
    for (std::uint64_t n = 0; n < 256; ++n) {
        std::uint64_t bits = n;
        FpVec u(4, 2), v(4, 2);
        for (std::size_t i = 0; i < 4; ++i) {
            u.set_raw(i, bits & 1);
            bits >>= 1;
        }
        for (std::size_t i = 0; i < 4; ++i) {
            v.set_raw(i, bits & 1);
            bits >>= 1;
        }
        TensorElement r(2, 4, {{u, v}});
        if (check_aybe(m2, r).pass()) {
            ++aybe_ok;
            LinearOperator beta = rb_from_tensor(m2, r);
            CHECK(check_rota_baxter(m2, beta).pass());
        }
    }
    CHECK_GT(aybe_ok, 0);
}

TEST_CASE("json round trips") {
    SCAlgebra m2 = SCAlgebra::matrix_algebra(2, 3);
    SCAlgebra back = SCAlgebra::from_json(m2.to_json());
    CHECK_EQ(back.dim(), m2.dim());
    CHECK_EQ(back.modulus(), m2.modulus());
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        FpVec x = random_vec(rng, 3, 4), y = random_vec(rng, 3, 4);
        CHECK_EQ(back.mul(x, y), m2.mul(x, y));
    }

    LinearOperator beta(3, 4, {1, 2, 0, 0, 0, 1, 0, 0, 2, 0, 1, 0, 0, 0, 0, 1});
    CHECK_EQ(LinearOperator::from_json(beta.to_json(), 3, 4), beta);

    TensorElement r(3, 4, {{random_vec(rng, 3, 4), random_vec(rng, 3, 4)}});
    TensorElement r2 = TensorElement::from_json(r.to_json(), 3, 4);
    CHECK_EQ(r2.summands().size(), r.summands().size());

    BilinearStructure s = induced_dendriform(m2, LinearOperator::zero(3, 4));
    BilinearStructure s2 = BilinearStructure::from_json(s.to_json());
    CHECK_EQ(s2.dim(), s.dim());
    CHECK_EQ(s2.tag(), s.tag());

    CHECK_THROWS_AS(SCAlgebra::from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(
        SCAlgebra::from_json("{\"p\": 4, \"dim\": 1, \"constants\": []}"),
        std::invalid_argument);
    CHECK_THROWS_AS(LinearOperator::from_json("{}", 3, 4),
                    std::invalid_argument);
}

TEST_CASE("perturbed structures differ in exactly one table cell") {
    SCAlgebra nil = SCAlgebra::truncated_polynomial(2, 2);
    LinearOperator beta(2, 2, {0, 0, 1, 0});
    BilinearStructure s = induced_dendriform(nil, beta);
    BilinearStructure broken = s.perturbed(0, 0, 0, true);
    FpVec one = nil.basis_vector(0);
    CHECK(s.prec(one, one) != broken.prec(one, one));
    CHECK_EQ(s.succ(one, one), broken.succ(one, one));
}
