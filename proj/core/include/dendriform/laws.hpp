#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dendriform/dend.hpp"
#include "dendriform/fp.hpp"
#include "dendriform/scalg.hpp"

namespace dendriform {

// How a verifier draws its samples.  Multilinear identities are conclusive
// on the basis-exhaustive phase alone; identities that are nonlinear in the
// p-map argument additionally need the seeded-random phase.
struct SamplingPlan {
    int basis_degree_cap = 0;   // > 0 enables the basis phase; for the free
                                // algebra this bounds the combined degree of
                                // each sampled tuple
    int random_count = 0;       // > 0 enables the seeded-random phase
    int random_degree_cap = 3;  // degree bound of random free elements
    int random_term_count = 2;  // support size of random free elements
    std::uint64_t seed = 0;

    static SamplingPlan basis_exhaustive(int degree_cap);
    static SamplingPlan seeded_random(int count, std::uint64_t seed,
                                      int degree_cap = 3);
    SamplingPlan& with_random(int count, std::uint64_t seed,
                              int degree_cap = 3);

    std::string describe() const;
};

struct Counterexample {
    std::string relation;
    std::vector<std::string> inputs;
    std::string residual;
};

// Per-relation tallies; a relation passed iff failures == 0.
struct RelationOutcome {
    std::string relation;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
};

struct LawReport {
    std::string law;
    std::string plan;
    std::uint64_t seed = 0;
    std::string note;
    std::vector<RelationOutcome> relations;
    std::vector<Counterexample> counterexamples;  // capped per relation

    bool pass() const noexcept;
    std::string verdict() const { return pass() ? "pass" : "fail"; }
    std::string to_json() const;
    std::string summary() const;
};

namespace detail {
LawReport make_report(const char* law, const SamplingPlan& plan);
}

// The operations a verifier may need.  Absent operations are simply not
// installed; a verifier that needs one raises std::invalid_argument.
template <class Elem>
struct AlgebraOps {
    std::function<Elem(const Elem&, const Elem&)> prec;
    std::function<Elem(const Elem&, const Elem&)> succ;
    std::function<Elem(const Elem&, const Elem&)> brace;    // pre-Lie product
    std::function<Elem(const Elem&, const Elem&)> bracket;  // Lie bracket
    std::function<Elem(const Elem&)> pmap;
    std::function<int(const Elem&)> degree;  // enables combined-degree caps
    std::uint32_t modulus = 0;
};

template <class Elem>
struct SampleSet {
    std::vector<Elem> basis;
    std::function<Elem(std::mt19937_64&)> random;
};

namespace detail {

class LawRecorder {
public:
    explicit LawRecorder(LawReport& report, std::size_t cap = 8)
        : report_(report), cap_(cap) {}

    template <class Elem>
    void record(const std::string& relation, const Elem& residual,
                std::vector<std::string> inputs) {
        std::size_t idx = find(relation);
        auto& outcome = report_.relations[idx];
        ++outcome.checked;
        if (residual.is_zero()) return;
        ++outcome.failures;
        if (recorded_[idx] < cap_) {
            ++recorded_[idx];
            report_.counterexamples.push_back(
                {relation, std::move(inputs), residual.str()});
        }
    }

private:
    std::size_t find(const std::string& relation) {
        for (std::size_t i = 0; i < report_.relations.size(); ++i) {
            if (report_.relations[i].relation == relation) return i;
        }
        report_.relations.push_back({relation, 0, 0});
        recorded_.push_back(0);
        return report_.relations.size() - 1;
    }

    LawReport& report_;
    std::size_t cap_;
    std::vector<std::size_t> recorded_;
};

// Runs fn over every basis tuple within the combined-degree cap, then over
// plan.random_count random tuples.
template <class Elem, class Fn>
void for_each_tuple(const SampleSet<Elem>& samples, const SamplingPlan& plan,
                    const std::function<int(const Elem&)>& degree, int arity,
                    Fn&& fn) {
    if (plan.basis_degree_cap > 0) {
        const auto& basis = samples.basis;
        std::vector<const Elem*> tuple(arity, nullptr);
        std::vector<std::size_t> index(arity, 0);
        std::size_t n = basis.size();
        if (n > 0) {
            bool done = false;
            while (!done) {
                int total = 0;
                if (degree) {
                    for (int a = 0; a < arity; ++a) {
                        total += degree(basis[index[a]]);
                    }
                }
                if (!degree || total <= plan.basis_degree_cap) {
                    for (int a = 0; a < arity; ++a) tuple[a] = &basis[index[a]];
                    fn(tuple);
                }
                int pos = arity - 1;
                while (pos >= 0 && ++index[pos] == n) {
                    index[pos] = 0;
                    --pos;
                }
                if (pos < 0) done = true;
            }
        }
    }
    if (plan.random_count > 0 && samples.random) {
        std::mt19937_64 rng(plan.seed);
        std::vector<Elem> storage;
        std::vector<const Elem*> tuple(arity, nullptr);
        for (int trial = 0; trial < plan.random_count; ++trial) {
            storage.clear();
            for (int a = 0; a < arity; ++a) storage.push_back(samples.random(rng));
            for (int a = 0; a < arity; ++a) tuple[a] = &storage[a];
            fn(tuple);
        }
    }
}

inline std::vector<FpScalar> scalar_pool(std::uint32_t p,
                                         std::mt19937_64& rng) {
    std::vector<FpScalar> out;
    if (p <= 16) {
        for (std::uint32_t a = 0; a < p; ++a) out.emplace_back(a, p);
    } else {
        out.emplace_back(0u, p);
        out.emplace_back(1u, p);
        out.emplace_back(p - 1, p);
        std::uniform_int_distribution<std::uint32_t> dist(2, p - 2);
        for (int i = 0; i < 5; ++i) out.emplace_back(dist(rng), p);
    }
    return out;
}

// p-fold nested application x, {x, … {x, y}…} of a bilinear product.
template <class Elem, class Binary>
Elem nested_power(const Binary& op, const Elem& x, const Elem& y,
                  std::uint32_t copies) {
    Elem acc = y;
    for (std::uint32_t i = 0; i < copies; ++i) acc = op(x, acc);
    return acc;
}

template <class Elem>
void require_op(const std::function<Elem(const Elem&, const Elem&)>& op,
                const char* name) {
    if (!op) {
        throw std::invalid_argument(std::string("structure lacks required "
                                                "operation: ") +
                                    name);
    }
}

template <class Elem>
void require_unary(const std::function<Elem(const Elem&)>& op,
                   const char* name) {
    if (!op) {
        throw std::invalid_argument(std::string("structure lacks required "
                                                "operation: ") +
                                    name);
    }
}

}  // namespace detail

// The three defining identities of the two split products:
//   (x ≺ y) ≺ z = x ≺ (y ⋆ z)
//   (x ≻ y) ≺ z = x ≻ (y ≺ z)
//   (x ⋆ y) ≻ z = x ≻ (y ≻ z)
template <class Elem>
LawReport verify_dendriform(const AlgebraOps<Elem>& ops,
                            const SampleSet<Elem>& samples,
                            const SamplingPlan& plan) {
    detail::require_op(ops.prec, "prec");
    detail::require_op(ops.succ, "succ");
    LawReport report = detail::make_report("dendriform", plan);
    detail::LawRecorder rec(report);
    auto star = [&](const Elem& a, const Elem& b) {
        return ops.prec(a, b) + ops.succ(a, b);
    };
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 3,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1], &z = *t[2];
            std::vector<std::string> in{x.str(), y.str(), z.str()};
            rec.record("(x<y)<z = x<(y*z)",
                       ops.prec(ops.prec(x, y), z) - ops.prec(x, star(y, z)),
                       in);
            rec.record("(x>y)<z = x>(y<z)",
                       ops.prec(ops.succ(x, y), z) -
                           ops.succ(x, ops.prec(y, z)),
                       in);
            rec.record("(x*y)>z = x>(y>z)",
                       ops.succ(star(x, y), z) - ops.succ(x, ops.succ(y, z)),
                       in);
        });
    return report;
}

// Associator symmetry in the first two arguments:
//   a(x,y,z) = a(y,x,z) with a(x,y,z) = {x,{y,z}} − {{x,y},z}.
template <class Elem>
LawReport verify_prelie(const AlgebraOps<Elem>& ops,
                        const SampleSet<Elem>& samples,
                        const SamplingPlan& plan) {
    detail::require_op(ops.brace, "brace");
    LawReport report = detail::make_report("pre-lie", plan);
    detail::LawRecorder rec(report);
    auto assoc = [&](const Elem& a, const Elem& b, const Elem& c) {
        return ops.brace(a, ops.brace(b, c)) - ops.brace(ops.brace(a, b), c);
    };
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 3,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1], &z = *t[2];
            rec.record("a(x,y,z) = a(y,x,z)",
                       assoc(x, y, z) - assoc(y, x, z),
                       {x.str(), y.str(), z.str()});
        });
    return report;
}

// x ≻ y = y ≺ x.
template <class Elem>
LawReport verify_zinbiel(const AlgebraOps<Elem>& ops,
                         const SampleSet<Elem>& samples,
                         const SamplingPlan& plan) {
    detail::require_op(ops.prec, "prec");
    detail::require_op(ops.succ, "succ");
    LawReport report = detail::make_report("zinbiel", plan);
    detail::LawRecorder rec(report);
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 2,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1];
            rec.record("x>y = y<x", ops.succ(x, y) - ops.prec(y, x),
                       {x.str(), y.str()});
        });
    return report;
}

// Lie prerequisites plus the three p-map relations of a restricted Lie
// algebra: scalar homogeneity, the ad-power relation and Jacobson
// additivity with the s_i defect terms.
template <class Elem>
LawReport verify_restricted_lie(const AlgebraOps<Elem>& ops,
                                const SampleSet<Elem>& samples,
                                const SamplingPlan& plan) {
    detail::require_op(ops.bracket, "bracket");
    detail::require_unary(ops.pmap, "pmap");
    const std::uint32_t p = ops.modulus;
    LawReport report = detail::make_report("restricted-lie", plan);
    detail::LawRecorder rec(report);
    std::mt19937_64 scalar_rng(plan.seed ^ 0x9e3779b97f4a7c15ull);
    auto alphas = detail::scalar_pool(p, scalar_rng);

    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 1,
        [&](const std::vector<const Elem*>& t) {
            const Elem& x = *t[0];
            rec.record("[x,x] = 0", ops.bracket(x, x), {x.str()});
            for (const auto& alpha : alphas) {
                rec.record("(ax)^[p] = a^p x^[p]",
                           ops.pmap(x * alpha) -
                               ops.pmap(x) * alpha.pow(p),
                           {alpha.str(), x.str()});
            }
        });
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 2,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1];
            std::vector<std::string> in{x.str(), y.str()};
            rec.record("[x,y]+[y,x] = 0",
                       ops.bracket(x, y) + ops.bracket(y, x), in);
            rec.record("[x^[p],y] = ad_x^p(y)",
                       ops.bracket(ops.pmap(x), y) -
                           detail::nested_power(ops.bracket, x, y, p),
                       in);
            Elem defect = ops.pmap(x + y) - ops.pmap(x) - ops.pmap(y);
            for (const auto& s : s_coefficients(x, y, ops.bracket)) {
                defect = defect - s;
            }
            rec.record("(x+y)^[p] = x^[p]+y^[p]+sum s_i", defect, in);
        });
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 3,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1], &z = *t[2];
            Elem jac = ops.bracket(x, ops.bracket(y, z)) +
                       ops.bracket(y, ops.bracket(z, x)) +
                       ops.bracket(z, ops.bracket(x, y));
            rec.record("jacobi", jac, {x.str(), y.str(), z.str()});
        });
    return report;
}

// The four p-map relations of a restricted pre-Lie algebra.  The induced
// bracket [x,y] = {x,y} − {y,x} feeds both the ad-power side of the third
// relation and the s_i terms of the fourth.
template <class Elem>
LawReport verify_restricted_prelie(const AlgebraOps<Elem>& ops,
                                   const SampleSet<Elem>& samples,
                                   const SamplingPlan& plan) {
    detail::require_op(ops.brace, "brace");
    detail::require_unary(ops.pmap, "pmap");
    const std::uint32_t p = ops.modulus;
    LawReport report = detail::make_report("restricted-prelie", plan);
    detail::LawRecorder rec(report);
    std::mt19937_64 scalar_rng(plan.seed ^ 0x9e3779b97f4a7c15ull);
    auto alphas = detail::scalar_pool(p, scalar_rng);
    auto induced = [&](const Elem& a, const Elem& b) {
        return ops.brace(a, b) - ops.brace(b, a);
    };

    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 1,
        [&](const std::vector<const Elem*>& t) {
            const Elem& x = *t[0];
            for (const auto& alpha : alphas) {
                rec.record("(2.1) (ax)^[p] = a^p x^[p]",
                           ops.pmap(x * alpha) - ops.pmap(x) * alpha.pow(p),
                           {alpha.str(), x.str()});
            }
        });
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 3,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1], &z = *t[2];
            auto assoc = [&](const Elem& a, const Elem& b, const Elem& c) {
                return ops.brace(a, ops.brace(b, c)) -
                       ops.brace(ops.brace(a, b), c);
            };
            rec.record("pre-lie a(x,y,z) = a(y,x,z)",
                       assoc(x, y, z) - assoc(y, x, z),
                       {x.str(), y.str(), z.str()});
        });
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 2,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1];
            std::vector<std::string> in{x.str(), y.str()};
            Elem brace_pow = detail::nested_power(ops.brace, x, y, p);
            rec.record("(2.2) {x^[p],y} = {x,..{x,y}..}",
                       ops.brace(ops.pmap(x), y) - brace_pow, in);
            Elem ad_pow = detail::nested_power<Elem>(induced, x, y, p);
            rec.record("(2.3) {y,x^[p]} = {x,..{x,y}..} - [x,..[x,y]..]",
                       ops.brace(y, ops.pmap(x)) - (brace_pow - ad_pow), in);
            Elem defect = ops.pmap(x + y) - ops.pmap(x) - ops.pmap(y);
            for (const auto& s : s_coefficients(x, y, induced)) {
                defect = defect - s;
            }
            rec.record("(2.4) (x+y)^[p] = x^[p]+y^[p]+sum s_i", defect, in);
        });
    return report;
}

// Element-level witnesses that the pre-Lie and associative routes agree:
// the induced Lie brackets coincide and the supplied p-map equals the
// ⋆-power.
template <class Elem>
LawReport verify_functor_squares(const AlgebraOps<Elem>& ops,
                                 const SampleSet<Elem>& samples,
                                 const SamplingPlan& plan) {
    detail::require_op(ops.prec, "prec");
    detail::require_op(ops.succ, "succ");
    detail::require_op(ops.brace, "brace");
    detail::require_unary(ops.pmap, "pmap");
    const std::uint32_t p = ops.modulus;
    LawReport report = detail::make_report("functor-squares", plan);
    detail::LawRecorder rec(report);
    auto star = [&](const Elem& a, const Elem& b) {
        return ops.prec(a, b) + ops.succ(a, b);
    };
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 2,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1];
            rec.record("{x,y}-{y,x} = x*y-y*x",
                       (ops.brace(x, y) - ops.brace(y, x)) -
                           (star(x, y) - star(y, x)),
                       {x.str(), y.str()});
        });
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 1,
        [&](const std::vector<const Elem*>& t) {
            const Elem& x = *t[0];
            Elem star_pow = x;
            for (std::uint32_t i = 1; i < p; ++i) star_pow = star(star_pow, x);
            rec.record("x^[p] = x^(*p)", ops.pmap(x) - star_pow, {x.str()});
        });
    return report;
}

// The older one-relation notion of restrictedness: with the right-nested
// brace power x^{{p}} = {x,{x,…{x,x}…}} as p-map,
//   {x^{{p}}, y} = {x,{x,…{x,y}…}}.
template <class Elem>
LawReport verify_dzhumadildaev(const AlgebraOps<Elem>& ops,
                               const SampleSet<Elem>& samples,
                               const SamplingPlan& plan) {
    detail::require_op(ops.brace, "brace");
    const std::uint32_t p = ops.modulus;
    LawReport report = detail::make_report("dzhumadildaev", plan);
    detail::LawRecorder rec(report);
    detail::for_each_tuple<Elem>(
        samples, plan, ops.degree, 2,
        [&](const std::vector<const Elem*>& t) {
            const Elem &x = *t[0], &y = *t[1];
            // p factors of x in total: p-1 applications onto x itself.
            Elem brace_self = detail::nested_power(ops.brace, x, x, p - 1);
            rec.record("{x^{p},y} = {x,..{x,y}..}",
                       ops.brace(brace_self, y) -
                           detail::nested_power(ops.brace, x, y, p),
                       {x.str(), y.str()});
        });
    return report;
}

// Ready-made adapters.

// The free dendriform algebra with its full operation set; pmap = ⋆-power.
AlgebraOps<DendElem> free_dend_ops(std::uint32_t p, int generator_count);
SampleSet<DendElem> free_dend_samples(std::uint32_t p, int generator_count,
                                      int basis_degree_cap,
                                      const SamplingPlan& plan);

// Coordinate structures.
AlgebraOps<FpVec> bilinear_ops(const BilinearStructure& S);
// Associative algebra viewed as a Lie algebra: commutator + Frobenius.
AlgebraOps<FpVec> associative_lie_ops(const SCAlgebra& A);
// Associative algebra viewed as a pre-Lie algebra: {x,y} = x·y, Frobenius
// p-map, and the (≺,≻) = (·,0) splitting.
AlgebraOps<FpVec> associative_prelie_ops(const SCAlgebra& A);
SampleSet<FpVec> coordinate_samples(std::uint32_t p, std::size_t dim);

}  // namespace dendriform
