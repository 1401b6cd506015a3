#include "dendriform/laws.hpp"

#include <sstream>

#include "dendriform/trees.hpp"
#include "json.hpp"

namespace dendriform {

using nlohmann::ordered_json;

SamplingPlan SamplingPlan::basis_exhaustive(int degree_cap) {
    SamplingPlan plan;
    plan.basis_degree_cap = degree_cap;
    return plan;
}

SamplingPlan SamplingPlan::seeded_random(int count, std::uint64_t seed,
                                         int degree_cap) {
    SamplingPlan plan;
    plan.random_count = count;
    plan.random_degree_cap = degree_cap;
    plan.seed = seed;
    return plan;
}

SamplingPlan& SamplingPlan::with_random(int count, std::uint64_t seed_value,
                                        int degree_cap) {
    random_count = count;
    random_degree_cap = degree_cap;
    seed = seed_value;
    return *this;
}

std::string SamplingPlan::describe() const {
    std::ostringstream os;
    bool any = false;
    if (basis_degree_cap > 0) {
        os << "basis-exhaustive degree<=" << basis_degree_cap;
        any = true;
    }
    if (random_count > 0) {
        if (any) os << " + ";
        os << "seeded-random n=" << random_count
           << " degree<=" << random_degree_cap << " seed=" << seed;
        any = true;
    }
    if (!any) os << "empty";
    return os.str();
}

namespace detail {

LawReport make_report(const char* law, const SamplingPlan& plan) {
    LawReport report;
    report.law = law;
    report.plan = plan.describe();
    report.seed = plan.seed;
    if (plan.basis_degree_cap > 0) {
        report.note =
            "multilinear relations checked on all basis tuples hold for all "
            "elements by multilinearity; p-map relations additionally need "
            "the seeded-random phase";
    }
    return report;
}

}  // namespace detail

bool LawReport::pass() const noexcept {
    for (const auto& r : relations) {
        if (r.failures > 0) return false;
    }
    return counterexamples.empty();
}

std::string LawReport::to_json() const {
    ordered_json j;
    j["law"] = law;
    j["plan"] = plan;
    j["seed"] = seed;
    j["verdict"] = verdict();
    if (!note.empty()) j["note"] = note;
    ordered_json rels = ordered_json::array();
    for (const auto& r : relations) {
        ordered_json entry;
        entry["relation"] = r.relation;
        entry["checked"] = r.checked;
        entry["failures"] = r.failures;
        rels.push_back(std::move(entry));
    }
    j["relations"] = std::move(rels);
    ordered_json ces = ordered_json::array();
    for (const auto& ce : counterexamples) {
        ordered_json entry;
        entry["relation"] = ce.relation;
        entry["inputs"] = ce.inputs;
        entry["residual"] = ce.residual;
        ces.push_back(std::move(entry));
    }
    j["counterexamples"] = std::move(ces);
    return j.dump(2);
}

std::string LawReport::summary() const {
    std::ostringstream os;
    os << law << " [" << plan << "]: " << verdict();
    for (const auto& r : relations) {
        os << "\n  " << r.relation << ": " << (r.failures == 0 ? "pass" : "FAIL")
           << " (" << r.checked << " checked";
        if (r.failures > 0) os << ", " << r.failures << " failures";
        os << ")";
    }
    return os.str();
}

AlgebraOps<DendElem> free_dend_ops(std::uint32_t p, int /*generator_count*/) {
    AlgebraOps<DendElem> ops;
    ops.modulus = p;
    ops.prec = [](const DendElem& x, const DendElem& y) { return prec(x, y); };
    ops.succ = [](const DendElem& x, const DendElem& y) { return succ(x, y); };
    ops.brace = [](const DendElem& x, const DendElem& y) {
        return pre_lie(x, y);
    };
    ops.bracket = [](const DendElem& x, const DendElem& y) {
        return lie_bracket(x, y);
    };
    ops.pmap = [p](const DendElem& x) { return star_power(x, p); };
    ops.degree = [](const DendElem& x) { return x.max_degree(); };
    return ops;
}

SampleSet<DendElem> free_dend_samples(std::uint32_t p, int generator_count,
                                      int basis_degree_cap,
                                      const SamplingPlan& plan) {
    SampleSet<DendElem> set;
    for (int n = 1; n <= basis_degree_cap; ++n) {
        for (const Tree& t : enumerate_trees(n, generator_count)) {
            set.basis.push_back(
                DendElem::single(t, FpScalar(1, p), generator_count));
        }
    }
    // Pools for the random phase, one per degree.
    auto pools = std::make_shared<std::vector<std::vector<Tree>>>();
    for (int n = 1; n <= plan.random_degree_cap; ++n) {
        pools->push_back(enumerate_trees(n, generator_count));
    }
    int terms = plan.random_term_count;
    set.random = [p, generator_count, pools, terms](std::mt19937_64& rng) {
        DendElem out(p, generator_count);
        std::uniform_int_distribution<std::size_t> pick_degree(
            0, pools->size() - 1);
        std::uniform_int_distribution<std::uint32_t> pick_coeff(1, p - 1);
        for (int i = 0; i < terms; ++i) {
            const auto& pool = (*pools)[pick_degree(rng)];
            std::uniform_int_distribution<std::size_t> pick_tree(
                0, pool.size() - 1);
            out.add_term(pool[pick_tree(rng)], FpScalar(pick_coeff(rng), p));
        }
        return out;
    };
    return set;
}

AlgebraOps<FpVec> bilinear_ops(const BilinearStructure& S) {
    AlgebraOps<FpVec> ops;
    ops.modulus = S.modulus();
    ops.prec = [S](const FpVec& x, const FpVec& y) { return S.prec(x, y); };
    ops.succ = [S](const FpVec& x, const FpVec& y) { return S.succ(x, y); };
    ops.brace = [S](const FpVec& x, const FpVec& y) { return S.pre_lie(x, y); };
    ops.bracket = [S](const FpVec& x, const FpVec& y) {
        return S.lie_bracket(x, y);
    };
    ops.pmap = [S](const FpVec& x) { return S.star_power(x); };
    return ops;
}

AlgebraOps<FpVec> associative_lie_ops(const SCAlgebra& A) {
    AlgebraOps<FpVec> ops;
    ops.modulus = A.modulus();
    ops.bracket = [A](const FpVec& x, const FpVec& y) {
        return A.commutator(x, y);
    };
    ops.pmap = [A](const FpVec& x) { return A.frobenius(x); };
    return ops;
}

AlgebraOps<FpVec> associative_prelie_ops(const SCAlgebra& A) {
    AlgebraOps<FpVec> ops;
    ops.modulus = A.modulus();
    ops.brace = [A](const FpVec& x, const FpVec& y) { return A.mul(x, y); };
    ops.bracket = [A](const FpVec& x, const FpVec& y) {
        return A.commutator(x, y);
    };
    ops.pmap = [A](const FpVec& x) { return A.frobenius(x); };
    ops.prec = [A](const FpVec& x, const FpVec& y) { return A.mul(x, y); };
    ops.succ = [A](const FpVec&, const FpVec&) {
        return FpVec(A.dim(), A.modulus());
    };
    return ops;
}

SampleSet<FpVec> coordinate_samples(std::uint32_t p, std::size_t dim) {
    SampleSet<FpVec> set;
    for (std::size_t i = 0; i < dim; ++i) {
        FpVec v(dim, p);
        v.set_raw(i, 1);
        set.basis.push_back(v);
    }
    set.random = [p, dim](std::mt19937_64& rng) {
        std::uniform_int_distribution<std::uint32_t> pick(0, p - 1);
        FpVec v(dim, p);
        for (std::size_t i = 0; i < dim; ++i) v.set_raw(i, pick(rng));
        return v;
    };
    return set;
}

}  // namespace dendriform
