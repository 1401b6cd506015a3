// dendcalc: command-line front end for the dendriform / restricted pre-Lie
// engine.  Subcommands: verify, envelope, search, dims.  Exit codes: 0 all
// checks passed, 1 a law or audit failed, 2 bad input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dendriform/dend.hpp"
#include "dendriform/envelope.hpp"
#include "dendriform/fp.hpp"
#include "dendriform/laws.hpp"
#include "dendriform/scalg.hpp"
#include "dendriform/trees.hpp"

using namespace dendriform;
using nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitLawFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
}

std::string law_report_csv(const LawReport& report) {
    std::ostringstream os;
    os << "law,relation,checked,failures,verdict\n";
    for (const auto& r : report.relations) {
        os << report.law << ',' << '"' << r.relation << '"' << ',' << r.checked
           << ',' << r.failures << ',' << (r.failures == 0 ? "pass" : "fail")
           << '\n';
    }
    return os.str();
}

struct VerifyOptions {
    std::string suite;
    bool free_algebra = false;
    std::uint32_t p = 2;
    int g = 1;
    int d = 4;
    std::string algebra_path;
    std::string operator_path;
    std::string pmap = "default";
    std::uint64_t seed = 0;
    int samples = 0;
    std::string format = "json";
    std::string out_path;
};

template <class Elem>
LawReport dispatch_suite(const std::string& suite, const AlgebraOps<Elem>& ops,
                         const SampleSet<Elem>& samples,
                         const SamplingPlan& plan) {
    if (suite == "dendriform") return verify_dendriform(ops, samples, plan);
    if (suite == "prelie") return verify_prelie(ops, samples, plan);
    if (suite == "zinbiel") return verify_zinbiel(ops, samples, plan);
    if (suite == "restricted-lie") {
        return verify_restricted_lie(ops, samples, plan);
    }
    if (suite == "restricted-prelie") {
        return verify_restricted_prelie(ops, samples, plan);
    }
    if (suite == "functor-squares") {
        return verify_functor_squares(ops, samples, plan);
    }
    if (suite == "dzhumadildaev") {
        return verify_dzhumadildaev(ops, samples, plan);
    }
    throw std::invalid_argument("unknown suite: " + suite);
}

int run_verify(const VerifyOptions& opt) {
    SamplingPlan plan = SamplingPlan::basis_exhaustive(opt.d);
    if (opt.samples > 0) plan.with_random(opt.samples, opt.seed, 3);

    LawReport report;
    if (opt.free_algebra) {
        AlgebraOps<DendElem> ops = free_dend_ops(opt.p, opt.g);
        SampleSet<DendElem> samples =
            free_dend_samples(opt.p, opt.g, opt.d, plan);
        report = dispatch_suite(opt.suite, ops, samples, plan);
    } else {
        if (opt.algebra_path.empty()) {
            throw std::invalid_argument(
                "verify needs --free or --algebra <path>");
        }
        std::string text = read_file(opt.algebra_path);
        ordered_json parsed = ordered_json::parse(text, nullptr, false);
        if (parsed.is_discarded()) {
            throw std::invalid_argument("malformed JSON in " +
                                        opt.algebra_path);
        }
        if (parsed.contains("prec") && parsed.contains("succ")) {
            BilinearStructure S = BilinearStructure::from_json(text);
            AlgebraOps<FpVec> ops = bilinear_ops(S);
            SampleSet<FpVec> samples =
                coordinate_samples(S.modulus(), S.dim());
            report = dispatch_suite(opt.suite, ops, samples, plan);
        } else if (parsed.contains("brackets")) {
            PreLieData P = PreLieData::from_json(text);
            AlgebraOps<FpVec> ops;
            ops.modulus = P.modulus();
            ops.brace = [P](const FpVec& x, const FpVec& y) {
                return P.brace(x, y);
            };
            ops.bracket = [P](const FpVec& x, const FpVec& y) {
                return P.lie_bracket(x, y);
            };
            if (P.has_pmap()) {
                ops.pmap = [P](const FpVec& x) { return P.pmap(x); };
            }
            SampleSet<FpVec> samples =
                coordinate_samples(P.modulus(), P.dim());
            report = dispatch_suite(opt.suite, ops, samples, plan);
        } else if (parsed.contains("constants")) {
            SCAlgebra A = SCAlgebra::from_json(text);
            SampleSet<FpVec> samples =
                coordinate_samples(A.modulus(), A.dim());
            if (!opt.operator_path.empty()) {
                LinearOperator beta = LinearOperator::from_json(
                    read_file(opt.operator_path), A.modulus(), A.dim());
                BilinearStructure S = induced_dendriform(A, beta);
                AlgebraOps<FpVec> ops = bilinear_ops(S);
                if (opt.pmap == "frobenius") {
                    ops.pmap = [A](const FpVec& x) { return A.frobenius(x); };
                }
                report = dispatch_suite(opt.suite, ops, samples, plan);
            } else if (opt.suite == "restricted-lie") {
                report = dispatch_suite(opt.suite, associative_lie_ops(A),
                                        samples, plan);
            } else {
                AlgebraOps<FpVec> ops = associative_prelie_ops(A);
                if (opt.pmap == "star-power") {
                    // star of the (·, 0) splitting is the product itself,
                    // so this coincides with frobenius; kept for symmetry
                    ops.pmap = [A](const FpVec& x) { return A.frobenius(x); };
                }
                report = dispatch_suite(opt.suite, ops, samples, plan);
            }
        } else {
            throw std::invalid_argument(
                opt.algebra_path +
                " holds neither an algebra, a bilinear structure nor "
                "pre-Lie data");
        }
    }

    std::string payload = opt.format == "csv" ? law_report_csv(report)
                                              : report.to_json();
    emit(payload, opt.out_path);
    std::cerr << report.summary() << '\n';
    return report.pass() ? kExitPass : kExitLawFailure;
}

struct EnvelopeOptions {
    std::string algebra_path;
    int d = 2;
    bool restricted = false;
    bool stability = false;
    int audit = 0;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
};

int run_envelope(const EnvelopeOptions& opt) {
    PreLieData P = PreLieData::from_json(read_file(opt.algebra_path));
    if (opt.restricted && !P.has_pmap()) {
        throw std::invalid_argument(
            "--restricted needs a p-map table in the pre-Lie data");
    }
    QuotientReport report =
        quotient_dims(P, opt.d, opt.restricted, opt.stability);
    if (report.skipped_generators > 0) {
        std::cerr << "warning: " << report.skipped_generators
                  << " generator(s) exceed truncation " << opt.d
                  << " and were dropped\n";
    }
    bool audit_ok = true;
    if (opt.audit > 0) {
        if (opt.format == "csv") {
            throw std::invalid_argument(
                "--audit output is only available with --format json");
        }
        if (!opt.restricted) {
            throw std::invalid_argument("--audit needs --restricted");
        }
        TruncatedIdeal ideal(P.modulus(), P.dim(), opt.d,
                             relation_generators_Up(P));
        MembershipAudit audit =
            audit_pmap_membership(P, ideal, opt.audit, opt.seed);
        audit_ok = audit.all_members();
        ordered_json combined = ordered_json::parse(report.to_json());
        combined["audit"] = ordered_json::parse(audit.to_json());
        emit(combined.dump(2), opt.out_path);
    } else {
        emit(opt.format == "csv" ? report.to_csv() : report.to_json(),
             opt.out_path);
    }
    return audit_ok ? kExitPass : kExitLawFailure;
}

struct SearchOptions {
    std::string kind;
    std::string algebra_path;
    int cap = 3;
    int random = 0;
    std::uint64_t seed = 0;
    std::string out_path;
};

LinearOperator nth_operator(std::uint32_t p, std::size_t dim,
                            std::uint64_t index) {
    std::vector<std::uint32_t> m(dim * dim);
    for (auto& cell : m) {
        cell = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
    return LinearOperator(p, dim, std::move(m));
}

TensorElement nth_tensor(std::uint32_t p, std::size_t dim,
                         std::uint64_t index) {
    FpVec u(dim, p), v(dim, p);
    for (std::size_t i = 0; i < dim; ++i) {
        u.set_raw(i, static_cast<std::uint32_t>(index % p));
        index /= p;
    }
    for (std::size_t i = 0; i < dim; ++i) {
        v.set_raw(i, static_cast<std::uint32_t>(index % p));
        index /= p;
    }
    return TensorElement(p, dim, {{u, v}});
}

int run_search(const SearchOptions& opt) {
    SCAlgebra A = SCAlgebra::from_json(read_file(opt.algebra_path));
    const std::uint32_t p = A.modulus();
    const std::size_t dim = A.dim();

    if (dim == 0) {
        ordered_json out;
        out["kind"] = opt.kind;
        out["p"] = p;
        out["dim"] = 0;
        out["mode"] = "exhaustive";
        out["seed"] = opt.seed;
        out["candidates_checked"] = 0;
        out["passers"] = ordered_json::array();
        emit(out.dump(2), opt.out_path);
        return kExitPass;
    }

    int cells = opt.kind == "rota-baxter" ? static_cast<int>(dim * dim)
                                          : static_cast<int>(2 * dim);
    bool exhaustive = opt.random == 0;
    if (exhaustive &&
        (static_cast<int>(dim) > opt.cap || p > 3)) {
        throw std::invalid_argument(
            "exhaustive search needs dim <= " + std::to_string(opt.cap) +
            " and p <= 3; pass --random <count> to sample instead");
    }
    std::uint64_t space = 1;
    for (int i = 0; i < cells; ++i) {
        if (space > (1ull << 40) / p) {
            throw std::invalid_argument("search space too large");
        }
        space *= p;
    }

    ordered_json out;
    out["kind"] = opt.kind;
    out["p"] = p;
    out["dim"] = dim;
    out["mode"] = exhaustive ? "exhaustive" : "random";
    out["seed"] = opt.seed;
    SamplingPlan plan = SamplingPlan::basis_exhaustive(1);
    plan.with_random(16, opt.seed);
    SampleSet<FpVec> samples = coordinate_samples(p, dim);
    ordered_json passers = ordered_json::array();
    bool chain_ok = true;

    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, space - 1);
    std::uint64_t total = exhaustive ? space
                                     : static_cast<std::uint64_t>(opt.random);
    std::uint64_t checked = 0;
    for (std::uint64_t step = 0; step < total; ++step) {
        std::uint64_t index = exhaustive ? step : pick(rng);
        ++checked;
        if (opt.kind == "rota-baxter") {
            LinearOperator beta = nth_operator(p, dim, index);
            if (!check_rota_baxter(A, beta).pass()) continue;
            BilinearStructure S = induced_dendriform(A, beta);
            LawReport dend = verify_dendriform(bilinear_ops(S), samples, plan);
            LawReport rpl =
                verify_restricted_prelie(bilinear_ops(S), samples, plan);
            chain_ok = chain_ok && dend.pass() && rpl.pass();
            ordered_json entry;
            entry["index"] = index;
            entry["matrix"] = ordered_json::parse(beta.to_json())["matrix"];
            entry["dendriform"] = ordered_json::parse(dend.to_json());
            entry["restricted_prelie"] = ordered_json::parse(rpl.to_json());
            passers.push_back(std::move(entry));
        } else if (opt.kind == "aybe") {
            TensorElement r = nth_tensor(p, dim, index);
            if (!check_aybe(A, r).pass()) continue;
            ordered_json entry;
            entry["index"] = index;
            entry["summands"] =
                ordered_json::parse(r.to_json())["summands"];
            LinearOperator beta = rb_from_tensor(A, r);  // gated
            entry["beta"] = ordered_json::parse(beta.to_json())["matrix"];
            entry["rota_baxter_gate"] = "pass";
            BilinearStructure S = induced_dendriform(A, beta);
            LawReport dend = verify_dendriform(bilinear_ops(S), samples, plan);
            LawReport rpl =
                verify_restricted_prelie(bilinear_ops(S), samples, plan);
            chain_ok = chain_ok && dend.pass() && rpl.pass();
            entry["dendriform"] = ordered_json::parse(dend.to_json());
            entry["restricted_prelie"] = ordered_json::parse(rpl.to_json());
            passers.push_back(std::move(entry));
        } else {
            throw std::invalid_argument("unknown search kind: " + opt.kind);
        }
    }
    out["candidates_checked"] = checked;
    out["passers"] = std::move(passers);
    emit(out.dump(2), opt.out_path);
    std::cerr << "search: " << out["passers"].size() << " passer(s) among "
              << checked << " candidate(s)\n";
    return chain_ok ? kExitPass : kExitLawFailure;
}

struct DimsOptions {
    int g = 1;
    int d = 6;
    std::string format = "json";
    std::string out_path;
};

int run_dims(const DimsOptions& opt) {
    if (opt.format == "csv") {
        std::ostringstream os;
        os << "n,free_dim,cumulative_free\n";
        std::uint64_t cumulative = 0;
        for (int n = 1; n <= opt.d; ++n) {
            cumulative += tree_count(n, opt.g);
            os << n << ',' << tree_count(n, opt.g) << ',' << cumulative
               << '\n';
        }
        emit(os.str(), opt.out_path);
        return kExitPass;
    }
    ordered_json out;
    out["generators"] = opt.g;
    out["truncation"] = opt.d;
    ordered_json rows = ordered_json::array();
    std::uint64_t cumulative = 0;
    for (int n = 1; n <= opt.d; ++n) {
        std::uint64_t dim = tree_count(n, opt.g);
        cumulative += dim;
        ordered_json row;
        row["n"] = n;
        row["free_dim"] = dim;
        row["cumulative_free"] = cumulative;
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    emit(out.dump(2), opt.out_path);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact-arithmetic engine for dendriform and restricted pre-Lie "
        "algebras over prime fields"};
    app.require_subcommand(1);

    VerifyOptions vo;
    CLI::App* verify = app.add_subcommand(
        "verify", "run an identity suite and write a law report");
    verify->add_option("--suite", vo.suite,
                       "dendriform | prelie | zinbiel | restricted-lie | "
                       "restricted-prelie | functor-squares | dzhumadildaev")
        ->required();
    verify->add_flag("--free", vo.free_algebra,
                     "run on the free dendriform algebra");
    verify->add_option("-p", vo.p, "field characteristic (free algebra)");
    verify->add_option("-g", vo.g, "generator count (free algebra)");
    verify->add_option("-d", vo.d, "basis degree cap");
    verify->add_option("--algebra", vo.algebra_path,
                       "JSON file: algebra, bilinear structure or pre-Lie "
                       "data");
    verify->add_option("--operator", vo.operator_path,
                       "JSON linear operator; induces a dendriform structure "
                       "through the Rota-Baxter gate");
    verify->add_option("--pmap", vo.pmap,
                       "frobenius | table | star-power")
        ->check(CLI::IsMember({"frobenius", "table", "star-power", "default"}));
    verify->add_option("--seed", vo.seed, "seed for the random phase");
    verify->add_option("--samples", vo.samples,
                       "random tuples to draw in addition to the basis "
                       "phase");
    verify->add_option("--format", vo.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("-o,--output", vo.out_path, "report path");

    EnvelopeOptions eo;
    CLI::App* envelope = app.add_subcommand(
        "envelope",
        "filtered quotient dimensions of the enveloping dendriform algebra");
    envelope->add_option("--algebra", eo.algebra_path, "pre-Lie data JSON")
        ->required();
    envelope->add_option("-d", eo.d, "truncation degree")->required();
    envelope->add_flag("--restricted", eo.restricted,
                       "quotient by the p-map relations as well");
    envelope->add_flag("--stability", eo.stability,
                       "rerun at d+1 and mark stabilized degrees");
    envelope->add_option("--audit", eo.audit,
                         "membership-audit trials for random p-map defects");
    envelope->add_option("--seed", eo.seed, "audit seed");
    envelope->add_option("--format", eo.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    envelope->add_option("-o,--output", eo.out_path, "report path");

    SearchOptions so;
    CLI::App* search = app.add_subcommand(
        "search", "enumerate Rota-Baxter operators or AYBE tensors");
    search->add_option("--kind", so.kind, "rota-baxter | aybe")->required();
    search->add_option("--algebra", so.algebra_path, "algebra JSON")
        ->required();
    search->add_option("--cap", so.cap,
                       "max dimension for exhaustive enumeration");
    search->add_option("--random", so.random,
                       "sample this many candidates instead of enumerating");
    search->add_option("--seed", so.seed, "sampling seed");
    search->add_option("-o,--output", so.out_path, "fixture path");

    DimsOptions dm;
    CLI::App* dims = app.add_subcommand(
        "dims", "graded dimensions of the free dendriform algebra");
    dims->add_option("-g", dm.g, "generator count");
    dims->add_option("-d", dm.d, "top degree");
    dims->add_option("--format", dm.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    dims->add_option("-o,--output", dm.out_path, "table path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitInputError;
    }

    try {
        if (*verify) return run_verify(vo);
        if (*envelope) return run_envelope(eo);
        if (*search) return run_search(so);
        if (*dims) return run_dims(dm);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
