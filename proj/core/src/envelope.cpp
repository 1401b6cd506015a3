#include "dendriform/envelope.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

#include "dendriform/laws.hpp"
#include "dendriform/trees.hpp"
#include "json.hpp"

namespace dendriform {

using nlohmann::ordered_json;

PreLieData::PreLieData(std::uint32_t modulus, int dim,
                       std::vector<std::uint32_t> brackets,
                       std::optional<std::vector<FpVec>> pmap_table,
                       std::vector<std::string> basis_names)
    : p_(modulus), dim_(dim), b_(std::move(brackets)),
      pmap_table_(std::move(pmap_table)), names_(std::move(basis_names)) {
    require_prime_modulus(modulus);
    if (dim_ < 0) throw std::invalid_argument("negative dimension");
    std::size_t expected = static_cast<std::size_t>(dim_) * dim_ * dim_;
    if (b_.size() != expected) {
        throw std::invalid_argument("expected " + std::to_string(expected) +
                                    " bracket constants, got " +
                                    std::to_string(b_.size()));
    }
    for (auto& v : b_) v %= p_;
    if (names_.empty()) {
        for (int i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i));
    }
    if (static_cast<int>(names_.size()) != dim_) {
        throw std::invalid_argument("basis name count does not match dim");
    }
    if (pmap_table_) {
        if (static_cast<int>(pmap_table_->size()) != dim_) {
            throw std::invalid_argument("p-map table needs one row per basis "
                                        "element");
        }
        for (const auto& row : *pmap_table_) {
            if (row.modulus() != p_ || static_cast<int>(row.dim()) != dim_) {
                throw std::invalid_argument("p-map table row has wrong shape");
            }
        }
    }
    if (dim_ == 0) return;

    // Pre-Lie law on all basis triples; trilinearity makes this conclusive.
    AlgebraOps<FpVec> ops;
    ops.modulus = p_;
    ops.brace = [this](const FpVec& x, const FpVec& y) { return brace(x, y); };
    SampleSet<FpVec> samples = coordinate_samples(p_, dim_);
    LawReport prelie =
        verify_prelie(ops, samples, SamplingPlan::basis_exhaustive(1));
    if (!prelie.pass()) {
        const auto& ce = prelie.counterexamples.front();
        throw std::invalid_argument(
            "structure constants violate the pre-Lie law at (" +
            ce.inputs[0] + ", " + ce.inputs[1] + ", " + ce.inputs[2] +
            "), residual " + ce.residual);
    }
    if (pmap_table_) {
        ops.pmap = [this](const FpVec& x) { return pmap(x); };
        SamplingPlan plan = SamplingPlan::basis_exhaustive(1);
        plan.with_random(32, 0x5eedu);
        LawReport restricted = verify_restricted_prelie(ops, samples, plan);
        if (!restricted.pass()) {
            const auto& ce = restricted.counterexamples.front();
            throw std::invalid_argument(
                "p-map table violates restricted relation " + ce.relation +
                " at (" + ce.inputs[0] +
                (ce.inputs.size() > 1 ? ", " + ce.inputs[1] : "") +
                "), residual " + ce.residual);
        }
    }
}

const std::vector<FpVec>& PreLieData::pmap_table() const {
    if (!pmap_table_) throw std::logic_error("no p-map table present");
    return *pmap_table_;
}

FpVec PreLieData::basis_vector(int i) const {
    if (i < 0 || i >= dim_) throw std::out_of_range("basis index");
    FpVec v(dim_, p_);
    v.set_raw(static_cast<std::size_t>(i), 1);
    return v;
}

FpVec PreLieData::brace(const FpVec& x, const FpVec& y) const {
    if (x.modulus() != p_ || y.modulus() != p_) {
        throw ModulusMismatch(p_, x.modulus() != p_ ? x.modulus()
                                                    : y.modulus());
    }
    std::size_t n = static_cast<std::size_t>(dim_);
    if (x.dim() != n || y.dim() != n) {
        throw std::invalid_argument("element dimension mismatch");
    }
    FpVec out(n, p_);
    for (std::size_t i = 0; i < n; ++i) {
        if (x.raw(i) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y.raw(j) == 0) continue;
            std::uint64_t f =
                static_cast<std::uint64_t>(x.raw(i)) * y.raw(j) % p_;
            for (std::size_t k = 0; k < n; ++k) {
                std::uint64_t add = f * b_[(i * n + j) * n + k] % p_;
                out.set_raw(k, static_cast<std::uint32_t>(
                                   (out.raw(k) + add) % p_));
            }
        }
    }
    return out;
}

FpVec PreLieData::lie_bracket(const FpVec& x, const FpVec& y) const {
    return brace(x, y) - brace(y, x);
}

FpVec PreLieData::pmap(const FpVec& x) const {
    if (!pmap_table_) throw std::logic_error("no p-map table present");
    std::size_t n = static_cast<std::size_t>(dim_);
    auto bracket = [this](const FpVec& a, const FpVec& b) {
        return lie_bracket(a, b);
    };
    FpVec running(n, p_);   // partial sum of x's terms
    FpVec value(n, p_);     // p-map of the partial sum
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (x.raw(i) == 0) continue;
        FpScalar alpha(x.raw(i), p_);
        FpVec term = (*pmap_table_)[i] * alpha.pow(p_);
        FpVec term_vec(n, p_);
        term_vec.set_raw(i, x.raw(i));
        if (first) {
            running = term_vec;
            value = term;
            first = false;
            continue;
        }
        FpVec next = value + term;
        for (const auto& s : s_coefficients(running, term_vec, bracket)) {
            next = next + s;
        }
        value = next;
        running = running + term_vec;
    }
    return value;
}

std::string PreLieData::to_json() const {
    ordered_json j;
    j["p"] = p_;
    j["dim"] = dim_;
    j["basis"] = names_;
    ordered_json arr = ordered_json::array();
    std::size_t n = static_cast<std::size_t>(dim_);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t jj = 0; jj < n; ++jj) {
            for (std::size_t k = 0; k < n; ++k) {
                if (b_[(i * n + jj) * n + k] != 0) {
                    arr.push_back({i, jj, k, b_[(i * n + jj) * n + k]});
                }
            }
        }
    }
    j["brackets"] = std::move(arr);
    if (pmap_table_) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : *pmap_table_) rows.push_back(row.coords());
        j["pmap"] = std::move(rows);
    }
    return j.dump(2);
}

PreLieData PreLieData::from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw std::invalid_argument("malformed JSON for pre-Lie data");
    }
    for (const char* key : {"p", "dim", "brackets"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(
                std::string("pre-Lie JSON needs \"") + key + "\"");
        }
    }
    std::uint32_t p = j["p"].get<std::uint32_t>();
    int dim = j["dim"].get<int>();
    require_prime_modulus(p);
    if (dim < 0) throw std::invalid_argument("negative dimension");
    std::size_t n = static_cast<std::size_t>(dim);
    std::vector<std::uint32_t> b(n * n * n, 0);
    for (const auto& entry : j["brackets"]) {
        if (!entry.is_array() || entry.size() != 4) {
            throw std::invalid_argument("bracket entries must be [i,j,k,coeff]");
        }
        std::size_t i = entry[0].get<std::size_t>();
        std::size_t jj = entry[1].get<std::size_t>();
        std::size_t k = entry[2].get<std::size_t>();
        if (i >= n || jj >= n || k >= n) {
            throw std::invalid_argument("bracket index out of range");
        }
        b[(i * n + jj) * n + k] =
            FpScalar::from_signed(entry[3].get<std::int64_t>(), p).value();
    }
    std::optional<std::vector<FpVec>> table;
    if (j.contains("pmap")) {
        std::vector<FpVec> rows;
        for (const auto& row : j["pmap"]) {
            if (!row.is_array() || row.size() != n) {
                throw std::invalid_argument(
                    "p-map rows must hold dim residues");
            }
            FpVec v(n, p);
            for (std::size_t i = 0; i < n; ++i) {
                v.set(i, FpScalar::from_signed(row[i].get<std::int64_t>(), p));
            }
            rows.push_back(std::move(v));
        }
        table = std::move(rows);
    }
    std::vector<std::string> names;
    if (j.contains("basis")) {
        names = j["basis"].get<std::vector<std::string>>();
    }
    return PreLieData(p, dim, std::move(b), std::move(table),
                      std::move(names));
}

DendElem embed_vector(const FpVec& x, int generator_count) {
    DendElem out(x.modulus(), generator_count);
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (x.raw(i) == 0) continue;
        out.add_term(graft(Tree::leaf(), static_cast<int>(i), Tree::leaf(),
                           generator_count),
                     FpScalar(x.raw(i), x.modulus()));
    }
    return out;
}

std::vector<DendElem> relation_generators_U(const PreLieData& P) {
    std::vector<DendElem> gens;
    int g = P.dim();
    for (int i = 0; i < g; ++i) {
        DendElem yi = DendElem::generator(P.modulus(), g, i);
        for (int j = 0; j < g; ++j) {
            DendElem yj = DendElem::generator(P.modulus(), g, j);
            DendElem lhs =
                embed_vector(P.brace(P.basis_vector(i), P.basis_vector(j)), g);
            gens.push_back(lhs - (succ(yi, yj) - prec(yj, yi)));
        }
    }
    return gens;
}

std::vector<DendElem> relation_generators_Up(const PreLieData& P) {
    if (!P.has_pmap()) {
        throw std::invalid_argument(
            "restricted relations need a p-map table");
    }
    std::vector<DendElem> gens = relation_generators_U(P);
    int g = P.dim();
    for (int i = 0; i < g; ++i) {
        DendElem yi = DendElem::generator(P.modulus(), g, i);
        gens.push_back(embed_vector(P.pmap_table()[i], g) -
                       star_power(yi, P.modulus()));
    }
    return gens;
}

TruncatedIdeal::TruncatedIdeal(std::uint32_t modulus, int generator_count,
                               int truncation,
                               const std::vector<DendElem>& generators)
    : p_(modulus), g_(generator_count), d_(truncation) {
    require_prime_modulus(modulus);
    if (truncation < 1) {
        throw std::invalid_argument("truncation must be at least 1");
    }
    std::vector<std::vector<Tree>> by_degree(d_ + 1);
    if (g_ > 0) {
        for (int n = 1; n <= d_; ++n) {
            by_degree[n] = enumerate_trees(n, g_);
            for (const Tree& t : by_degree[n]) {
                col_index_.emplace(t, columns_.size());
                columns_.push_back(t);
            }
        }
    }
    col_to_row_.assign(columns_.size(), -1);

    std::deque<DendElem> work;
    auto try_insert = [&](const DendElem& e) {
        if (e.is_zero()) return;
        DendElem stored(p_, g_);
        if (insert_row(to_row(e), &stored)) work.push_back(stored);
    };
    for (const DendElem& gen : generators) {
        if (gen.is_zero()) continue;
        if (gen.max_degree() > d_) {
            ++skipped_;
            continue;
        }
        try_insert(gen);
    }
    while (!work.empty()) {
        DendElem w = work.front();
        work.pop_front();
        int room = d_ - w.max_degree();
        for (int k = 1; k <= room; ++k) {
            for (const Tree& t : by_degree[k]) {
                DendElem telem = DendElem::single(t, FpScalar(1, p_), g_);
                try_insert(prec(telem, w, d_));
                try_insert(prec(w, telem, d_));
                try_insert(succ(telem, w, d_));
                try_insert(succ(w, telem, d_));
            }
        }
    }
}

std::vector<std::uint32_t> TruncatedIdeal::to_row(const DendElem& e) const {
    if (e.modulus() != p_) throw ModulusMismatch(p_, e.modulus());
    std::vector<std::uint32_t> row(columns_.size(), 0);
    for (const auto& [t, c] : e.terms()) {
        auto it = col_index_.find(t);
        if (it == col_index_.end()) {
            throw std::invalid_argument(
                "element degree exceeds the truncation of the ideal");
        }
        row[it->second] = c.value();
    }
    return row;
}

DendElem TruncatedIdeal::from_row(const std::vector<std::uint32_t>& row) const {
    DendElem out(p_, g_);
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] != 0) out.add_term(columns_[c], FpScalar(row[c], p_));
    }
    return out;
}

void TruncatedIdeal::reduce_row(std::vector<std::uint32_t>& row) const {
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] == 0 || col_to_row_[c] < 0) continue;
        const auto& pivot_row = rows_[static_cast<std::size_t>(col_to_row_[c])];
        std::uint64_t factor = row[c];
        for (std::size_t k = c; k < row.size(); ++k) {
            if (pivot_row[k] == 0) continue;
            std::uint64_t sub = factor * pivot_row[k] % p_;
            row[k] = static_cast<std::uint32_t>((row[k] + p_ - sub) % p_);
        }
    }
}

bool TruncatedIdeal::insert_row(std::vector<std::uint32_t> row,
                                DendElem* stored) {
    reduce_row(row);
    std::size_t pivot = row.size();
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] != 0) {
            pivot = c;
            break;
        }
    }
    if (pivot == row.size()) return false;
    std::uint64_t inv = FpScalar(row[pivot], p_).inverse().value();
    for (std::size_t k = pivot; k < row.size(); ++k) {
        row[k] = static_cast<std::uint32_t>(row[k] * inv % p_);
    }
    // Clear the new pivot column from every existing row.
    for (auto& other : rows_) {
        std::uint64_t factor = other[pivot];
        if (factor == 0) continue;
        for (std::size_t k = pivot; k < row.size(); ++k) {
            if (row[k] == 0) continue;
            std::uint64_t sub = factor * row[k] % p_;
            other[k] = static_cast<std::uint32_t>((other[k] + p_ - sub) % p_);
        }
    }
    col_to_row_[pivot] = static_cast<std::ptrdiff_t>(rows_.size());
    row_pivot_.push_back(pivot);
    if (stored) *stored = from_row(row);
    rows_.push_back(std::move(row));
    return true;
}

std::vector<DendElem> TruncatedIdeal::echelon_basis() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
        return row_pivot_[a] < row_pivot_[b];
    });
    std::vector<DendElem> out;
    out.reserve(rows_.size());
    for (std::size_t i : order) out.push_back(from_row(rows_[i]));
    return out;
}

std::vector<std::string> TruncatedIdeal::pivot_encodings() const {
    std::vector<std::size_t> pivots = row_pivot_;
    std::sort(pivots.begin(), pivots.end());
    std::vector<std::string> out;
    out.reserve(pivots.size());
    for (std::size_t c : pivots) out.push_back(columns_[c].encoding());
    return out;
}

std::size_t TruncatedIdeal::rank_within(int degree) const {
    // dim(S ∩ F_≤n) = rank(S) − rank(projection of S onto degrees > n).
    std::vector<std::size_t> high_cols;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c].degree() > degree) high_cols.push_back(c);
    }
    if (high_cols.empty()) return rows_.size();
    std::vector<std::vector<std::uint32_t>> proj;
    proj.reserve(rows_.size());
    for (const auto& row : rows_) {
        std::vector<std::uint32_t> r(high_cols.size());
        for (std::size_t i = 0; i < high_cols.size(); ++i) {
            r[i] = row[high_cols[i]];
        }
        proj.push_back(std::move(r));
    }
    // Plain elimination on the projected rows.
    std::size_t rank = 0;
    std::size_t cols = high_cols.size();
    for (std::size_t c = 0; c < cols && rank < proj.size(); ++c) {
        std::size_t sel = proj.size();
        for (std::size_t r = rank; r < proj.size(); ++r) {
            if (proj[r][c] != 0) {
                sel = r;
                break;
            }
        }
        if (sel == proj.size()) continue;
        std::swap(proj[rank], proj[sel]);
        std::uint64_t inv = FpScalar(proj[rank][c], p_).inverse().value();
        for (std::size_t k = c; k < cols; ++k) {
            proj[rank][k] =
                static_cast<std::uint32_t>(proj[rank][k] * inv % p_);
        }
        for (std::size_t r = 0; r < proj.size(); ++r) {
            if (r == rank || proj[r][c] == 0) continue;
            std::uint64_t factor = proj[r][c];
            for (std::size_t k = c; k < cols; ++k) {
                std::uint64_t sub = factor * proj[rank][k] % p_;
                proj[r][k] =
                    static_cast<std::uint32_t>((proj[r][k] + p_ - sub) % p_);
            }
        }
        ++rank;
    }
    return rows_.size() - rank;
}

DendElem TruncatedIdeal::reduce(const DendElem& e) const {
    auto row = to_row(e);
    reduce_row(row);
    return from_row(row);
}

int MembershipAudit::members() const noexcept {
    int count = 0;
    for (const auto& entry : entries) count += entry.member ? 1 : 0;
    return count;
}

std::string MembershipAudit::to_json() const {
    ordered_json j;
    j["seed"] = seed;
    j["trials"] = trials;
    j["members"] = members();
    j["all_members"] = all_members();
    ordered_json arr = ordered_json::array();
    for (const auto& entry : entries) {
        ordered_json e;
        e["element"] = entry.element;
        e["member"] = entry.member;
        arr.push_back(std::move(e));
    }
    j["entries"] = std::move(arr);
    return j.dump(2);
}

MembershipAudit audit_pmap_membership(const PreLieData& P,
                                      const TruncatedIdeal& ideal, int trials,
                                      std::uint64_t seed) {
    if (!P.has_pmap()) {
        throw std::invalid_argument("membership audit needs a p-map table");
    }
    if (ideal.truncation() < static_cast<int>(P.modulus())) {
        throw std::invalid_argument(
            "truncation below p cannot see the p-map relations");
    }
    MembershipAudit audit;
    audit.seed = seed;
    audit.trials = trials;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, P.modulus() - 1);
    for (int t = 0; t < trials; ++t) {
        FpVec x(static_cast<std::size_t>(P.dim()), P.modulus());
        do {
            for (std::size_t i = 0; i < x.dim(); ++i) x.set_raw(i, pick(rng));
        } while (x.is_zero());
        DendElem lhs = embed_vector(P.pmap(x), P.dim());
        DendElem rhs = star_power(embed_vector(x, P.dim()), P.modulus());
        audit.entries.push_back(
            {x.str(), ideal.contains(lhs - rhs)});
    }
    return audit;
}

namespace {

std::uint64_t catalan_dim(int n, int g) {
    if (g <= 0) return 0;
    return tree_count(n, g);
}

}  // namespace

QuotientReport quotient_dims(const PreLieData& P, int truncation,
                             bool restricted, bool check_stability) {
    std::vector<DendElem> gens =
        restricted ? relation_generators_Up(P) : relation_generators_U(P);
    TruncatedIdeal ideal(P.modulus(), P.dim(), truncation, gens);
    std::optional<TruncatedIdeal> deeper;
    if (check_stability) {
        deeper.emplace(P.modulus(), P.dim(), truncation + 1, gens);
    }
    QuotientReport report;
    report.p = P.modulus();
    report.generators = P.dim();
    report.truncation = truncation;
    report.restricted = restricted;
    report.skipped_generators = ideal.skipped_generators();
    report.pivots = ideal.pivot_encodings();
    std::uint64_t cumulative = 0;
    for (int n = 1; n <= truncation; ++n) {
        QuotientRow row;
        row.n = n;
        row.free_dim = catalan_dim(n, P.dim());
        cumulative += row.free_dim;
        row.cumulative_free = cumulative;
        row.ideal_rank = P.dim() > 0 ? ideal.rank_within(n) : 0;
        row.quotient_dim = row.cumulative_free - row.ideal_rank;
        if (deeper) {
            row.stabilized =
                deeper->rank_within(n) == row.ideal_rank ? 1 : 0;
        }
        report.rows.push_back(row);
    }
    return report;
}

std::string QuotientReport::to_json() const {
    ordered_json j;
    j["p"] = p;
    j["generators"] = generators;
    j["truncation"] = truncation;
    j["restricted"] = restricted;
    j["skipped_generators"] = skipped_generators;
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["n"] = row.n;
        r["free_dim"] = row.free_dim;
        r["cumulative_free"] = row.cumulative_free;
        r["ideal_rank"] = row.ideal_rank;
        r["quotient_dim"] = row.quotient_dim;
        if (row.stabilized >= 0) {
            r["stabilized"] = row.stabilized == 1;
        } else {
            r["stabilized"] = nullptr;
        }
        arr.push_back(std::move(r));
    }
    j["rows"] = std::move(arr);
    j["pivots"] = pivots;
    return j.dump(2);
}

std::string QuotientReport::to_csv() const {
    std::ostringstream os;
    os << "n,free_dim,cumulative_free,ideal_rank,quotient_dim,stabilized\n";
    for (const auto& row : rows) {
        os << row.n << ',' << row.free_dim << ',' << row.cumulative_free << ','
           << row.ideal_rank << ',' << row.quotient_dim << ',';
        if (row.stabilized >= 0) os << (row.stabilized == 1 ? "true" : "false");
        os << '\n';
    }
    return os.str();
}

}  // namespace dendriform
