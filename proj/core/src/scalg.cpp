#include "dendriform/scalg.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dendriform {

using nlohmann::ordered_json;

SCAlgebra::SCAlgebra(std::uint32_t modulus, std::size_t dim,
                     std::vector<std::uint32_t> constants,
                     std::vector<std::string> basis_names)
    : p_(modulus), dim_(dim), c_(std::move(constants)),
      names_(std::move(basis_names)) {
    require_prime_modulus(modulus);
    if (c_.size() != dim_ * dim_ * dim_) {
        throw std::invalid_argument("expected " +
                                    std::to_string(dim_ * dim_ * dim_) +
                                    " structure constants, got " +
                                    std::to_string(c_.size()));
    }
    for (auto& v : c_) v %= p_;
    if (names_.empty()) {
        for (std::size_t i = 0; i < dim_; ++i) {
            names_.push_back("e" + std::to_string(i));
        }
    }
    if (names_.size() != dim_) {
        throw std::invalid_argument("basis name count does not match dim");
    }
    // (e_i e_j) e_k = e_i (e_j e_k) componentwise.
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            for (std::size_t k = 0; k < dim_; ++k) {
                for (std::size_t l = 0; l < dim_; ++l) {
                    std::uint64_t lhs = 0, rhs = 0;
                    for (std::size_t m = 0; m < dim_; ++m) {
                        lhs += static_cast<std::uint64_t>(c_[idx(i, j, m)]) *
                               c_[idx(m, k, l)] % p_;
                        rhs += static_cast<std::uint64_t>(c_[idx(j, k, m)]) *
                               c_[idx(i, m, l)] % p_;
                    }
                    if (lhs % p_ != rhs % p_) {
                        throw std::invalid_argument(
                            "structure constants are not associative at "
                            "(i,j,k,l) = (" +
                            std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + "," + std::to_string(l) + ")");
                    }
                }
            }
        }
    }
}

FpScalar SCAlgebra::constant(std::size_t i, std::size_t j,
                             std::size_t k) const {
    if (i >= dim_ || j >= dim_ || k >= dim_) {
        throw std::out_of_range("structure constant index out of range");
    }
    return FpScalar(c_[idx(i, j, k)], p_);
}

FpVec SCAlgebra::basis_vector(std::size_t i) const {
    FpVec v(dim_, p_);
    v.set_raw(i, 1);
    return v;
}

void SCAlgebra::check_element(const FpVec& x) const {
    if (x.modulus() != p_) throw ModulusMismatch(p_, x.modulus());
    if (x.dim() != dim_) {
        throw std::invalid_argument("element dimension " +
                                    std::to_string(x.dim()) +
                                    " does not match algebra dimension " +
                                    std::to_string(dim_));
    }
}

FpVec SCAlgebra::mul(const FpVec& x, const FpVec& y) const {
    check_element(x);
    check_element(y);
    FpVec out(dim_, p_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x.raw(i) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y.raw(j) == 0) continue;
            std::uint64_t f =
                static_cast<std::uint64_t>(x.raw(i)) * y.raw(j) % p_;
            if (f == 0) continue;
            for (std::size_t k = 0; k < dim_; ++k) {
                std::uint64_t add = f * c_[idx(i, j, k)] % p_;
                out.set_raw(k, static_cast<std::uint32_t>(
                                   (out.raw(k) + add) % p_));
            }
        }
    }
    return out;
}

FpVec SCAlgebra::power(const FpVec& x, std::uint64_t n) const {
    check_element(x);
    if (n == 0) {
        throw std::invalid_argument("x^0 is undefined without a unit");
    }
    // Square-and-multiply; valid because associativity was verified.
    FpVec base = x;
    std::optional<FpVec> acc;
    while (n > 0) {
        if (n & 1) acc = acc ? mul(*acc, base) : base;
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return *acc;
}

FpVec SCAlgebra::commutator(const FpVec& x, const FpVec& y) const {
    return mul(x, y) - mul(y, x);
}

std::string SCAlgebra::to_json() const {
    ordered_json j;
    j["p"] = p_;
    j["dim"] = dim_;
    j["basis"] = names_;
    ordered_json consts = ordered_json::array();
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t jj = 0; jj < dim_; ++jj) {
            for (std::size_t k = 0; k < dim_; ++k) {
                if (c_[idx(i, jj, k)] != 0) {
                    consts.push_back({i, jj, k, c_[idx(i, jj, k)]});
                }
            }
        }
    }
    j["constants"] = std::move(consts);
    return j.dump(2);
}

namespace {

ordered_json parse_json(const std::string& text, const char* what) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw std::invalid_argument(std::string("malformed JSON for ") + what);
    }
    return j;
}

std::vector<std::uint32_t> read_sparse_table(const ordered_json& arr,
                                             std::size_t dim,
                                             std::uint32_t p,
                                             const char* what) {
    std::vector<std::uint32_t> table(dim * dim * dim, 0);
    for (const auto& entry : arr) {
        if (!entry.is_array() || entry.size() != 4) {
            throw std::invalid_argument(std::string(what) +
                                        " entries must be [i, j, k, coeff]");
        }
        std::size_t i = entry[0].get<std::size_t>();
        std::size_t j = entry[1].get<std::size_t>();
        std::size_t k = entry[2].get<std::size_t>();
        std::int64_t coeff = entry[3].get<std::int64_t>();
        if (i >= dim || j >= dim || k >= dim) {
            throw std::invalid_argument(std::string(what) +
                                        " index out of range");
        }
        table[(i * dim + j) * dim + k] =
            FpScalar::from_signed(coeff, p).value();
    }
    return table;
}

FpVec read_vector(const ordered_json& arr, std::uint32_t p, std::size_t dim,
                  const char* what) {
    if (!arr.is_array() || arr.size() != dim) {
        throw std::invalid_argument(std::string(what) + " must be an array of " +
                                    std::to_string(dim) + " residues");
    }
    FpVec v(dim, p);
    for (std::size_t i = 0; i < dim; ++i) {
        v.set(i, FpScalar::from_signed(arr[i].get<std::int64_t>(), p));
    }
    return v;
}

}  // namespace

SCAlgebra SCAlgebra::from_json(const std::string& text) {
    ordered_json j = parse_json(text, "algebra");
    if (!j.contains("p") || !j.contains("dim") || !j.contains("constants")) {
        throw std::invalid_argument(
            "algebra JSON needs \"p\", \"dim\" and \"constants\"");
    }
    std::uint32_t p = j["p"].get<std::uint32_t>();
    std::size_t dim = j["dim"].get<std::size_t>();
    require_prime_modulus(p);
    std::vector<std::string> names;
    if (j.contains("basis")) {
        names = j["basis"].get<std::vector<std::string>>();
    }
    auto table = read_sparse_table(j["constants"], dim, p, "constants");
    return SCAlgebra(p, dim, std::move(table), std::move(names));
}

SCAlgebra SCAlgebra::matrix_algebra(int n, std::uint32_t p) {
    if (n < 1) throw std::invalid_argument("matrix size must be positive");
    std::size_t dim = static_cast<std::size_t>(n) * n;
    auto unit = [n](int a, int b) { return static_cast<std::size_t>(a) * n + b; };
    std::vector<std::uint32_t> c(dim * dim * dim, 0);
    std::vector<std::string> names(dim);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            names[unit(a, b)] =
                "e" + std::to_string(a + 1) + std::to_string(b + 1);
            // e_{ab} e_{cd} = δ_{bc} e_{ad}
            for (int d = 0; d < n; ++d) {
                std::size_t i = unit(a, b), j = unit(b, d), k = unit(a, d);
                c[(i * dim + j) * dim + k] = 1;
            }
        }
    }
    return SCAlgebra(p, dim, std::move(c), std::move(names));
}

SCAlgebra SCAlgebra::upper_triangular(int n, std::uint32_t p) {
    if (n < 1) throw std::invalid_argument("matrix size must be positive");
    std::vector<std::pair<int, int>> cells;
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) cells.emplace_back(a, b);
    }
    std::size_t dim = cells.size();
    auto find = [&cells](int a, int b) -> std::size_t {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].first == a && cells[i].second == b) return i;
        }
        throw std::logic_error("cell lookup");
    };
    std::vector<std::uint32_t> c(dim * dim * dim, 0);
    std::vector<std::string> names(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        auto [a, b] = cells[i];
        names[i] = "e" + std::to_string(a + 1) + std::to_string(b + 1);
        for (std::size_t j = 0; j < dim; ++j) {
            auto [bb, d] = cells[j];
            if (bb != b) continue;
            std::size_t k = find(a, d);
            c[(i * dim + j) * dim + k] = 1;
        }
    }
    return SCAlgebra(p, dim, std::move(c), std::move(names));
}

SCAlgebra SCAlgebra::truncated_polynomial(int N, std::uint32_t p) {
    if (N < 1) throw std::invalid_argument("truncation order must be positive");
    std::size_t dim = static_cast<std::size_t>(N);
    std::vector<std::uint32_t> c(dim * dim * dim, 0);
    std::vector<std::string> names(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        names[i] = i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i));
        for (std::size_t j = 0; j < dim; ++j) {
            if (i + j < dim) c[(i * dim + j) * dim + (i + j)] = 1;
        }
    }
    return SCAlgebra(p, dim, std::move(c), std::move(names));
}

LinearOperator::LinearOperator(std::uint32_t modulus, std::size_t dim,
                               std::vector<std::uint32_t> row_major)
    : p_(modulus), dim_(dim), m_(std::move(row_major)) {
    require_prime_modulus(modulus);
    if (m_.size() != dim_ * dim_) {
        throw std::invalid_argument("expected " + std::to_string(dim_ * dim_) +
                                    " matrix entries, got " +
                                    std::to_string(m_.size()));
    }
    for (auto& v : m_) v %= p_;
}

LinearOperator LinearOperator::zero(std::uint32_t modulus, std::size_t dim) {
    return LinearOperator(modulus, dim,
                          std::vector<std::uint32_t>(dim * dim, 0));
}

LinearOperator LinearOperator::identity(std::uint32_t modulus,
                                        std::size_t dim) {
    std::vector<std::uint32_t> m(dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = 1;
    return LinearOperator(modulus, dim, std::move(m));
}

FpVec LinearOperator::apply(const FpVec& x) const {
    if (x.modulus() != p_) throw ModulusMismatch(p_, x.modulus());
    if (x.dim() != dim_) {
        throw std::invalid_argument("operator/element dimension mismatch");
    }
    FpVec out(dim_, p_);
    for (std::size_t i = 0; i < dim_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < dim_; ++j) {
            acc += static_cast<std::uint64_t>(m_[i * dim_ + j]) * x.raw(j) % p_;
        }
        out.set_raw(i, static_cast<std::uint32_t>(acc % p_));
    }
    return out;
}

std::string LinearOperator::to_json() const {
    ordered_json j;
    j["matrix"] = m_;
    return j.dump();
}

LinearOperator LinearOperator::from_json(const std::string& text,
                                         std::uint32_t modulus,
                                         std::size_t dim) {
    ordered_json j = parse_json(text, "operator");
    if (!j.contains("matrix")) {
        throw std::invalid_argument("operator JSON needs \"matrix\"");
    }
    std::vector<std::uint32_t> m;
    for (const auto& entry : j["matrix"]) {
        m.push_back(FpScalar::from_signed(entry.get<std::int64_t>(), modulus)
                        .value());
    }
    return LinearOperator(modulus, dim, std::move(m));
}

std::string LinearOperator::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < dim_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < dim_; ++j) {
            if (j) os << ' ';
            os << m_[i * dim_ + j];
        }
    }
    os << ']';
    return os.str();
}

TensorElement::TensorElement(std::uint32_t modulus, std::size_t dim,
                             std::vector<std::pair<FpVec, FpVec>> summands)
    : p_(modulus), dim_(dim) {
    require_prime_modulus(modulus);
    for (auto& [u, v] : summands) {
        if (u.modulus() != p_ || v.modulus() != p_) {
            throw ModulusMismatch(p_, u.modulus() != p_ ? u.modulus()
                                                        : v.modulus());
        }
        if (u.dim() != dim_ || v.dim() != dim_) {
            throw std::invalid_argument("tensor summand dimension mismatch");
        }
        if (!u.is_zero() && !v.is_zero()) {
            summands_.emplace_back(std::move(u), std::move(v));
        }
    }
}

std::string TensorElement::to_json() const {
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const auto& [u, v] : summands_) {
        arr.push_back({u.coords(), v.coords()});
    }
    j["summands"] = std::move(arr);
    return j.dump();
}

TensorElement TensorElement::from_json(const std::string& text,
                                       std::uint32_t modulus,
                                       std::size_t dim) {
    ordered_json j = parse_json(text, "tensor");
    if (!j.contains("summands")) {
        throw std::invalid_argument("tensor JSON needs \"summands\"");
    }
    std::vector<std::pair<FpVec, FpVec>> summands;
    for (const auto& pair : j["summands"]) {
        if (!pair.is_array() || pair.size() != 2) {
            throw std::invalid_argument("tensor summand must be [u, v]");
        }
        summands.emplace_back(read_vector(pair[0], modulus, dim, "summand u"),
                              read_vector(pair[1], modulus, dim, "summand v"));
    }
    return TensorElement(modulus, dim, std::move(summands));
}

BilinearStructure::BilinearStructure(std::uint32_t modulus, std::size_t dim,
                                     std::vector<std::uint32_t> prec_constants,
                                     std::vector<std::uint32_t> succ_constants,
                                     std::string tag,
                                     std::vector<std::string> basis_names)
    : p_(modulus), dim_(dim), prec_c_(std::move(prec_constants)),
      succ_c_(std::move(succ_constants)), tag_(std::move(tag)),
      names_(std::move(basis_names)) {
    require_prime_modulus(modulus);
    if (prec_c_.size() != dim_ * dim_ * dim_ ||
        succ_c_.size() != dim_ * dim_ * dim_) {
        throw std::invalid_argument(
            "bilinear structure tables must each hold dim^3 entries");
    }
    for (auto& v : prec_c_) v %= p_;
    for (auto& v : succ_c_) v %= p_;
    if (names_.empty()) {
        for (std::size_t i = 0; i < dim_; ++i) {
            names_.push_back("e" + std::to_string(i));
        }
    }
    if (names_.size() != dim_) {
        throw std::invalid_argument("basis name count does not match dim");
    }
}

FpVec BilinearStructure::apply(const std::vector<std::uint32_t>& table,
                               const FpVec& x, const FpVec& y) const {
    if (x.modulus() != p_ || y.modulus() != p_) {
        throw ModulusMismatch(p_, x.modulus() != p_ ? x.modulus()
                                                    : y.modulus());
    }
    if (x.dim() != dim_ || y.dim() != dim_) {
        throw std::invalid_argument("element dimension mismatch");
    }
    FpVec out(dim_, p_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x.raw(i) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y.raw(j) == 0) continue;
            std::uint64_t f =
                static_cast<std::uint64_t>(x.raw(i)) * y.raw(j) % p_;
            for (std::size_t k = 0; k < dim_; ++k) {
                std::uint64_t add = f * table[(i * dim_ + j) * dim_ + k] % p_;
                out.set_raw(k, static_cast<std::uint32_t>(
                                   (out.raw(k) + add) % p_));
            }
        }
    }
    return out;
}

FpVec BilinearStructure::prec(const FpVec& x, const FpVec& y) const {
    return apply(prec_c_, x, y);
}

FpVec BilinearStructure::succ(const FpVec& x, const FpVec& y) const {
    return apply(succ_c_, x, y);
}

FpVec BilinearStructure::star_power(const FpVec& x) const {
    FpVec acc = x;
    for (std::uint32_t i = 1; i < p_; ++i) acc = star(acc, x);
    return acc;
}

BilinearStructure BilinearStructure::perturbed(std::size_t i, std::size_t j,
                                               std::size_t k,
                                               bool in_prec) const {
    auto prec_c = prec_c_;
    auto succ_c = succ_c_;
    auto& table = in_prec ? prec_c : succ_c;
    auto& cell = table[(i * dim_ + j) * dim_ + k];
    cell = (cell + 1) % p_;
    return BilinearStructure(p_, dim_, std::move(prec_c), std::move(succ_c),
                             tag_ + "-perturbed", names_);
}

std::string BilinearStructure::to_json() const {
    ordered_json j;
    j["p"] = p_;
    j["dim"] = dim_;
    j["tag"] = tag_;
    j["basis"] = names_;
    auto dump_table = [this](const std::vector<std::uint32_t>& table) {
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t jj = 0; jj < dim_; ++jj) {
                for (std::size_t k = 0; k < dim_; ++k) {
                    std::uint32_t c = table[(i * dim_ + jj) * dim_ + k];
                    if (c != 0) arr.push_back({i, jj, k, c});
                }
            }
        }
        return arr;
    };
    j["prec"] = dump_table(prec_c_);
    j["succ"] = dump_table(succ_c_);
    return j.dump(2);
}

BilinearStructure BilinearStructure::from_json(const std::string& text) {
    ordered_json j = parse_json(text, "bilinear structure");
    for (const char* key : {"p", "dim", "prec", "succ"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(
                std::string("bilinear structure JSON needs \"") + key + "\"");
        }
    }
    std::uint32_t p = j["p"].get<std::uint32_t>();
    std::size_t dim = j["dim"].get<std::size_t>();
    require_prime_modulus(p);
    std::vector<std::string> names;
    if (j.contains("basis")) {
        names = j["basis"].get<std::vector<std::string>>();
    }
    std::string tag = j.value("tag", std::string("dendriform"));
    return BilinearStructure(p, dim,
                             read_sparse_table(j["prec"], dim, p, "prec"),
                             read_sparse_table(j["succ"], dim, p, "succ"),
                             std::move(tag), std::move(names));
}

RotaBaxterReport check_rota_baxter(const SCAlgebra& A,
                                   const LinearOperator& beta) {
    if (beta.modulus() != A.modulus()) {
        throw ModulusMismatch(A.modulus(), beta.modulus());
    }
    if (beta.dim() != A.dim()) {
        throw std::invalid_argument("operator dimension does not match algebra");
    }
    RotaBaxterReport report;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        FpVec ei = A.basis_vector(i);
        FpVec bi = beta.apply(ei);
        for (std::size_t j = 0; j < A.dim(); ++j) {
            FpVec ej = A.basis_vector(j);
            FpVec bj = beta.apply(ej);
            FpVec lhs = A.mul(bi, bj);
            FpVec rhs = beta.apply(A.mul(bi, ej) + A.mul(ei, bj));
            if (lhs != rhs) {
                report.violations.push_back({i, j, lhs, rhs});
            }
        }
    }
    return report;
}

std::string RotaBaxterReport::str() const {
    if (pass()) return "rota-baxter: pass";
    std::ostringstream os;
    os << "rota-baxter: " << violations.size() << " violating basis pair(s):";
    for (const auto& v : violations) {
        os << " (e" << v.i << ",e" << v.j << ") lhs=" << v.lhs.str()
           << " rhs=" << v.rhs.str() << ";";
    }
    return os.str();
}

BilinearStructure induced_dendriform(const SCAlgebra& A,
                                     const LinearOperator& beta) {
    RotaBaxterReport gate = check_rota_baxter(A, beta);
    if (!gate.pass()) {
        throw std::invalid_argument(
            "operator fails the Rota-Baxter gate; refusing to induce a "
            "dendriform structure. " +
            gate.str());
    }
    std::size_t dim = A.dim();
    std::vector<std::uint32_t> prec_c(dim * dim * dim, 0);
    std::vector<std::uint32_t> succ_c(dim * dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        FpVec ei = A.basis_vector(i);
        FpVec bi = beta.apply(ei);
        for (std::size_t j = 0; j < dim; ++j) {
            FpVec ej = A.basis_vector(j);
            FpVec bj = beta.apply(ej);
            FpVec pr = A.mul(ei, bj);  // e_i ≺ e_j = e_i · β(e_j)
            FpVec su = A.mul(bi, ej);  // e_i ≻ e_j = β(e_i) · e_j
            for (std::size_t k = 0; k < dim; ++k) {
                prec_c[(i * dim + j) * dim + k] = pr.raw(k);
                succ_c[(i * dim + j) * dim + k] = su.raw(k);
            }
        }
    }
    return BilinearStructure(A.modulus(), dim, std::move(prec_c),
                             std::move(succ_c), "dendriform",
                             A.basis_names());
}

AybeReport check_aybe(const SCAlgebra& A, const TensorElement& r) {
    if (r.modulus() != A.modulus()) {
        throw ModulusMismatch(A.modulus(), r.modulus());
    }
    if (r.dim() != A.dim()) {
        throw std::invalid_argument("tensor dimension does not match algebra");
    }
    std::size_t dim = A.dim();
    std::uint32_t p = A.modulus();
    std::vector<std::uint32_t> residual(dim * dim * dim, 0);
    auto bump = [&](std::size_t a, std::size_t b, std::size_t c,
                    std::uint64_t coeff, bool negative) {
        std::uint64_t cur = residual[(a * dim + b) * dim + c];
        std::uint64_t val = coeff % p;
        if (negative) val = (p - val) % p;
        residual[(a * dim + b) * dim + c] =
            static_cast<std::uint32_t>((cur + val) % p);
    };
    for (const auto& [ui, vi] : r.summands()) {
        for (const auto& [uj, vj] : r.summands()) {
            FpVec uiuj = A.mul(ui, uj);
            FpVec viuj = A.mul(vi, uj);
            FpVec vivj = A.mul(vi, vj);
            for (std::size_t a = 0; a < dim; ++a) {
                for (std::size_t b = 0; b < dim; ++b) {
                    for (std::size_t c = 0; c < dim; ++c) {
                        // r13 r12 = Σ u_i u_j ⊗ v_j ⊗ v_i
                        bump(a, b, c,
                             static_cast<std::uint64_t>(uiuj.raw(a)) *
                                 vj.raw(b) % p * vi.raw(c),
                             false);
                        // r12 r23 = Σ u_i ⊗ v_i u_j ⊗ v_j
                        bump(a, b, c,
                             static_cast<std::uint64_t>(ui.raw(a)) *
                                 viuj.raw(b) % p * vj.raw(c),
                             true);
                        // r23 r13 = Σ u_j ⊗ u_i ⊗ v_i v_j
                        bump(a, b, c,
                             static_cast<std::uint64_t>(uj.raw(a)) *
                                 ui.raw(b) % p * vivj.raw(c),
                             false);
                    }
                }
            }
        }
    }
    AybeReport report;
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            for (std::size_t c = 0; c < dim; ++c) {
                std::uint32_t coeff = residual[(a * dim + b) * dim + c];
                if (coeff != 0) report.residual.push_back({a, b, c, coeff});
            }
        }
    }
    return report;
}

std::string AybeReport::str() const {
    if (pass()) return "aybe: pass";
    std::ostringstream os;
    os << "aybe: residual has " << residual.size() << " nonzero entries:";
    for (const auto& e : residual) {
        os << " [" << e.a << "," << e.b << "," << e.c << "]=" << e.coeff << ";";
    }
    return os.str();
}

LinearOperator rb_from_tensor(const SCAlgebra& A, const TensorElement& r) {
    AybeReport aybe = check_aybe(A, r);
    if (!aybe.pass()) {
        throw std::invalid_argument(
            "tensor fails the associative Yang-Baxter equation; " +
            aybe.str());
    }
    std::size_t dim = A.dim();
    std::vector<std::uint32_t> m(dim * dim, 0);
    for (std::size_t j = 0; j < dim; ++j) {
        FpVec ej = A.basis_vector(j);
        FpVec col(dim, A.modulus());
        for (const auto& [u, v] : r.summands()) {
            col = col + A.mul(A.mul(u, ej), v);
        }
        for (std::size_t i = 0; i < dim; ++i) m[i * dim + j] = col.raw(i);
    }
    LinearOperator beta(A.modulus(), dim, std::move(m));
    RotaBaxterReport gate = check_rota_baxter(A, beta);
    if (!gate.pass()) {
        throw std::runtime_error(
            "operator derived from the r-matrix fails the Rota-Baxter gate; "
            "refusing to proceed. " +
            gate.str());
    }
    return beta;
}

}  // namespace dendriform
