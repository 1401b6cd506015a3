// Regenerates the JSON fixtures shipped under fixtures/.  Usage:
//   gen_fixtures <output-dir>

#include <fstream>
#include <iostream>

#include "dendriform/envelope.hpp"
#include "dendriform/scalg.hpp"

using namespace dendriform;

namespace {

void write(const std::string& dir, const std::string& name,
           const std::string& text) {
    std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << '\n';
        std::exit(1);
    }
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    std::cout << "wrote " << path << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_fixtures <output-dir>\n";
        return 1;
    }
    std::string dir = argv[1];

    write(dir, "m2f2.json", SCAlgebra::matrix_algebra(2, 2).to_json());
    write(dir, "m2f3.json", SCAlgebra::matrix_algebra(2, 3).to_json());
    write(dir, "m3f2.json", SCAlgebra::matrix_algebra(3, 2).to_json());
    write(dir, "m3f3.json", SCAlgebra::matrix_algebra(3, 3).to_json());
    write(dir, "ut2f2.json", SCAlgebra::upper_triangular(2, 2).to_json());
    write(dir, "poly2f2.json",
          SCAlgebra::truncated_polynomial(2, 2).to_json());
    write(dir, "poly3f3.json",
          SCAlgebra::truncated_polynomial(3, 3).to_json());

    // the nonzero Rota-Baxter operator on F_2[x]/(x^2): 1 -> x, x -> 0
    LinearOperator beta(2, 2, {0, 0, 1, 0});
    write(dir, "rb_poly2f2.json", beta.to_json());

    // r = x (x) x solves the associative Yang-Baxter equation there
    SCAlgebra nil = SCAlgebra::truncated_polynomial(2, 2);
    TensorElement r(2, 2, {{nil.basis_vector(1), nil.basis_vector(1)}});
    write(dir, "aybe_poly2f2.json", r.to_json());

    // a dendriform structure with one perturbed structure constant; the
    // dendriform suite must fail on it with a named triple
    BilinearStructure good = induced_dendriform(nil, beta);
    write(dir, "broken_dendriform_f2.json",
          good.perturbed(0, 0, 0, true).to_json());

    // pre-Lie fixtures
    write(dir, "prelie_abelian1_f2.json",
          PreLieData(2, 1, {0},
                     std::vector<FpVec>{FpVec(std::vector<std::uint32_t>{0},
                                              2)})
              .to_json());
    write(dir, "prelie_abelian1_f2_nopmap.json",
          PreLieData(2, 1, {0}).to_json());
    {
        std::vector<std::uint32_t> b(8, 0);
        b[(1 * 2 + 0) * 2 + 0] = 1;  // {e1, e0} = e0
        PreLieData affine(2, 2, std::move(b),
                          std::vector<FpVec>{
                              FpVec(std::vector<std::uint32_t>{0, 0}, 2),
                              FpVec(std::vector<std::uint32_t>{0, 1}, 2)});
        write(dir, "prelie_affine2_f2.json", affine.to_json());
    }
    return 0;
}
