#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

const std::string kBin = DENDCALC_BIN;
const std::string kFixtures = FIXTURES_DIR;

int run(const std::string& args) {
    std::string cmd = kBin + " " + args + " >/dev/null 2>/dev/null";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "dendcalc-test";
    fs::create_directories(dir);
    return dir;
}

std::string fixture(const std::string& name) {
    return kFixtures + "/" + name;
}

}  // namespace

TEST_CASE("verify: free dendriform suite passes") {
    CHECK_EQ(run("verify --suite dendriform --free -p 3 -g 1 -d 5"), 0);
    CHECK_EQ(run("verify --suite prelie --free -p 2 -g 1 -d 4"), 0);
    CHECK_EQ(run("verify --suite restricted-prelie --free -p 2 -g 1 -d 3 "
                 "--samples 10 --seed 4"),
             0);
    // the free algebra is not Zinbiel
    CHECK_EQ(run("verify --suite zinbiel --free -p 2 -g 1 -d 3"), 1);
}

TEST_CASE("verify: structure-constant suites") {
    CHECK_EQ(run("verify --suite restricted-lie --algebra " +
                 fixture("m2f2.json") + " --samples 50 --seed 9"),
             0);
    CHECK_EQ(run("verify --suite restricted-prelie --algebra " +
                 fixture("m2f2.json") + " --pmap frobenius --samples 30"),
             0);
    CHECK_EQ(run("verify --suite dendriform --algebra " +
                 fixture("m2f2.json") + " --operator " +
                 fixture("rb_poly2f2.json")),
             2);  // operator dimension mismatch is an input error
    CHECK_EQ(run("verify --suite dendriform --algebra " +
                 fixture("poly2f2.json") + " --operator " +
                 fixture("rb_poly2f2.json")),
             0);
    CHECK_EQ(run("verify --suite dzhumadildaev --algebra " +
                 fixture("m2f3.json") + " --samples 20"),
             0);
}

TEST_CASE("verify: csv law reports") {
    fs::path out = scratch_dir() / "law.csv";
    CHECK_EQ(run("verify --suite restricted-lie --algebra " +
                 fixture("m2f2.json") + " --format csv -o " + out.string()),
             0);
    std::string text = slurp(out);
    CHECK_EQ(text.substr(0, text.find('\n')),
             "law,relation,checked,failures,verdict");
    CHECK(text.find("restricted-lie") != std::string::npos);
}

TEST_CASE("verify: pre-Lie data files") {
    CHECK_EQ(run("verify --suite prelie --algebra " +
                 fixture("prelie_affine2_f2.json")),
             0);
    CHECK_EQ(run("verify --suite restricted-prelie --algebra " +
                 fixture("prelie_affine2_f2.json") + " --samples 20"),
             0);
    // no p-map table: the restricted suite cannot run
    CHECK_EQ(run("verify --suite restricted-prelie --algebra " +
                 fixture("prelie_abelian1_f2_nopmap.json")),
             2);
}

TEST_CASE("verify: failing suite exits 1 with a counterexample") {
    fs::path out = scratch_dir() / "broken.json";
    CHECK_EQ(run("verify --suite dendriform --algebra " +
                 fixture("broken_dendriform_f2.json") + " -o " +
                 out.string()),
             1);
    auto parsed = nlohmann::json::parse(slurp(out));
    CHECK_EQ(parsed["verdict"], "fail");
    CHECK_FALSE(parsed["counterexamples"].empty());
}

TEST_CASE("verify: input errors exit 2") {
    CHECK_EQ(run("verify --suite dendriform --algebra /nonexistent.json"), 2);
    CHECK_EQ(run("verify --suite nonsense --free -p 2 -g 1"), 2);
    CHECK_EQ(run("verify --suite dendriform"), 2);  // neither --free nor file
    fs::path bad = scratch_dir() / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK_EQ(run("verify --suite dendriform --algebra " + bad.string()), 2);
}

TEST_CASE("envelope: dimension table") {
    fs::path out = scratch_dir() / "env.json";
    CHECK_EQ(run("envelope --algebra " + fixture("prelie_abelian1_f2.json") +
                 " -d 2 -o " + out.string()),
             0);
    auto parsed = nlohmann::json::parse(slurp(out));
    REQUIRE_EQ(parsed["rows"].size(), 2);
    CHECK_EQ(parsed["rows"][0]["quotient_dim"], 1);
    CHECK_EQ(parsed["rows"][1]["quotient_dim"], 2);

    // csv output with the documented header
    fs::path csv = scratch_dir() / "env.csv";
    CHECK_EQ(run("envelope --algebra " + fixture("prelie_abelian1_f2.json") +
                 " -d 4 --format csv -o " + csv.string()),
             0);
    std::string text = slurp(csv);
    CHECK_EQ(text.substr(0, text.find('\n')),
             "n,free_dim,cumulative_free,ideal_rank,quotient_dim,stabilized");
    // free dims 1, 2, 5, 14
    CHECK(text.find("3,5,8,") != std::string::npos);
    CHECK(text.find("4,14,22,") != std::string::npos);

    // restricted run with audit
    fs::path audited = scratch_dir() / "env_audit.json";
    CHECK_EQ(run("envelope --algebra " + fixture("prelie_abelian1_f2.json") +
                 " -d 2 --restricted --audit 50 --seed 11 -o " +
                 audited.string()),
             0);
    auto withaudit = nlohmann::json::parse(slurp(audited));
    CHECK_EQ(withaudit["audit"]["trials"], 50);
    CHECK_EQ(withaudit["audit"]["all_members"], true);
}

TEST_CASE("envelope: input errors exit 2") {
    CHECK_EQ(run("envelope --algebra " +
                 fixture("prelie_abelian1_f2_nopmap.json") +
                 " -d 2 --restricted"),
             2);
    CHECK_EQ(run("envelope --algebra " + fixture("m2f2.json") + " -d 2"), 2);
    CHECK_EQ(run("envelope --algebra /nonexistent.json -d 2"), 2);
}

TEST_CASE("search: rota-baxter operators") {
    fs::path out = scratch_dir() / "rb.json";
    CHECK_EQ(run("search --kind rota-baxter --algebra " +
                 fixture("poly2f2.json") + " -o " + out.string()),
             0);
    auto parsed = nlohmann::json::parse(slurp(out));
    CHECK_EQ(parsed["mode"], "exhaustive");
    CHECK_EQ(parsed["candidates_checked"], 16);
    // exactly the zero map and 1 -> x, x -> 0
    REQUIRE_EQ(parsed["passers"].size(), 2);
    for (const auto& entry : parsed["passers"]) {
        CHECK_EQ(entry["dendriform"]["verdict"], "pass");
        CHECK_EQ(entry["restricted_prelie"]["verdict"], "pass");
    }

    // M_2(F_2) exceeds the default cap without --random
    CHECK_EQ(run("search --kind rota-baxter --algebra " +
                 fixture("m2f2.json")),
             2);
    fs::path rnd = scratch_dir() / "rb_rand.json";
    CHECK_EQ(run("search --kind rota-baxter --algebra " +
                 fixture("m2f2.json") + " --random 200 --seed 5 -o " +
                 rnd.string()),
             0);
    auto sampled = nlohmann::json::parse(slurp(rnd));
    CHECK_EQ(sampled["mode"], "random");
    CHECK_EQ(sampled["candidates_checked"], 200);
}

TEST_CASE("search: aybe tensors") {
    fs::path out = scratch_dir() / "aybe.json";
    CHECK_EQ(run("search --kind aybe --algebra " + fixture("poly2f2.json") +
                 " -o " + out.string()),
             0);
    auto parsed = nlohmann::json::parse(slurp(out));
    CHECK_EQ(parsed["candidates_checked"], 16);
    CHECK_GE(parsed["passers"].size(), 2);
    for (const auto& entry : parsed["passers"]) {
        CHECK_EQ(entry["rota_baxter_gate"], "pass");
        CHECK_EQ(entry["dendriform"]["verdict"], "pass");
    }

    // single-summand sweep on M_2(F_2) needs the cap raised to its dim
    fs::path m2 = scratch_dir() / "aybe_m2.json";
    CHECK_EQ(run("search --kind aybe --algebra " + fixture("m2f2.json") +
                 " --cap 4 -o " + m2.string()),
             0);
    auto swept = nlohmann::json::parse(slurp(m2));
    CHECK_EQ(swept["candidates_checked"], 256);
    CHECK_GE(swept["passers"].size(), 1);
}

TEST_CASE("search: the empty algebra yields an empty fixture") {
    fs::path empty = scratch_dir() / "empty_algebra.json";
    std::ofstream(empty) << "{\"p\": 2, \"dim\": 0, \"constants\": []}";
    fs::path out = scratch_dir() / "empty_search.json";
    CHECK_EQ(run("search --kind rota-baxter --algebra " + empty.string() +
                 " -o " + out.string()),
             0);
    auto parsed = nlohmann::json::parse(slurp(out));
    CHECK_EQ(parsed["candidates_checked"], 0);
    CHECK(parsed["passers"].empty());
}

TEST_CASE("dims: free dimension table") {
    fs::path out = scratch_dir() / "dims.csv";
    CHECK_EQ(run("dims -g 1 -d 6 --format csv -o " + out.string()), 0);
    std::string text = slurp(out);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK_EQ(line, "n,free_dim,cumulative_free");
    std::vector<std::string> expected{"1,1,1",    "2,2,3",    "3,5,8",
                                      "4,14,22",  "5,42,64",  "6,132,196"};
    for (const auto& want : expected) {
        std::getline(lines, line);
        CHECK_EQ(line, want);
    }
}

TEST_CASE("identical configurations give byte-identical reports") {
    fs::path a = scratch_dir() / "rep_a.json";
    fs::path b = scratch_dir() / "rep_b.json";
    std::string cmd = "verify --suite restricted-lie --algebra " +
                      fixture("m2f3.json") + " --samples 40 --seed 123 -o ";
    CHECK_EQ(run(cmd + a.string()), 0);
    CHECK_EQ(run(cmd + b.string()), 0);
    CHECK_EQ(slurp(a), slurp(b));

    fs::path c = scratch_dir() / "env_a.json";
    fs::path d = scratch_dir() / "env_b.json";
    std::string env_cmd = "envelope --algebra " +
                          fixture("prelie_affine2_f2.json") +
                          " -d 3 --restricted --audit 20 --seed 77 -o ";
    CHECK_EQ(run(env_cmd + c.string()), 0);
    CHECK_EQ(run(env_cmd + d.string()), 0);
    CHECK_EQ(slurp(c), slurp(d));
}
