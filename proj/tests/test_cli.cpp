#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// RAILGAUGE_CLI_PATH and RAILGAUGE_GOLDEN_DIR are injected by the build.

namespace {

using nlohmann::json;

const std::string kScratch = "/tmp/railgauge_cli_test";

std::string path_in_scratch(const std::string& name) { return kScratch + "_" + name; }

int run_cli(const std::string& args, const std::string& out_file = "",
            const std::string& err_file = "") {
    std::string cmd = std::string("\"") + RAILGAUGE_CLI_PATH + "\" " + args;
    if (!out_file.empty()) cmd += " > " + out_file;
    if (!err_file.empty()) cmd += " 2> " + err_file;
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

json load_json(const std::string& path) { return json::parse(read_file(path)); }

} // namespace

TEST_CASE("eight-mode Hadamard report through the CLI") {
    const std::string out = path_in_scratch("gm8.json");
    REQUIRE(run_cli("measure --kind gm --n 8 --out " + out) == 0);
    const json j = load_json(out);
    CHECK(j["n"] == 8);
    CHECK(j["kind"] == "gm");
    CHECK(j["backend"] == "exact");
    CHECK(j["totals"]["s_plus_frac"] == "35/128");
    CHECK(j["totals"]["s_minus_frac"] == "7/8");
    CHECK(j["totals"]["overall_frac"] == "147/256");
    for (const json& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("invalid configurations exit with code 3") {
    CHECK(run_cli("measure --kind gm --n 6", "/dev/null", "/dev/null") == 3);
    CHECK(run_cli("measure --kind qft --n 5 --backend exact", "/dev/null", "/dev/null") == 3);
    CHECK(run_cli("build-unitary --kind qft --n 3 --mesh", "/dev/null", "/dev/null") == 3);
    CHECK(run_cli("sweep --kinds qft --n 8..2", "/dev/null", "/dev/null") == 3);
    CHECK(run_cli("measure --kind hadamard12 --n 8", "/dev/null", "/dev/null") == 3);
}

TEST_CASE("invalid probabilities and failed checks exit with code 2") {
    CHECK(run_cli("measure --kind gm --n 4 --prior-plus 1.5", "/dev/null", "/dev/null") == 2);

    // A huge classification tolerance discards real probability mass; the
    // report is still written but the consistency checks catch it.
    const std::string out = path_in_scratch("gm2_fat_tol.json");
    const std::string err = path_in_scratch("gm2_fat_tol.err");
    CHECK(run_cli("measure --kind gm --n 2 --backend float --tol 0.4 --out " + out, "", err) == 2);
    CHECK(read_file(err).find("consistency check failed") != std::string::npos);
    const json j = load_json(out);
    bool any_failed = false;
    for (const json& c : j["checks"])
        if (c["pass"] == false) any_failed = true;
    CHECK(any_failed);
}

TEST_CASE("the shared phase does not change the reported totals") {
    const std::string a = path_in_scratch("qft4_phi0.json");
    const std::string b = path_in_scratch("qft4_phi1.json");
    REQUIRE(run_cli("measure --kind qft --n 4 --phi 0 --out " + a) == 0);
    REQUIRE(run_cli("measure --kind qft --n 4 --phi 1.234 --out " + b) == 0);
    const json ja = load_json(a);
    const json jb = load_json(b);
    for (const char* key : {"s_plus", "s_minus", "f_plus", "f_minus", "overall"}) {
        const double va = ja["totals"][key].get<double>();
        const double vb = jb["totals"][key].get<double>();
        CHECK(std::abs(va - vb) <= 1e-10);
    }
}

TEST_CASE("Fourier sweep CSV is byte-stable on the closed-form decimals") {
    const std::string expected =
        "kind,n,s_plus,s_minus,overall\n"
        "qft,2,0.5,0.5,0.5\n"
        "qft,3,0,0.666666666666667,0.333333333333333\n"
        "qft,4,0.375,0.75,0.5625\n"
        "qft,5,0,0.8,0.4\n"
        "qft,6,0.3125,0.833333333333333,0.572916666666667\n"
        "qft,7,0,0.857142857142857,0.428571428571429\n"
        "qft,8,0.2734375,0.875,0.57421875\n";
    const std::string a = path_in_scratch("qft_sweep_a.csv");
    const std::string b = path_in_scratch("qft_sweep_b.csv");
    REQUIRE(run_cli("sweep --kinds qft --n 2..8 --csv " + a, "", "/dev/null") == 0);
    REQUIRE(run_cli("sweep --kinds qft --n 2..8 --csv " + b, "", "/dev/null") == 0);
    CHECK(read_file(a) == expected);
    CHECK(read_file(b) == expected);
}

TEST_CASE("Hadamard sweep CSV matches the golden file and warns about skips") {
    const std::string out = path_in_scratch("gm_sweep.csv");
    const std::string err = path_in_scratch("gm_sweep.err");
    REQUIRE(run_cli("sweep --kinds gm --n 2..8 --csv " + out, "", err) == 0);
    CHECK(read_file(out) == read_file(std::string(RAILGAUGE_GOLDEN_DIR) + "/gm_sweep.csv"));
    const std::string warnings = read_file(err);
    CHECK(warnings.find("skipping gm n=3") != std::string::npos);
    CHECK(warnings.find("skipping gm n=7") != std::string::npos);
}

TEST_CASE("two-mode unitary JSON matches the golden file") {
    const std::string out = path_in_scratch("gm2_unitary.json");
    REQUIRE(run_cli("build-unitary --kind gm --n 2 --out " + out) == 0);
    CHECK(read_file(out) == read_file(std::string(RAILGAUGE_GOLDEN_DIR) + "/gm2_unitary.json"));
}

TEST_CASE("mesh JSON lists the splitter layers in order") {
    const std::string out = path_in_scratch("gm4_mesh.json");
    REQUIRE(run_cli("build-unitary --kind gm --n 4 --mesh --out " + out) == 0);
    const json j = load_json(out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 4);
    const int want[4][3] = {{1, 1, 2}, {1, 3, 4}, {2, 1, 3}, {2, 2, 4}};
    for (int i = 0; i < 4; ++i) {
        CHECK(j[i]["layer"] == want[i][0]);
        CHECK(j[i]["port_a"] == want[i][1]);
        CHECK(j[i]["port_b"] == want[i][2]);
    }
}

TEST_CASE("coherent closed form through the CLI") {
    const std::string out = path_in_scratch("coherent.json");
    REQUIRE(run_cli("coherent --n 2 --alpha 1 --out " + out) == 0);
    const json j = load_json(out);
    CHECK(j["n"] == 2);
    CHECK(j["method"] == "closed_form");
    CHECK(std::abs(j["p_plus"].get<double>() - 0.415820830699417) <= 1e-12);
    CHECK(std::abs(j["average"].get<double>() - 0.415820830699417) <= 1e-12);
}

TEST_CASE("built-in verification scope runs clean") {
    const std::string out = path_in_scratch("verify.txt");
    REQUIRE(run_cli("verify --scope analytic", out) == 0);
    const std::string text = read_file(out);
    CHECK(text.find("[PASS]") != std::string::npos);
    CHECK(text.find("[FAIL]") == std::string::npos);
    CHECK(text.find(" 0 failed") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags override") {
    const std::string cfg = path_in_scratch("cfg.ini");
    write_file(cfg, "[measure]\nkind=gm\nn=8\n");

    const std::string a = path_in_scratch("cfg_a.json");
    REQUIRE(run_cli("--config " + cfg + " measure --out " + a) == 0);
    const json ja = load_json(a);
    CHECK(ja["kind"] == "gm");
    CHECK(ja["n"] == 8);

    const std::string b = path_in_scratch("cfg_b.json");
    REQUIRE(run_cli("--config " + cfg + " measure --n 4 --out " + b) == 0);
    const json jb = load_json(b);
    CHECK(jb["kind"] == "gm");
    CHECK(jb["n"] == 4);
}

TEST_CASE("ancilla sign strings round-trip through the report") {
    const std::string out = path_in_scratch("signs.json");
    REQUIRE(run_cli("measure --kind gm --n 4 --signs \"+--\" --out " + out) == 0);
    const json j = load_json(out);
    CHECK(j["signs"] == "+--");
    CHECK(j["backend"] == "exact");
}

TEST_CASE("per-pattern CSV bytes, frozen") {
    const std::string expected =
        "pattern,total_photons,P_plus,P_minus\n"
        "0 0,0,0.25,0.25\n"
        "0 1,1,0,0.5\n"
        "1 0,1,0.5,0\n"
        "0 2,2,0.125,0.125\n"
        "2 0,2,0.125,0.125\n";
    const std::string out = path_in_scratch("gm2_patterns.csv");
    REQUIRE(run_cli("measure --kind gm --n 2 --patterns-csv " + out + " --out /dev/null") == 0);
    CHECK(read_file(out) == expected);
}

TEST_CASE("reports are byte-deterministic") {
    const std::string a = path_in_scratch("det_a.json");
    const std::string b = path_in_scratch("det_b.json");
    REQUIRE(run_cli("measure --kind gm --n 4 --patterns --out " + a) == 0);
    REQUIRE(run_cli("measure --kind gm --n 4 --patterns --out " + b) == 0);
    const std::string bytes = read_file(a);
    CHECK(bytes == read_file(b));
    CHECK(!bytes.empty());
    CHECK(bytes.back() == '\n');
}
