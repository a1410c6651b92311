#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(PHILAB_EXE) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

json run_json(const std::string& args) {
    Run r = run("--format json " + args);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("phi") {
    CHECK(run_json("phi --algebra A3CT --module S1")["phi"] == 0);
    CHECK(run_json("phi --algebra A --module \"S3+S4\"")["phi"] == 1);
    CHECK(run_json("phi --algebra A --module P1")["phi"] == 0);
    json j = run_json("phi --algebra A --module \"S3+S4\" --cutoff 20");
    CHECK(j["psi"] == 1);
    CHECK(j["ranks"][0] == 2);
    json f = run_json(std::string("phi --algebra ") + PHILAB_DATA + "/A.quiver --module S2");
    CHECK(f["algebra"] == "A");
}

TEST_CASE("syzygy") {
    json j = run_json("syzygy --algebra A --module S2 --t 1");
    CHECK(j["summand_count"] == 2);
    CHECK(j["dims"] == json::array({0, 0, 1, 1}));
    json p = run_json("syzygy --family X1 --t 3 --periodic");
    CHECK(p["summand_count"] == 2);
    Run t = run("syzygy --algebra A --module S2");
    CHECK(t.code == 0);
    CHECK(t.out.find("S4 + S3") != std::string::npos);
}

TEST_CASE("counterexample") {
    json j = run_json("counterexample --k 1..2");
    REQUIRE(j.size() == 2);
    CHECK(j[0]["passed"] == true);
    CHECK(j[0]["phi_lower_bound"]["bound"] == 3);
    CHECK(j[1]["passed"] == true);
    CHECK(j[1]["phi_lower_bound"]["bound"] == 6);
    json e = run_json("counterexample --k 1 --exact-phi");
    CHECK(e[0]["exact_phi"]["value"] == 4);
}

TEST_CASE("usage errors") {
    CHECK(run("counterexample --k 0").code == 2);
    CHECK(run("phi --algebra A --module S9").code == 2);
    CHECK(run("phi --algebra nowhere.quiver --module S1").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("--prime 10 phi --algebra A --module S1").code == 2);
}

TEST_CASE("output file and determinism") {
    auto dir = std::filesystem::temp_directory_path();
    auto a = dir / "philab_cli_a.json", b = dir / "philab_cli_b.json";
    REQUIRE(run("--format json --out " + a.string() + " counterexample --k 1").code == 0);
    REQUIRE(run("--format json --out " + b.string() + " counterexample --k 1").code == 0);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK(!slurp(a).empty());
    CHECK(slurp(a) == slurp(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("another prime") {
    json j = run_json("--prime 101 phi --algebra A --module \"S3+S4\"");
    CHECK(j["phi"] == 1);
}
