#include "doctest.h"

#include "trielliptic/reports.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace tri;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string cli() {
    const char* p = std::getenv("TRIELLIPTIC_CLI");
    REQUIRE_MESSAGE(p, "TRIELLIPTIC_CLI is not set");
    return p;
}

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "'" + cli() + "' " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch_dir() { return fs::temp_directory_path() / ("trielliptic-cli-" + std::to_string(getpid())); }

struct RemoveScratch {
    ~RemoveScratch() {
        std::error_code ec;
        fs::remove_all(scratch_dir(), ec);
    }
} remove_scratch;

fs::path scratch(const std::string& name) {
    fs::create_directories(scratch_dir());
    return scratch_dir() / name;
}

void write(const fs::path& p, const std::string& s) {
    std::ofstream f(p);
    f << s;
}

std::string read(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("unknown or malformed commands exit 2") {
    CHECK(run("bogus").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("git families --sign sideways").code == 2);
    CHECK(run("lat eichler --n 2").code == 2);
    CHECK(run("lat roots --name Q9").code == 2);
    auto bad = scratch("bad.poly");
    write(bad, "1 3 0 0\n");
    CHECK(run("git classify --poly '" + bad.string() + "'").code == 2);
    CHECK(run("git classify --poly /nonexistent/file").code == 2);
}

TEST_CASE("git families table has seven rows") {
    auto r = run("git families --sign negative --format table");
    CHECK(r.code == 0);
    std::stringstream ss(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] == 'U') ++rows;
    CHECK(rows == 7);
    auto j = Json::parse(run("git families --sign nonpositive").out);
    CHECK(j["schemaVersion"] == kSchemaVersion);
    CHECK(j["families"].size() == 7);
}

TEST_CASE("qf and lat subcommands report the computed values") {
    auto p = Json::parse(run("qf picard --lattice Sigma2").out);
    CHECK(p["picard"]["rho"] == "4");
    auto c = Json::parse(run("qf census --lattice Sigma3").out);
    CHECK(c["isotropicUpToSign"] == 3);
    CHECK(c["isotropicUpToIsometry"] == 2);
    auto g = Json::parse(run("qf gauss --m 1 --lattice Sigma1").out);
    CHECK(g["value"] == "3");
    auto roots = Json::parse(run("lat roots --name 'M(D16E8)'").out);
    CHECK(roots["roots"] == 720);
    CHECK(roots["rootSystem"] == "E8+D16");
    auto e = run("lat eichler --n 6");
    CHECK(e.code == 0);
    CHECK(Json::parse(e.out)["check"]["equal"] == true);
    auto s = Json::parse(run("lat complement --source L8 --target 'M(E8^3)'").out);
    CHECK(s["search"]["classes"].size() == 1);
    CHECK(run("git strata-dims").code == 0);
}

TEST_CASE("normal form from a vector file") {
    auto sigma = build_sigma(1);
    auto planes = sample_isotropic_planes(sigma, 2);
    REQUIRE(!planes.empty());
    std::ostringstream o;
    for (const auto& v : planes[0]) {
        for (const auto& x : v) o << x.get_str() << " ";
        o << "\n";
    }
    auto f = scratch("j.txt");
    write(f, o.str());
    auto r = run("lat normal-form --lattice Sigma1 --j '" + f.string() + "'");
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    long e = j["normalForm"]["e"];
    CHECK((e == 1 || e == 3));
    CHECK(j["normalForm"]["B"].size() == 16);
    write(f, "1 0 0\n");
    CHECK(run("lat normal-form --lattice Sigma1 --j '" + f.string() + "'").code == 2);
}

TEST_CASE("geometry subcommands") {
    auto v = run("geom verify-family --label N2 --samples 5 --seed 7");
    CHECK(v.code == 0);
    auto j = Json::parse(v.out);
    CHECK(j["result"]["passed"] == 5);
    CHECK(j["manifest"]["seed"] == 7);
    auto p = scratch("f.poly");
    write(p, "1 2 1 0\n1 0 0 3\n");
    auto a = run("geom analyze --poly '" + p.string() + "' --point 1,0,0,0,1");
    CHECK(a.code == 0);
    CHECK(Json::parse(a.out)["point"]["singular"] == false);
    CHECK(run("geom verify-family --label nope").code == 2);
}

TEST_CASE("reports are byte-identical without timing") {
    auto a = run("--no-timing lat complement --source L8 --target 'M(D8^3)'");
    auto b = run("--no-timing lat complement --source L8 --target 'M(D8^3)'");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("startedAt") == std::string::npos);
    auto c = run("--no-timing verify all --only 2,3");
    auto d = run("--no-timing verify all --only 2,3");
    CHECK(c.code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("a budget too small gives an inconclusive census") {
    auto out = scratch("census.json");
    auto r = run("census --n 1 --budget-seconds 0.001 --out '" + out.string() + "'");
    CHECK(r.code == 1);
    auto j = Json::parse(read(out));
    CHECK(j["inconclusive"] == true);
    CHECK(j["reason"] == "budget");
    CHECK(j.contains("runtimeSec"));
    CHECK(j.contains("searchBounds"));
}

TEST_CASE("config file values apply and flags win") {
    auto cfg = scratch("run.ini");
    write(cfg, "seed = 11\n");
    auto a = Json::parse(run("--config '" + cfg.string() + "' git strata-dims").out);
    CHECK(a["manifest"]["seed"] == 11);
    auto b = Json::parse(run("--config '" + cfg.string() + "' --seed 13 git strata-dims").out);
    CHECK(b["manifest"]["seed"] == 13);
}

TEST_CASE("catalog directory override") {
    auto dir = scratch("catalog");
    fs::create_directories(dir);
    write(dir / "niemeier.json", R"([{"name": "Mine", "gram": [[-2, 1], [1, -2]], "glue": []}])");
    write(dir / "forms.json", R"([{"name": "Z3", "generators": {"orders": [3], "q": ["2/3"]}}])");
    std::string env = "TRIELLIPTIC_CATALOG='" + dir.string() + "'";
    auto r = Json::parse(run("lat roots --name Mine", env).out);
    CHECK(r["rootSystem"] == "A2");
    CHECK(r["manifest"]["catalogChecksums"]["niemeier.json"] == file_checksum((dir / "niemeier.json").string()));
    auto q = Json::parse(run("qf census --lattice Z3", env).out);
    CHECK(q["form"]["size"] == 3);
}

TEST_CASE("shipped catalog files match the built-in data") {
    std::string dir = TRIELLIPTIC_DATA_DIR;
    auto lat = load_lattice_catalog(dir + "/niemeier.json");
    auto want = builtin_lattice_catalog();
    REQUIRE(lat.size() == want.size());
    for (std::size_t i = 0; i < lat.size(); ++i) {
        CAPTURE(lat[i].name);
        CHECK(lat[i].name == want[i].name);
        CHECK(lat[i].gram == want[i].gram);
        CHECK(lat[i].glue == want[i].glue);
    }
    for (const auto& e : lat) {
        if (e.name.rfind("M(", 0) != 0) continue;
        CAPTURE(e.name);
        auto l = e.lattice();
        CHECK(abs(l.det()) == 1);
        CHECK(l.is_even());
        CHECK(root_system(l) == root_system(catalog(e.name)));
    }
    auto forms = load_form_catalog(dir + "/forms.json");
    for (const auto& f : forms) {
        CAPTURE(f.name);
        if (f.name.rfind("Sigma", 0) == 0) CHECK(isomorphic(f.form(), sigma_form(f.name.back() - '0')));
        else CHECK(isomorphic(f.form(), discriminant_form(t_gram(f.name.back() - '0'))));
    }
}

TEST_CASE("catalog parsing rejects malformed entries") {
    CHECK_THROWS(parse_lattice_catalog(Json::parse(R"({"name": "x"})")));
    CHECK_THROWS(parse_lattice_catalog(Json::parse(R"([{"name": "x", "gram": [[1, 2]]}])")));
    CHECK_THROWS(parse_lattice_catalog(Json::parse(R"([{"name": "x", "gram": [[-2]], "glue": [["1/2", "0"]]}])")));
    CHECK_THROWS(parse_form_catalog(Json::parse(R"([{"name": "x"}])")));
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat("abc"));
    CHECK(parse_rat("6/4") == Rat(3, 2));
    // glue that is not integral over the lattice
    auto bad = parse_lattice_catalog(Json::parse(R"([{"name": "x", "gram": [[-2]], "glue": [["1/3"]]}])"));
    CHECK_THROWS(bad[0].lattice());
}
