#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dh/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    json report;
};

fs::path temp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "dh-cli-tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    const fs::path out = temp_dir() / "report.json";
    std::error_code ec;
    fs::remove(out, ec);
    std::string cmd = std::string(DH_BINARY_PATH) + " " + args + " --json " +
                      out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    if (fs::exists(out))
        r.report = json::parse(dh::read_file(out.string()));
    return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const fs::path p = temp_dir() / name;
    dh::write_file(p.string(), text);
    return p.string();
}

const char* pentagon_cox = "coxeter 5\n"
                           "a b c d e\n"
                           "1 2 inf inf 2\n"
                           "2 1 2 inf inf\n"
                           "inf 2 1 2 inf\n"
                           "inf inf 2 1 2\n"
                           "2 inf inf 2 1\n";

const char* cyc5_cplx = "complex 5\n"
                        "v0 v1 v2 v3 v4\n"
                        "v0 v1\nv1 v2\nv2 v3\nv3 v4\nv4 v0\n";

} // namespace

TEST_CASE("euler subcommand emits the exact rational") {
    std::string cox = write_temp("pentagon.cox", pentagon_cox);
    RunResult r = run("euler " + cox);
    CHECK(r.exit_code == 0);
    CHECK(r.report["pass"] == true);
    CHECK(r.report["report"]["chi_orb"]["num"] == -1);
    CHECK(r.report["report"]["chi_orb"]["den"] == 4);
    CHECK(r.report["report"]["kappa"] == r.report["report"]["chi_orb"]);
}

TEST_CASE("group subcommand reports the ball") {
    std::string cox = write_temp("pentagon.cox", pentagon_cox);
    RunResult r = run("group " + cox + " --ball 2");
    CHECK(r.exit_code == 0);
    CHECK(r.report["report"]["count"] == 21);
    CHECK(r.report["report"]["length_histogram"] == json({1, 5, 15}));
}

TEST_CASE("homology and sphere-check subcommands") {
    std::string cplx = write_temp("c5.cplx", cyc5_cplx);
    RunResult r = run("homology " + cplx + " --reduced");
    CHECK(r.exit_code == 0);
    CHECK(r.report["report"]["groups"][1]["rank"] == 1);

    RunResult s = run("sphere-check " + cplx + " --dim 1");
    CHECK(s.exit_code == 0);
    CHECK(s.report["report"]["sphere_check"]["verdict"] == "sphere");
}

TEST_CASE("nerve subcommand writes the complex file") {
    std::string cox = write_temp("pentagon.cox", pentagon_cox);
    const fs::path nerve_out = temp_dir() / "nerve.cplx";
    RunResult r = run("nerve " + cox + " --dim 2 --out-complex " +
                      nerve_out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.report["report"]["flag"] == true);
    CHECK(r.report["report"]["manifold_check"]["sphere_check"]["verdict"] ==
          "sphere");
    dh::SimplicialComplex nerve =
        dh::parse_complex(dh::read_file(nerve_out.string()));
    CHECK(nerve.n_vertices() == 5);
    CHECK(nerve.dimension() == 1);
}

TEST_CASE("davis subcommand with quotient certificates") {
    std::string cox = write_temp("pentagon.cox", pentagon_cox);
    RunResult r = run("davis " + cox + " --radius 2 --quotient mod-3");
    CHECK(r.exit_code == 0);
    CHECK(r.report["report"]["torsion_free"]["pass"] == true);
    CHECK(r.report["report"]["trivial_intersection"]["pass"] == true);
    CHECK(r.report["report"]["link_check"]["pass"] == true);
}

TEST_CASE("hierarchy subcommand end to end") {
    std::string cox = write_temp("pentagon.cox", pentagon_cox);
    RunResult r = run("hierarchy " + cox + " --radius 2 --quotient mod-3");
    CHECK(r.exit_code == 0);
    CHECK(r.report["report"]["trace"]["pass"] == true);
    CHECK(r.report["report"]["trace"]["terminal"]["all_single_chambers"] ==
          true);
}

TEST_CASE("charney-davis subcommand") {
    std::string cplx = write_temp("c5.cplx", cyc5_cplx);
    RunResult r = run("charney-davis " + cplx);
    CHECK(r.exit_code == 0);
    CHECK(r.report["report"]["kappa"]["num"] == -1);
    CHECK(r.report["report"]["kappa"]["den"] == 4);
}

TEST_CASE("trick subcommand") {
    std::string disk = write_temp("wheel.cplx",
                                  "complex 6\n"
                                  "v0 v1 v2 v3 v4 c\n"
                                  "v0 v1 c\nv1 v2 c\nv2 v3 c\nv3 v4 c\nv4 v0 c\n");
    std::string bnd = write_temp("wheelb.cplx", cyc5_cplx);
    RunResult r = run("trick " + disk + " --boundary " + bnd + " --radius 1");
    CHECK(r.exit_code == 0);
    CHECK(r.report["report"]["pass"] == true);
    CHECK(r.report["report"]["hierarchy"]["terminal"]["all_match_end_model"] ==
          true);
}

TEST_CASE("exit codes: failing verdicts give 1, errors give 2") {
    std::string cplx = write_temp("c5.cplx", cyc5_cplx);
    RunResult wrong_dim = run("sphere-check " + cplx + " --dim 2");
    CHECK(wrong_dim.exit_code == 1);

    RunResult missing = run("euler /nonexistent.cox");
    CHECK(missing.exit_code == 2);

    std::string bad = write_temp("bad.cox", "coxeter 2\na b\n1 2\n3 1\n");
    RunResult invalid = run("euler " + bad);
    CHECK(invalid.exit_code == 2);

    RunResult usage = run("not-a-command");
    CHECK(usage.exit_code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
    std::string cox = write_temp("pentagon.cox", pentagon_cox);
    const fs::path a = temp_dir() / "a.json";
    const fs::path b = temp_dir() / "b.json";
    std::string base = std::string(DH_BINARY_PATH) + " davis " + cox +
                       " --radius 2 --quotient mod-3 --json ";
    REQUIRE(std::system((base + a.string() + " 2>/dev/null").c_str()) == 0);
    REQUIRE(std::system((base + b.string() + " 2>/dev/null").c_str()) == 0);
    CHECK(dh::read_file(a.string()) == dh::read_file(b.string()));
}

TEST_CASE("DH_MAX_CELLS caps the computation") {
    std::string cox = write_temp("pentagon.cox", pentagon_cox);
    std::string cmd = std::string("DH_MAX_CELLS=1 ") + DH_BINARY_PATH +
                      " hierarchy " + cox +
                      " --radius 2 --quotient mod-3 --json " +
                      (temp_dir() / "capped.json").string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("corpus runner checks golden fixtures") {
    const fs::path corpus = fs::path(DH_SOURCE_DIR) / "corpus";
    if (!fs::exists(corpus / "manifest.txt"))
        return; // fixtures not generated yet
    RunResult r = run("corpus run --dir " + corpus.string());
    CHECK(r.exit_code == 0);
    CHECK(r.report["pass"] == true);
}
