#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = "cli_test_output.txt";
    std::string cmd = std::string(VTREES_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    std::remove(out_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("cli: partition verification") {
    RunResult r = run_cli("verify-partition --n 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("38/38 covered, 0 violations") != std::string::npos);

    SECTION("json format") {
        RunResult j = run_cli("verify-partition --n 3 --format json");
        CHECK(j.exit_code == 0);
        CHECK(j.output.find("\"interval_sum\": 4") != std::string::npos);
    }
    SECTION("parallel output is byte-identical") {
        RunResult serial = run_cli("verify-partition --n 5");
        RunResult parallel = run_cli("verify-partition --n 5 --parallel");
        CHECK(serial.exit_code == 0);
        CHECK(parallel.output == serial.output);
    }
}

TEST_CASE("cli: splittable classification") {
    RunResult r = run_cli("count-splittable --n 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("5,1,27") != std::string::npos);
    CHECK(r.output.find(": ok") != std::string::npos);
    SECTION("parallel output is byte-identical") {
        RunResult parallel = run_cli("count-splittable --n 5 --parallel");
        CHECK(parallel.output == r.output);
    }
}

TEST_CASE("cli: identity suite and the negative control") {
    RunResult pass = run_cli("identities --order 8");
    CHECK(pass.exit_code == 0);
    CHECK(pass.output.find("identity suite: all pass") != std::string::npos);

    RunResult fail = run_cli("identities --order 8 --self-test-negative");
    CHECK(fail.exit_code == 1);
    CHECK(fail.output.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: coefficient tables") {
    RunResult r = run_cli("coeffs --model onepoint --nmax 5 --route all");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"routes_agree\": true") != std::string::npos);
    CHECK(r.output.find("\"24\"") != std::string::npos);  // beta_5

    SECTION("csv format carries the verdict as a comment") {
        RunResult c = run_cli("coeffs --model lattice:a=2 --nmax 4 --route all --format csv");
        CHECK(c.exit_code == 0);
        CHECK(c.output.find("# routes agree: yes") != std::string::npos);
    }
    SECTION("single-route table") {
        RunResult b = run_cli("coeffs --model onepoint --nmax 4 --route bell");
        CHECK(b.exit_code == 0);
        CHECK(b.output.find("graph+bell") != std::string::npos);
    }
    SECTION("atomic file output") {
        std::string path = "cli_coeffs_out.json";
        RunResult w = run_cli("coeffs --model onepoint --nmax 3 --route bell --out " + path);
        CHECK(w.exit_code == 0);
        std::ifstream in(path);
        REQUIRE(in.good());
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str().find("graph+bell") != std::string::npos);
        std::remove(path.c_str());
    }
}

TEST_CASE("cli: bounds and curve") {
    RunResult r = run_cli("bounds --u 1 --tol 1e-13");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("u,t,c,alpha,radius_coeff,residual_c,residual_alpha") != std::string::npos);
    CHECK(r.output.find("0.2319609529") != std::string::npos);
    CHECK(r.output.find("0.237961") != std::string::npos);
    CHECK(r.output.find("0.144766998") != std::string::npos);

    SECTION("curve grid with the anchored lp column") {
        RunResult c = run_cli("curve --u-min 0.1 --u-max 10 --steps 5");
        CHECK(c.exit_code == 0);
        CHECK(c.output.find("u,groeneveld_bound,lp_bound") != std::string::npos);
        CHECK(c.output.find("1,") != std::string::npos);          // u = 1 row
        CHECK(c.output.find(",0.144766998") != std::string::npos);  // anchored there
    }
    SECTION("deterministic output") {
        RunResult again = run_cli("bounds --u 1 --tol 1e-13");
        CHECK(again.output == r.output);
    }
}

TEST_CASE("cli: exit code contract") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("bounds --no-such-flag 1").exit_code == 2);
    CHECK(run_cli("verify-partition --n 9").exit_code == 3);
    CHECK(run_cli("count-splittable --n 12").exit_code == 3);
    CHECK(run_cli("coeffs --model onepoint --nmax 9 --route bell").exit_code == 3);
    CHECK(run_cli("coeffs --model nosuch --nmax 3 --route bell").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}
