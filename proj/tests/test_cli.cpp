// CLI contract: exit codes, JSON shape, config/flag precedence, and
// bit-identical agreement between the adapters and direct library calls.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "gpsq/cli.hpp"
#include "gpsq/rh_solver.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int rc;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "gpsq");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = gpsq::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

const std::vector<std::string> canonical_flags = {
    "--lambda1", "0.3", "--lambda2", "0.4", "--nu1", "1", "--nu2", "1",
    "--r", "1", "--phi1", "0.7", "--phi2", "0.6"};

std::vector<std::string> with_canonical(std::vector<std::string> head,
                                        std::vector<std::string> tail = {}) {
    head.insert(head.end(), canonical_flags.begin(), canonical_flags.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("stability: exit code tracks the verdict") {
    const RunResult ok = run(with_canonical({"stability", "--format", "json"}));
    CHECK(ok.rc == 0);
    const json j = json::parse(ok.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "stability");
    CHECK(j["input"]["lambda1"].get<double>() == 0.3);
    CHECK(j["derived"]["rho1"].get<double>() == doctest::Approx(0.39));
    CHECK(j["derived"]["rho2"].get<double>() == doctest::Approx(0.52));
    CHECK(j["stability"]["stable"] == true);
    CHECK(j["stability"]["lhs1"].get<double>() == doctest::Approx(0.65).epsilon(1e-14));

    RunResult bad = run({"stability", "--lambda1", "0.9", "--lambda2", "0.4",
                         "--nu1", "1", "--nu2", "1", "--r", "1", "--phi1", "0.7",
                         "--phi2", "0.6", "--format", "json"});
    CHECK(bad.rc == 1);
    CHECK(json::parse(bad.out)["stability"]["stable"] == false);
}

TEST_CASE("invalid input exits 2 and names the offending flag") {
    const RunResult neg =
        run({"stability", "--lambda1", "-0.3", "--lambda2", "0.4", "--nu1", "1",
             "--nu2", "1", "--r", "1", "--phi1", "0.7", "--phi2", "0.6"});
    CHECK(neg.rc == 2);
    CHECK(neg.err.find("--lambda1") != std::string::npos);

    const RunResult zero =
        run({"stability", "--lambda1", "0", "--lambda2", "0.4", "--nu1", "1",
             "--nu2", "1", "--r", "1", "--phi1", "0.7", "--phi2", "0.6"});
    CHECK(zero.rc == 2);
    CHECK(zero.err.find("--lambda1") != std::string::npos);

    const RunResult missing = run({"stability", "--lambda1", "0.3"});
    CHECK(missing.rc == 2);
    CHECK(missing.err.find("lambda2") != std::string::npos);

    const RunResult under = run(
        {"stability", "--lambda1", "0.1", "--lambda2", "0.1", "--nu1", "1",
         "--nu2", "1", "--r", "1", "--phi1", "0.4", "--phi2", "0.5"});
    CHECK(under.rc == 2); // phi1 + phi2 <= 1 is outside this model's domain

    const RunResult nocmd = run({});
    CHECK(nocmd.rc == 2);
}

TEST_CASE("solve refuses unstable systems with exit 1") {
    const RunResult r =
        run({"solve", "--lambda1", "0.9", "--lambda2", "0.4", "--nu1", "1",
             "--nu2", "1", "--r", "1", "--phi1", "0.7", "--phi2", "0.6"});
    CHECK(r.rc == 1);
    CHECK(r.err.find("refused") != std::string::npos);
}

TEST_CASE("solve emits results bit-identical to direct library calls") {
    const RunResult r = run(with_canonical({"solve", "--format", "json"},
                                           {"--eval-p0y", "0.5,0.25"}));
    REQUIRE(r.rc == 0);
    const json j = json::parse(r.out);

    const gpsq::ModelParams p{0.3, 0.4, 1.0, 1.0, 1.0, 0.7, 0.6};
    const gpsq::Solution sol(p);
    CHECK(j["results"]["P00"].get<double>() == sol.P00());
    CHECK(j["results"]["P10"].get<double>() == sol.P10());
    CHECK(j["results"]["P01"].get<double>() == sol.P01());

    const auto& evals = j["evaluations"]["p0y"];
    REQUIRE(evals.size() == 2);
    CHECK(evals[0]["y"].get<double>() == 0.5);
    CHECK(evals[0]["re"].get<double>() ==
          sol.P0y(gpsq::Cplx(0.5, 0.0)).value.real());
    CHECK(evals[1]["re"].get<double>() ==
          sol.P0y(gpsq::Cplx(0.25, 0.0)).value.real());
    CHECK(evals[0]["region"] == "inside");
}

TEST_CASE("config file supplies parameters and flags take precedence") {
    const std::string path = "cli_test_config.txt";
    {
        std::ofstream f(path);
        f << "# canonical set\n"
          << "lambda1 = 0.25\n"
          << "lambda2 = 0.4\n"
          << "nu1 = 1\nnu2 = 1\nr = 1\n"
          << "phi1 = 0.7\nphi2 = 0.6\n";
    }
    const RunResult base = run({"stability", "--config", path, "--format", "json"});
    REQUIRE(base.rc == 0);
    CHECK(json::parse(base.out)["input"]["lambda1"].get<double>() == 0.25);

    const RunResult over = run({"stability", "--config", path, "--lambda1", "0.3",
                                "--format", "json"});
    REQUIRE(over.rc == 0);
    CHECK(json::parse(over.out)["input"]["lambda1"].get<double>() == 0.3);

    const RunResult bad = run({"stability", "--config", "no_such_file.conf"});
    CHECK(bad.rc == 2);
    std::remove(path.c_str());
}

TEST_CASE("table output lists flat dotted paths") {
    const RunResult r = run(with_canonical({"stability"}));
    REQUIRE(r.rc == 0);
    CHECK(r.out.find("stability.lhs1") != std::string::npos);
    CHECK(r.out.find("0.65") != std::string::npos);
    CHECK(r.out.find("derived.mu1") != std::string::npos);
}

TEST_CASE("asymptotics reports the regime with evaluations over the range") {
    const RunResult r = run({"asymptotics", "--lambda1", "0.35", "--lambda2",
                             "0.2", "--nu1", "1", "--nu2", "1", "--r", "1",
                             "--phi1", "0.45", "--phi2", "0.9", "--format",
                             "json", "--tail-range", "10:14"});
    REQUIRE(r.rc == 0);
    const json j = json::parse(r.out);
    CHECK(j["tail"]["case"] == "d");
    CHECK(j["tail"]["decay_base"].get<double>() == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(j["tail"]["values"].size() == 5);
    CHECK(j["tail"]["values"][0]["n"] == 10);
    CHECK(j["removability"]["removable"] == false);

    const RunResult badrange =
        run(with_canonical({"asymptotics"}, {"--tail-range", "9:3"}));
    CHECK(badrange.rc == 2);
}

TEST_CASE("oracle runs are deterministic byte for byte") {
    const std::string pa = "cli_oracle_a.csv";
    const std::string pb = "cli_oracle_b.csv";
    const auto args = [&](const std::string& out_path) {
        return with_canonical({"oracle", "--format", "json"},
                              {"--N", "50", "--seed", "7", "--replications", "2",
                               "--horizon", "1e4", "--out", out_path});
    };
    const RunResult a = run(args(pa));
    const RunResult b = run(args(pb));
    REQUIRE(a.rc == 0);
    REQUIRE(b.rc == 0);
    CHECK(slurp(pa) == slurp(pb));
    REQUIRE_FALSE(slurp(pa).empty());

    // Identical stdout too: the simulation is keyed by the seed alone.
    const json ja = json::parse(a.out);
    const json jb = json::parse(b.out);
    CHECK(ja["ctmc"]["p00"].get<double>() == jb["ctmc"]["p00"].get<double>());
    CHECK(ja["simulation"]["p00"]["mean"].get<double>() ==
          jb["simulation"]["p00"]["mean"].get<double>());
    CHECK(ja["simulation"]["p00"]["halfwidth"].get<double>() > 0.0);
    std::remove(pa.c_str());
    std::remove(pb.c_str());
}

TEST_CASE("validate passes on the canonical set") {
    const RunResult r =
        run(with_canonical({"validate", "--format", "json"}, {"--N", "120"}));
    CHECK(r.rc == 0);
    const json j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    bool saw_kernel = false, saw_boundary = false;
    for (const auto& c : j["checks"]) {
        CHECK(c["pass"] == true);
        const std::string name = c["name"].get<std::string>();
        if (name == "kernel_identity_residual") saw_kernel = true;
        if (name == "boundary_condition_residual") saw_boundary = true;
    }
    CHECK(saw_kernel);
    CHECK(saw_boundary);
}
