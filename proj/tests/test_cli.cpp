#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qcap/io_json.hpp"
#include "qcap/zoo.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using tutil::h2;

namespace {

const std::string& cli_bin() {
    static const std::string bin = QCAP_CLI_BIN;
    return bin;
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("qcap_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_bin() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json run_json(const std::string& args, const std::string& name, int want_exit = 0) {
    const fs::path out = work_dir() / name;
    CHECK(run_cli(args + " --out " + out.string()) == want_exit);
    return json::parse(slurp(out));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("compute emits a convergent certified report") {
    const json j = run_json("compute --zoo dephasing --p 0.2 --seed 7", "deph.json");
    CHECK(j["schema"] == 1);
    CHECK(j["quantity"] == "rains_info");
    CHECK(j["alpha"] == "limit-1");
    CHECK(j["converged"] == true);
    CHECK(j["seed"] == 7);
    CHECK(std::abs(j["value"].get<double>() - (1.0 - h2(0.2))) <= 1e-5);
    CHECK(j["tau"]["ppt_prime_member"] == true);
    CHECK(j["input_state"]["unit_norm"] == true);
}

TEST_CASE("compute handles renyi orders and coherent information") {
    const json r = run_json("compute --zoo identity --d 2 --quantity renyi-rains --alpha 2",
                            "ident.json");
    CHECK(r["quantity"] == "renyi_rains_info");
    CHECK(r["alpha"].get<double>() == doctest::Approx(2.0));
    CHECK(std::abs(r["value"].get<double>() - 1.0) <= 1e-5);

    const json c = run_json("compute --zoo erasure --p 0.25 --quantity coherent", "eras.json");
    CHECK(c["quantity"] == "coherent_info");
    CHECK(std::abs(c["value"].get<double>() - 0.5) <= 1e-5);
}

TEST_CASE("verify runs suites and reports overall pass") {
    const json j = run_json("verify --suite dpi --samples 60 --seed 7", "dpi.json");
    CHECK(j["pass"] == true);
    CHECK(j["suites"].size() == 1);
    CHECK(j["suites"][0]["suite"] == "dpi");
    CHECK(j["suites"][0]["checks"].size() >= 1);
    for (const json& c : j["suites"][0]["checks"]) CHECK(c["violations"] == 0);
}

TEST_CASE("verify output is byte-stable for a fixed seed") {
    const fs::path a = work_dir() / "det_a.json";
    const fs::path b = work_dir() / "det_b.json";
    CHECK(run_cli("verify --suite overlap-cap --seed 9 --out " + a.string()) == 0);
    CHECK(run_cli("verify --suite overlap-cap --seed 9 --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("\"seed\": 9") != std::string::npos);
}

TEST_CASE("sweep writes a parseable csv") {
    const fs::path out = work_dir() / "sweep.csv";
    CHECK(run_cli("sweep --zoo dephasing --param p --from 0 --to 0.5 --steps 3 "
                  "--quantity coherent --out " + out.string()) == 0);
    std::istringstream in(slurp(out));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "p,coherent");
    double p0 = 0, v0 = 0;
    REQUIRE(std::getline(in, line));
    CHECK(std::sscanf(line.c_str(), "%lf,%lf", &p0, &v0) == 2);
    CHECK(p0 == doctest::Approx(0.0));
    CHECK(std::abs(v0 - 1.0) <= 1e-5);
    REQUIRE(std::getline(in, line));  // p = 0.25
    REQUIRE(std::getline(in, line));  // p = 0.5
    CHECK(std::sscanf(line.c_str(), "%lf,%lf", &p0, &v0) == 2);
    CHECK(p0 == doctest::Approx(0.5));
    CHECK(std::abs(v0) <= 1e-5);
}

TEST_CASE("sweep covers code families") {
    const fs::path out = work_dir() / "codes.csv";
    CHECK(run_cli("sweep --zoo identity --d 2 --code-family rate2-identity --n-max 3 "
                  "--alpha 2 --out " + out.string()) == 0);
    std::istringstream in(slurp(out));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "n,log_M,fidelity,bound,empirical_exponent");
    int rows = 0;
    double last_f = 2.0;
    while (std::getline(in, line)) {
        double n = 0, logm = 0, f = 0, bound = 0, expo = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &n, &logm, &f, &bound, &expo) == 5);
        CHECK(f < last_f);
        CHECK(f <= bound + 1e-9);
        last_f = f;
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("hierarchy reports a consistent chain") {
    const json j = run_json("hierarchy --zoo dephasing --p 0.3 --alphas 1.5,2 --two-copy",
                            "hier.json");
    CHECK(j["consistent"] == true);
    CHECK(j["ic_le_rains"] == true);
    CHECK(j["grid_monotone"] == true);
    CHECK(j["l_grid"] == json::array({1, 2}));
    CHECK(std::abs(j["two_copy_rate"].get<double>() - j["rains_info"].get<double>()) <= 5e-3);
}

TEST_CASE("channel files round-trip through compute") {
    const fs::path chan = work_dir() / "chan.json";
    {
        std::ofstream out(chan);
        out << qcap::channel_to_json(qcap::make_qubit_dephasing(0.3)).dump(2) << "\n";
    }
    const json j = run_json("compute --channel " + chan.string() + " --quantity coherent",
                            "filechan.json");
    CHECK(std::abs(j["value"].get<double>() - (1.0 - h2(0.3))) <= 1e-5);
}

TEST_CASE("error paths exit nonzero") {
    CHECK(run_cli("compute --zoo nonsense") == 1);
    CHECK(run_cli("compute --channel /nonexistent/chan.json") == 1);
    CHECK(run_cli("verify --suite nonsense") == 1);
    CHECK(run_cli("sweep --zoo dephasing") == 1);  // no param/alphas/code-family
    CHECK(run_cli("") != 0);                       // subcommand required

    // Non-CPTP channel files are rejected on load.
    const fs::path bad = work_dir() / "bad.json";
    {
        std::ofstream out(bad);
        out << R"({"schema": 1, "name": "bad", "d_in": 1, "d_out": 1,)"
            << R"( "kraus": [[[[1.0, 0.0]]], [[[1.0, 0.0]]]]})" << "\n";
    }
    CHECK(run_cli("compute --channel " + bad.string()) == 1);
}

}  // TEST_SUITE
