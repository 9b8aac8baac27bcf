// Runs the built command-line tool as a subprocess.
#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("kgdecomp_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
    const auto dir = scratch_dir();
    const auto err_path = dir / "stderr.txt";
    const std::string cmd = env + " '" KGDECOMP_CLI_PATH "' " + args + " 2>'" + err_path.string() + "'";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    return r;
}

const std::string kHulthen = "hulthen --m 1 --alpha 1 --s0 1.25 --v0 0.75";

}  // namespace

TEST(Cli, HulthenJson) {
    const auto r = run(kHulthen);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["command"], "hulthen");
    EXPECT_NEAR(doc["results"]["E"].get<double>(), 23.0 / 41.0, 1e-12);
    EXPECT_DOUBLE_EQ(doc["results"]["delta"].get<double>(), 1.0);
    EXPECT_EQ(doc["results"]["exponent_sign"], -1);
    EXPECT_TRUE(doc["results"]["warnings"].is_array());
    EXPECT_DOUBLE_EQ(doc["inputs"]["rmax"].get<double>(), 40.0);
    EXPECT_FALSE(doc.contains("oracle"));
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
    const auto a = run(kHulthen + " --states 1 --rmax 20 --h 0.004");
    const auto b = run(kHulthen + " --states 1 --rmax 20 --h 0.004");
    ASSERT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto doc = nlohmann::json::parse(a.out);
    ASSERT_TRUE(doc.contains("oracle"));
    EXPECT_EQ(doc["oracle"]["energies"].size(), 1u);
}

TEST(Cli, UsageErrorsExitTwo) {
    for (const std::string& args : std::vector<std::string>{"hulthen --m x --alpha 1 --s0 1 --v0 0", "hulthen --m 1 --alpha 1 --s0 1.25", kHulthen + " --bogus 3",
          "coulombic --m 0.5 --s0 -1 --s2 2 --alpha 1", "", "nonsense"}) {
        const auto r = run(args);
        EXPECT_EQ(r.exit_code, 2) << args << "\n" << r.err;
    }
    const auto missing = run("hulthen --m 1 --alpha 1 --s0 1.25");
    const auto err = nlohmann::json::parse(missing.err);
    EXPECT_NE(err["detail"].get<std::string>().find("--v0"), std::string::npos);
}

TEST(Cli, SolverErrorsExitThree) {
    const auto r = run("hulthen --m 1 --alpha 1 --s0 0.1 --v0 0");
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_TRUE(r.out.empty());
    const auto err = nlohmann::json::parse(r.err);
    EXPECT_EQ(err["error"], "NoBoundState");

    const auto dominated = run("hulthen --m 1 --alpha 1 --s0 0.5 --v0 0.9");
    EXPECT_EQ(dominated.exit_code, 3);
    EXPECT_EQ(nlohmann::json::parse(dominated.err)["error"], "VectorDominates");

    const auto no_config = run(kHulthen + " --config /nonexistent/kgdecomp.json");
    EXPECT_EQ(no_config.exit_code, 3);
    EXPECT_EQ(nlohmann::json::parse(no_config.err)["error"], "IOError");
}

TEST(Cli, CsvShape) {
    const auto r = run(kHulthen + " --format csv --rmin 0.1 --rmax 0.5 --h 0.1");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "r,chi,phi,psi");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
    }
    EXPECT_EQ(rows, 5);
}

TEST(Cli, OutFileCarriesTheTable) {
    const auto path = scratch_dir() / "amplitudes.csv";
    const auto r = run(kHulthen + " --format csv --raw --rmin 0.1 --rmax 1 --h 0.1 --out '" + path.string() + "'");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NO_THROW(nlohmann::json::parse(r.out));
    const auto table = slurp(path);
    EXPECT_EQ(table.substr(0, table.find('\n')), "r,chi,phi,psi,chi_raw,phi_raw");
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 11);
}

TEST(Cli, ConfigPrecedenceAndListMode) {
    const auto dir = scratch_dir();
    const auto single = dir / "single.json";
    std::ofstream(single) << R"({"m": 1, "alpha": 1, "s0": 1.25, "v0": 0.75, "rmax": 20})";
    const auto r = run("hulthen --config '" + single.string() + "' --rmax 30");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(doc["inputs"]["rmax"].get<double>(), 30.0);
    EXPECT_DOUBLE_EQ(doc["inputs"]["m"].get<double>(), 1.0);

    const auto list = dir / "list.json";
    std::ofstream(list) << R"([{"m": 1, "alpha": 1, "s0": 1.25, "v0": 0.75},
                              {"m": 0.5, "alpha": 1, "s0": 1.25, "v0": 0.75}])";
    const auto many = run("hulthen --config '" + list.string() + "'");
    ASSERT_EQ(many.exit_code, 0) << many.err;
    const auto docs = nlohmann::json::parse(many.out);
    ASSERT_TRUE(docs.is_array());
    ASSERT_EQ(docs.size(), 2u);
    EXPECT_NEAR(docs[1]["results"]["E"].get<double>(), 0.4873, 5e-4);

    const auto foreign = dir / "foreign.json";
    std::ofstream(foreign) << R"({"m": 1, "alpha": 1, "s0": 1.25, "v0": 0.75, "order": 2})";
    EXPECT_EQ(run("hulthen --config '" + foreign.string() + "'").exit_code, 2);

    const auto broken = dir / "broken.json";
    std::ofstream(broken) << "{\"m\": ";
    EXPECT_EQ(run("hulthen --config '" + broken.string() + "'").exit_code, 2);
}

TEST(Cli, CoulombicAndPerturb) {
    const auto c = run("coulombic --m 0.5 --s0 -1 --s1 1.4142135623730951 --s2 2");
    ASSERT_EQ(c.exit_code, 0) << c.err;
    EXPECT_NEAR(nlohmann::json::parse(c.out)["results"]["eps"].get<double>(), -0.25 + 3.0 * std::sqrt(2.0), 1e-12);

    const auto p = run("perturb --m 1 --s0 -0.5 --s2 0.25 --v0 -0.5 --v2 0.25 --derive-linear --order 2");
    ASSERT_EQ(p.exit_code, 0) << p.err;
    const auto doc = nlohmann::json::parse(p.out);
    EXPECT_EQ(doc["results"]["deps_by_order"].size(), 2u);
    // S = V leaves S^2 - V^2 = 0: no correction at any order.
    EXPECT_EQ(doc["results"]["deps"].get<double>(), 0.0);
}

TEST(Cli, OracleCommand) {
    const auto r = run("oracle --m 0.5 --alpha 1 --s0 1.25 --v0 0.75 --h 0.002");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["command"], "oracle");
    EXPECT_NEAR(doc["results"]["E"].get<double>(), 0.4873, 5e-4);
}

TEST(Cli, VerifyExitCodes) {
    const auto ok = run("verify --quick --format json");
    ASSERT_EQ(ok.exit_code, 0) << ok.err;
    const auto doc = nlohmann::json::parse(ok.out);
    EXPECT_TRUE(doc["results"]["passed"].get<bool>());

    // A grid a hundred times coarser than the default cannot meet the tolerances.
    const auto coarse = run("verify --quick", "KGDECOMP_GRID_SCALE=0.01");
    EXPECT_EQ(coarse.exit_code, 4);
    EXPECT_NE(coarse.out.find("FAIL"), std::string::npos);
}
