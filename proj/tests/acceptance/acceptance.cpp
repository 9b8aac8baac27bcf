// Acceptance run: one PASS/FAIL line per criterion, then exit status 0 only
// if every criterion passed.  Pass -v to list the individual measurements.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "kgdecomp/verify.hpp"

namespace {

struct Criterion {
    int group;
    const char* title;
    double time_limit_s;
};

// Stated runtime limits; criteria without one get two minutes.
constexpr std::array<Criterion, kgd::verify::kGroupCount> kCriteria{{
    {1, "Hulthen algebraic identities", 1.0},
    {2, "Riccati residuals", 10.0},
    {3, "self-consistent Hulthen energy, exact reductions", 120.0},
    {4, "oracle cross-validation at 2m = 1", 30.0},
    {5, "Coulomb plus oscillator ground state", 120.0},
    {6, "perturbation engine exactness", 120.0},
    {7, "order-scaling property", 120.0},
    {8, "degeneracy sentinels", 120.0},
    {9, "oracle self-validation", 120.0},
}};

struct Captured {
    int exit_code = -1;
    std::string out;
};

Captured capture(const std::string& command) {
    Captured c;
    FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
    if (!pipe) {
        return c;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        c.out.append(buf.data(), got);
    }
    const int status = ::pclose(pipe);
    c.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return c;
}

struct Example {
    std::string env;
    std::string args;
    int expected_exit;
};

// The example invocations documented in the README.
const std::vector<Example> kExamples{
    {"", "hulthen --m 1 --alpha 1 --s0 1.25 --v0 0.75", 0},
    {"", "hulthen --m 0.5 --alpha 1 --s0 1.25 --v0 0.75 --states 1", 0},
    {"", "coulombic --m 0.5 --s0 -1 --s1 1.4142135623730951 --s2 2", 0},
    {"", "perturb --m 0.5 --s0 -1 --s1 1.4142135623730951 --s2 2 --order 3 --lambda 0.01", 0},
    {"", "oracle --m 0.5 --alpha 1 --s0 1.25 --v0 0.75", 0},
    {"", "hulthen --m 1 --alpha 1 --s0 1.25 --v0 0.75 --format csv --rmin 0.1 --rmax 2 --h 0.1", 0},
    {"", "hulthen --m 1 --alpha 1 --s0 1.25", 2},
    {"", "hulthen --m one --alpha 1 --s0 1.25 --v0 0.75", 2},
    {"", "hulthen --m 1 --alpha 1 --s0 0.1 --v0 0", 3},
    {"", "hulthen --m 1 --alpha 1 --s0 0.5 --v0 0.9", 3},
    {"KGDECOMP_GRID_SCALE=0.01", "verify --quick", 4},
};

bool cli_determinism(std::string& summary, bool verbose) {
    std::set<int> seen;
    bool ok = true;
    int identical = 0;
    for (const auto& ex : kExamples) {
        const std::string cmd = ex.env + " '" KGDECOMP_CLI_PATH "' " + ex.args;
        const auto a = capture(cmd);
        const auto b = capture(cmd);
        const bool same = a.out == b.out && a.exit_code == b.exit_code;
        const bool code_ok = a.exit_code == ex.expected_exit;
        identical += same ? 1 : 0;
        seen.insert(a.exit_code);
        ok = ok && same && code_ok;
        if (verbose || !same || !code_ok) {
            std::printf("      - exit %d (expected %d), %s: kgdecomp %s\n", a.exit_code, ex.expected_exit,
                        same ? "identical" : "DIFFERS", ex.args.c_str());
        }
    }
    const bool all_codes = seen == std::set<int>{0, 2, 3, 4};
    summary = std::to_string(identical) + "/" + std::to_string(kExamples.size()) +
              " invocations byte-identical; exit codes seen:";
    for (int code : seen) {
        summary += " " + std::to_string(code);
    }
    return ok && all_codes;
}

}  // namespace

int main(int argc, char** argv) {
    const bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
    int failures = 0;
    for (const auto& c : kCriteria) {
        kgd::verify::Options options;
        options.group = c.group;
        const auto start = std::chrono::steady_clock::now();
        const auto checks = kgd::verify::run(options);
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        bool passed = !checks.empty() && elapsed <= c.time_limit_s;
        int ok_count = 0;
        for (const auto& check : checks) {
            passed = passed && check.passed;
            ok_count += check.passed ? 1 : 0;
        }
        failures += passed ? 0 : 1;
        std::printf("%s  %2d  %-50s %d/%zu checks, %.2f s (limit %.0f s)\n", passed ? "PASS" : "FAIL", c.group,
                    c.title, ok_count, checks.size(), elapsed, c.time_limit_s);
        for (const auto& check : checks) {
            if (verbose || !check.passed) {
                std::printf("      - %-44s %.4e vs %.4e  %s\n", check.name.c_str(), check.value, check.tolerance,
                            check.detail.c_str());
            }
        }
        std::fflush(stdout);
    }

    std::string summary;
    const bool cli_ok = cli_determinism(summary, verbose);
    failures += cli_ok ? 0 : 1;
    std::printf("%s  %2d  %-50s %s\n", cli_ok ? "PASS" : "FAIL", 10, "CLI determinism and exit codes",
                summary.c_str());
    std::printf("%d of %zu criteria passed\n", static_cast<int>(kCriteria.size()) + 1 - failures,
                kCriteria.size() + 1);
    return failures == 0 ? 0 : 1;
}
