#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "bpgeo/cli.hpp"

namespace {

using nlohmann::ordered_json;

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args, const std::string& input = {}) {
    std::ostringstream out, err;
    std::istringstream in(input);
    const int status = bpgeo::cli::run(args, out, err, in);
    return {status, out.str(), err.str()};
}

const std::string kJ3 = "3\n0.33333333333333331 0.33333333333333331 0.33333333333333331\n"
                        "0.33333333333333331 0.33333333333333331 0.33333333333333331\n"
                        "0.33333333333333331 0.33333333333333331 0.33333333333333331\n";
const std::string kCirculant = "3\n0.2 0.3 0.5\n0.5 0.2 0.3\n0.3 0.5 0.2\n";
const std::string kJ4 = R"({"n": 4, "rows": [[0.25,0.25,0.25,0.25],[0.25,0.25,0.25,0.25],
                           [0.25,0.25,0.25,0.25],[0.25,0.25,0.25,0.25]]})";
const std::string kFlip = "2\n1 -1\n-1 1\n";

/// Structural comparison: identical key order, identical strings, numbers to a relative tolerance.
::testing::AssertionResult same_shape(const ordered_json& got, const ordered_json& want, const std::string& where) {
    if (want.is_number() && got.is_number()) {
        const double a = got.get<double>(), b = want.get<double>();
        if (std::fabs(a - b) <= 1e-9 * (1 + std::fabs(b))) return ::testing::AssertionSuccess();
        return ::testing::AssertionFailure() << where << ": " << a << " != " << b;
    }
    if (got.type() != want.type()) return ::testing::AssertionFailure() << where << ": type " << got.type_name()
                                                                          << " != " << want.type_name();
    if (want.is_object()) {
        if (got.size() != want.size()) return ::testing::AssertionFailure() << where << ": key count differs";
        auto g = got.begin();
        for (auto w = want.begin(); w != want.end(); ++w, ++g) {
            if (g.key() != w.key()) return ::testing::AssertionFailure() << where << ": key " << g.key() << " != " << w.key();
            if (auto r = same_shape(g.value(), w.value(), where + "." + w.key()); !r) return r;
        }
        return ::testing::AssertionSuccess();
    }
    if (want.is_array()) {
        if (got.size() != want.size()) return ::testing::AssertionFailure() << where << ": length differs";
        for (std::size_t k = 0; k < want.size(); ++k)
            if (auto r = same_shape(got[k], want[k], where + "[" + std::to_string(k) + "]"); !r) return r;
        return ::testing::AssertionSuccess();
    }
    if (got != want) return ::testing::AssertionFailure() << where << ": " << got.dump() << " != " << want.dump();
    return ::testing::AssertionSuccess();
}

struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
    std::string input;
    int status = bpgeo::cli::kExitOk;
};

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesRecordedReport) {
    const auto& c = GetParam();
    const auto r = run(c.args, c.input);
    ASSERT_EQ(r.status, c.status) << r.out << r.err;
    const auto got = ordered_json::parse(r.out);
    const std::filesystem::path path = std::filesystem::path(BPGEO_GOLDEN_DIR) / (c.name + ".json");
    if (std::getenv("BPGEO_REGENERATE_GOLDEN") != nullptr) {
        std::ofstream(path) << got.dump(2) << "\n";
        GTEST_SKIP() << "regenerated " << path;
    }
    std::ifstream file(path);
    ASSERT_TRUE(file) << "missing golden file " << path;
    const auto want = ordered_json::parse(file);
    EXPECT_TRUE(same_shape(got, want, c.name));
}

INSTANTIATE_TEST_SUITE_P(
    Reports, Golden,
    ::testing::Values(
        GoldenCase{"radius_n5_p1", {"radius", "--n", "5", "--p", "1"}},
        GoldenCase{"radius_n7_p2", {"radius", "--n", "7", "--p", "2"}},
        GoldenCase{"radius_n3_p3", {"radius", "--n", "3", "--p", "3"}},
        GoldenCase{"radius_n5_p3", {"radius", "--n", "5", "--p", "3"}},
        GoldenCase{"radius_n4_p3_conjecture", {"radius", "--n", "4", "--p", "3", "--method", "conjecture"}},
        GoldenCase{"radius_n6_p1_5_bounds", {"radius", "--n", "6", "--p", "1.5", "--method", "bounds"}},
        GoldenCase{"radius_n4_pinf_enumerate", {"radius", "--n", "4", "--p", "inf", "--method", "enumerate"}},
        GoldenCase{"norm_j3_p2", {"norm", "--matrix", "-", "--p", "2"}, kJ3},
        GoldenCase{"norm_flip_p3", {"norm", "--matrix", "-", "--p", "3"}, kFlip},
        GoldenCase{"norm_flip_p3_oracle", {"norm", "--matrix", "-", "--p", "3", "--method", "oracle"}, kFlip},
        GoldenCase{"decompose_circulant", {"decompose", "--matrix", "-"}, kCirculant},
        GoldenCase{"ball_circulant_p1", {"ball", "--matrix", "-", "--p", "1"}, kCirculant},
        GoldenCase{"verify_center_j4_p1", {"verify", "center", "--matrix", "-", "--p", "1"}, kJ4},
        GoldenCase{"verify_spectrum_circulant", {"verify", "spectrum", "--matrix", "-"}, kCirculant},
        GoldenCase{"verify_equidistance_n4_p1", {"verify", "equidistance", "--n", "4", "--p", "1"}},
        GoldenCase{"error_bad_row", {"norm", "--matrix", "-", "--p", "2"}, "2\n1 0\n0 x\n", bpgeo::cli::kExitComputation},
        GoldenCase{"error_conjecture_p2", {"radius", "--n", "5", "--p", "2", "--method", "conjecture"}, "",
                   bpgeo::cli::kExitComputation}),
    [](const ::testing::TestParamInfo<GoldenCase>& info) { return info.param.name; });

TEST(Cli, RadiusFormulaValue) {
    const auto r = run({"radius", "--n", "5", "--p", "1"});
    ASSERT_EQ(r.status, 0);
    const auto j = ordered_json::parse(r.out);
    EXPECT_EQ(j["value"].get<double>(), 1.6);
    EXPECT_EQ(j["method"], "formula_p1");
    EXPECT_EQ(j["command"], "radius");
}

TEST(Cli, NormOfAveragerIsOne) {
    const auto j = ordered_json::parse(run({"norm", "--matrix", "-", "--p", "2"}, kJ3).out);
    EXPECT_NEAR(j["value"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, ConjectureNumbersCarryTheWarning) {
    for (const auto& n : {"4", "5", "6"}) {
        const auto j = ordered_json::parse(run({"radius", "--n", n, "--p", "3"}).out);
        ASSERT_EQ(j["method"], "conjecture");
        bool tagged = false;
        for (const auto& w : j["warnings"]) tagged |= w.get<std::string>().find("conjectured") != std::string::npos;
        EXPECT_TRUE(tagged) << n;
    }
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).status, bpgeo::cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).status, bpgeo::cli::kExitUsage);
    EXPECT_EQ(run({"radius", "--n", "3"}).status, bpgeo::cli::kExitUsage);
    EXPECT_EQ(run({"radius", "--n", "3", "--p", "2", "--bogus"}).status, bpgeo::cli::kExitUsage);
    EXPECT_EQ(run({"radius", "--n", "three", "--p", "2"}).status, bpgeo::cli::kExitUsage);
    EXPECT_EQ(run({"verify"}).status, bpgeo::cli::kExitUsage);
    const auto bad = run({"norm", "--p", "2", "--nope"});
    EXPECT_EQ(bad.status, bpgeo::cli::kExitUsage);
    EXPECT_NE(bad.err.find("--matrix"), std::string::npos) << "usage text should list the valid flags";
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).status, bpgeo::cli::kExitOk); }

TEST(Cli, ComputationErrorsExitOneWithJson) {
    const auto missing = run({"norm", "--matrix", "/nonexistent/m.txt", "--p", "2"});
    EXPECT_EQ(missing.status, bpgeo::cli::kExitComputation);
    const auto j = ordered_json::parse(missing.out);
    EXPECT_EQ(j["error"], "io_error");
    EXPECT_NE(j["detail"].get<std::string>().find("/nonexistent/m.txt"), std::string::npos);

    const auto not_ds = run({"ball", "--matrix", "-", "--p", "1"}, "2\n0.5 0.5\n0.5 0.6\n");
    EXPECT_EQ(not_ds.status, bpgeo::cli::kExitComputation);
    EXPECT_EQ(ordered_json::parse(not_ds.out)["error"], "row_sum");

    const auto bad_p = run({"radius", "--n", "3", "--p", "0.5"});
    EXPECT_EQ(bad_p.status, bpgeo::cli::kExitComputation);
    EXPECT_EQ(ordered_json::parse(bad_p.out)["error"], "bad_exponent");
}

TEST(Cli, SampleThenNormRoundTrip) {
    for (const char* method : {"sinkhorn", "mixture"}) {
        const auto s = run({"sample", "--n", "5", "--method", method, "--seed", "3"});
        ASSERT_EQ(s.status, 0) << s.err;
        const auto n = run({"norm", "--matrix", "-", "--p", "1.5"}, s.out);
        ASSERT_EQ(n.status, 0) << n.out;
        const double v = ordered_json::parse(n.out)["value"].get<double>();
        EXPECT_GE(v, 1 - 1e-8);
        EXPECT_LE(v, 1 + 1e-8);
    }
}

TEST(Cli, SampleIsDeterministicAndHonoursEnvironmentSeed) {
    const auto a = run({"sample", "--n", "4", "--method", "mixture", "--k", "3", "--seed", "9"});
    const auto b = run({"sample", "--n", "4", "--method", "mixture", "--k", "3", "--seed", "9"});
    EXPECT_EQ(a.out, b.out);

    ::setenv("BP_SEED", "9", 1);
    const auto env = run({"sample", "--n", "4", "--method", "mixture", "--k", "3"});
    const auto explicit_seed = run({"sample", "--n", "4", "--method", "mixture", "--k", "3", "--seed", "1"});
    ::unsetenv("BP_SEED");
    const auto unseeded = run({"sample", "--n", "4", "--method", "mixture", "--k", "3"});
    EXPECT_EQ(env.out, a.out);
    EXPECT_NE(explicit_seed.out, a.out) << "--seed must win over BP_SEED";
    EXPECT_NE(unseeded.out, a.out);
}

TEST(Cli, BadEnvironmentSeedIsAnError) {
    ::setenv("BP_SEED", "banana", 1);
    const auto r = run({"sample", "--n", "3"});
    ::unsetenv("BP_SEED");
    EXPECT_EQ(r.status, bpgeo::cli::kExitComputation);
}

TEST(Cli, CurveTableHasRequestedRows) {
    const auto r = run({"curve", "--n", "3", "--p-grid", "1.1:6:50"});
    ASSERT_EQ(r.status, 0) << r.out;
    std::istringstream lines(r.out);
    std::string line;
    std::vector<std::string> rows;
    bool header = false;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            EXPECT_EQ(line, "p\tclosed_form\tconjecture\tlower_estimate");
            header = true;
            continue;
        }
        rows.push_back(line);
    }
    ASSERT_EQ(rows.size(), 50u);
    double p, cf, conj, est;
    std::istringstream first(rows.front());
    first >> p >> cf >> conj >> est;
    EXPECT_DOUBLE_EQ(p, 1.1);
    EXPECT_NEAR(cf, conj, 1e-9);
    EXPECT_NEAR(cf, est, 1e-6);
    std::istringstream last(rows.back());
    last >> p;
    EXPECT_DOUBLE_EQ(p, 6.0);
}

TEST(Cli, JsonMatrixInputIsAccepted) {
    const auto r = run({"norm", "--matrix", "-", "--p", "inf"}, kJ4);
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(ordered_json::parse(r.out)["value"].get<double>(), 1.0);
}

}  // namespace
