#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eulerap_cli.hpp"

using eulerap::cli::run;
using json = nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("eulerap_cli_" + name)).string();
}

}  // namespace

TEST(Cli, APJsonSchema) {
    const auto r = invoke({"ap", "--s", "2,0", "--q", "1", "--a", "1", "--P", "2", "--L", "12", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["mode"], "ap");
    EXPECT_NEAR(j["value"][0].get<double>(), 0.6079271018540267, 1e-10);
    EXPECT_EQ(j["value"][1].get<double>(), 0.0);
    EXPECT_TRUE(j.contains("log_value"));
    EXPECT_LT(j["bound"].get<double>(), 1e-7);  // 2^-24 structural term
    EXPECT_FALSE(j.contains("oracle"));
    EXPECT_EQ(j["spec"]["s"], json::array({2.0, 0.0}));
}

TEST(Cli, OracleCheckIsConsistent) {
    const auto r = invoke({"ap", "--s", "1.5,1", "--q", "4", "--a", "3", "--P", "5", "--L", "10", "--check-oracle", "1000000", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_TRUE(j.contains("oracle"));
    EXPECT_TRUE(j["oracle"]["consistent"].get<bool>());
    EXPECT_LE(j["oracle"]["delta"].get<double>(), j["bound"].get<double>() + j["oracle"]["tail_bound"].get<double>());
}

TEST(Cli, HumanReadableOutput) {
    const auto r = invoke({"rational", "--F", "0,0,2", "--G", "1", "--P", "10", "--L", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("value:"), std::string::npos);
    EXPECT_NE(r.out.find("bound:"), std::string::npos);
}

TEST(Cli, MultiAndDemoModes) {
    const auto m = invoke({"multi", "--terms", "-1,0,1,0;1,0,2,-1", "--s", "2", "--P", "10", "--L", "8", "--json"});
    ASSERT_EQ(m.code, 0) << m.err;
    EXPECT_NEAR(json::parse(m.out)["log_value"][0].get<double>(), 0.028862596456901174, 1e-13);
    const auto d = invoke({"demo", "--s", "2,0", "--nmax", "40", "--json"});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_NEAR(json::parse(d.out)["log_value"][0].get<double>(), 0.26694473819139131, 1e-11);
}

TEST(Cli, OracleMode) {
    const auto r = invoke({"oracle", "--s", "2", "--check-oracle", "1000000", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["value"][0].get<double>(), 0.6079271018540267, 1e-6);
    EXPECT_GT(j["bound"].get<double>(), 0.0);
}

TEST(Cli, WittExactIntegers) {
    const auto r = invoke({"witt", "--poly", "1,-3,2", "--K", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("b_H: 3 1 2 3 6"), std::string::npos) << r.out;
    const auto j = json::parse(invoke({"witt", "--poly", "1,-3,2", "--K", "3", "--json"}).out);
    EXPECT_EQ(j["b"], json::array({"3", "1", "2"}));
    EXPECT_TRUE(j["exact"].get<bool>());
}

TEST(Cli, WittComplexPolynomial) {
    const auto r = invoke({"witt", "--poly", "1,(0,1)", "--K", "2", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_FALSE(j["exact"].get<bool>());
    // H = 1 + i t = 1 - alpha t with alpha = -i: s(1) = -i, s(2) = -1.
    EXPECT_EQ(j["power_sums"][0], json::array({-0.0, -1.0}));
    EXPECT_NEAR(j["power_sums"][1][0].get<double>(), -1.0, 1e-15);
}

TEST(Cli, CharactersTable) {
    const auto r = invoke({"characters", "--q", "5", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_EQ(j["characters"].size(), 4u);
    EXPECT_TRUE(j["characters"][0]["values"][0].is_null());
    const auto h = invoke({"characters", "--q", "4"});
    EXPECT_NE(h.out.find("chi_1 order 2"), std::string::npos) << h.out;
}

TEST(Cli, FromJsonRoundTrip) {
    const std::vector<std::vector<std::string>> jobs{
        {"ap", "--s", "1.5,1", "--q", "5", "--a", "2", "--P", "7", "--L", "9", "--json"},
        {"rational", "--F", "0,0,(1,-1)", "--G", "1,(0,0.5)", "--q", "5", "--a", "2", "--P", "9", "--L", "6", "--json"},
        {"multi", "--terms", "0.3,0.4,1,0;0.5,0,2,-1", "--s", "1.8,-1.5", "--q", "3", "--a", "2", "--P", "7", "--L", "6",
         "--check-oracle", "100000", "--json"},
        {"demo", "--s", "3,0.5", "--nmax", "30", "--json"},
        {"witt", "--poly", "1,0.5,(0,2)", "--K", "6", "--json"},
        {"characters", "--q", "8", "--json"},
    };
    for (const auto& args : jobs) {
        const auto first = invoke(args);
        ASSERT_EQ(first.code, 0) << first.err;
        const auto path = temp_path(args[0] + ".json");
        std::ofstream(path) << first.out;
        const auto second = invoke({args[0], "--from-json", path});
        ASSERT_EQ(second.code, 0) << second.err;
        EXPECT_EQ(first.out, second.out) << args[0];
        std::filesystem::remove(path);
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"nosuchmode"}).code, 2);
    EXPECT_EQ(invoke({"ap", "--s", "two"}).code, 2);
    EXPECT_EQ(invoke({"ap", "--s", "1,2,3"}).code, 2);
    EXPECT_EQ(invoke({"ap", "--q", "4", "--a", "2"}).code, 2);
    const auto r = invoke({"rational", "--F", "0,0,1", "--P", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("P >= 2*beta"), std::string::npos) << r.err;
    EXPECT_EQ(invoke({"demo", "--s", "1,0"}).code, 2);
    EXPECT_EQ(invoke({"rational", "--F", "0,0,(1,2"}).code, 2);
    EXPECT_EQ(invoke({"ap", "--from-json", "/nonexistent/file.json"}).code, 2);
    EXPECT_EQ(invoke({"multi"}).code, 2);
}

TEST(Cli, EpsilonFromEnvironment) {
    ::setenv("EULER_AP_EPS", "1e-12", 1);
    const auto r = invoke({"ap", "--s", "2", "--L", "4", "--json"});
    ::unsetenv("EULER_AP_EPS");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["spec"]["eps"].get<double>(), 1e-12);
    ::setenv("EULER_AP_EPS", "-1", 1);
    EXPECT_EQ(invoke({"ap"}).code, 2);
    ::unsetenv("EULER_AP_EPS");
}

TEST(Cli, PrecisionFailureExitCode) {
    // Pinning the log branch this close to s = 1 needs primes far past any table.
    const auto r = invoke({"ap", "--s", "1.0001", "--L", "4"});
    EXPECT_EQ(r.code, 3) << r.out << r.err;
    EXPECT_NE(r.err.find("precision-unreachable"), std::string::npos);
}
