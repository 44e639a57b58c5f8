#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct CliRun {
    int code;
    std::string out;
};

CliRun run(const std::string& args)
{
    const std::string cmd = std::string(EULERPROD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return {-1, ""};
    }
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(EULERPROD_TEST_DATA) + "/" + name; }

} // namespace

TEST(Cli, EvalBuiltinJson)
{
    const CliRun r = run("eval --builtin ramanujan-a1 --digits 50 --json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["command"], "eval");
    EXPECT_EQ(j["value"].get<std::string>().substr(0, 52), "0.54685595528047446684551710099076178991021048592974");
    EXPECT_GE(j["certified_digits"].get<long>(), 50);
    EXPECT_EQ(j["plan"]["M"], 47);
    EXPECT_EQ(j["plan"]["p_m"], 17);
    EXPECT_EQ(j["plan"]["R"], "9/10");
    EXPECT_FALSE(j.contains("timing_seconds"));
    // Output is deterministic without --timing.
    EXPECT_EQ(run("eval --builtin ramanujan-a1 --digits 50 --json").out, r.out);
    const auto timed = nlohmann::json::parse(run("eval --builtin ramanujan-a1 --digits 20 --json --timing").out);
    EXPECT_TRUE(timed.contains("timing_seconds"));
}

TEST(Cli, EvalTextMarksCertifiedPrefix)
{
    const CliRun r = run("eval --builtin avg-divisor-c --digits 30");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("value             0.71380993049991415224401060402799"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("["), std::string::npos);
}

TEST(Cli, EvalCustomFunction)
{
    // prod_p (1 - p^-2) = 6/pi^2 = 0.6079271018540266286632767792...
    const CliRun r = run("eval --function '1-z^2' --R 9/10 --B 10 --m 3 --digits 25 --json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["value"].get<std::string>().substr(0, 27), "0.6079271018540266286632767");
}

TEST(Cli, EvalExitCodes)
{
    EXPECT_EQ(run("eval --function '1-z^2' --R 1/2 --B 10 --m 1 --digits 10").code, 3);
    EXPECT_EQ(run("eval --builtin nope").code, 2);
    EXPECT_EQ(run("eval --function '1+z' --R 9/10 --B 10").code, 2);
    EXPECT_EQ(run("eval --function '1-z^' --R 9/10 --B 10").code, 2);
    EXPECT_EQ(run("eval --function '1-z^2'").code, 2);
    EXPECT_EQ(run("eval --builtin ramanujan-a1 --digits 0").code, 2);
    EXPECT_EQ(run("eval --builtin ramanujan-a1 --function z").code, 2);
}

TEST(Cli, ExpandTable)
{
    const CliRun r = run("expand --function 'exp(z)' --order 6");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("n\teps\talpha\n1\t-1\t-1\n2\t-1\t1/2\n3\t-1\t1/3\n4\t-1\t0\n5\t-1\t1/5\n6\t-1\t-1/6\n"),
              std::string::npos)
        << r.out;
}

TEST(Cli, ExpandJsonNormalizesByConstantTerm)
{
    const CliRun r = run("expand --function '2+2*z' --order 4 --signs adaptive --json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["f0"], "2");
    EXPECT_EQ(j["inputs"]["signs"], "adaptive");
    ASSERT_EQ(j["exponents"].size(), 4u);
    EXPECT_EQ(j["exponents"][0]["eps"], 1);
    EXPECT_EQ(j["exponents"][0]["alpha"], "1");
    EXPECT_EQ(j["exponents"][1]["alpha"], "0");
}

TEST(Cli, ExpandErrors)
{
    EXPECT_EQ(run("expand --function 'z' --order 4").code, 2);
    EXPECT_EQ(run("expand --function 'ln(z)' --order 4").code, 2);
    EXPECT_EQ(run("expand --function '1+z' --signs sideways").code, 2);
    EXPECT_EQ(run("expand").code, 2);
    EXPECT_EQ(run("expand --function '1+z' --order 0").code, 2);
}

TEST(Cli, Arnold)
{
    const CliRun r = run("arnold --matrix " + data("fibonacci.txt") + " --p 2 --kmax 3 --json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["all_pass"].get<bool>());
    EXPECT_EQ(j["checks"][2]["lhs"], "47");
    EXPECT_EQ(j["checks"][2]["modulus"], "8");
    EXPECT_EQ(run("arnold --matrix " + data("identity3.txt") + " --p 5").code, 0);
    EXPECT_EQ(run("arnold --matrix " + data("fibonacci.txt") + " --p 4").code, 2);
    EXPECT_EQ(run("arnold --matrix " + data("bad_entry.txt") + " --p 3").code, 2);
    EXPECT_EQ(run("arnold --matrix /nonexistent --p 3").code, 2);
    EXPECT_EQ(run("arnold --p 3").code, 2);
}

TEST(Cli, Zeta)
{
    const CliRun r = run("zeta --n 2 --digits 30");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1.64493406684822643647241516665\n");
    const auto j = nlohmann::json::parse(run("zeta --m 2 --n 2 --digits 20 --json").out);
    EXPECT_EQ(j["value"], "1.2337005501361698274");
    EXPECT_EQ(run("zeta --n 1").code, 2);
    EXPECT_EQ(run("zeta --n 3 --m 0").code, 2);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ExpandClassicalExamples)
{
    const CliRun mu = run("expand --function 'exp(-z)' --order 6 --signs minus --json");
    ASSERT_EQ(mu.code, 0);
    const auto jm = nlohmann::json::parse(mu.out);
    const std::vector<std::string> expected_mu{"1", "-1/2", "-1/3", "0", "-1/5", "1/6"};
    for (std::size_t i = 0; i < expected_mu.size(); ++i) {
        EXPECT_EQ(jm["exponents"][i]["alpha"], expected_mu[i]);
    }
    const auto jp = nlohmann::json::parse(run("expand --function 'exp(-1*z*(1-z)^-1)' --order 4 --json").out);
    const std::vector<std::string> expected_phi{"1", "1/2", "2/3", "1/2"};
    for (std::size_t i = 0; i < expected_phi.size(); ++i) {
        EXPECT_EQ(jp["exponents"][i]["alpha"], expected_phi[i]);
    }
}

TEST(Cli, LowDigitRunAgreesWithFiftyDigits)
{
    const auto five = nlohmann::json::parse(run("eval --builtin ramanujan-a1 --digits 5 --json").out);
    const std::string v = five["value"];
    EXPECT_EQ(v.substr(0, 7), std::string("0.54685595528047446684551710099076178991021048592974").substr(0, 7));
}

TEST(Cli, PartialZetaTailBound)
{
    const auto j = nlohmann::json::parse(run("zeta --m 7 --n 3 --digits 30 --json").out);
    const std::string v = j["value"];
    EXPECT_EQ(v.substr(0, 10), "1.00060388");
}
