#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
    int exit_code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(JACSPLIT_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string error_code(const Run& r) { return nlohmann::json::parse(r.out)["error"]["code"]; }

}  // namespace

TEST(Cli, SearchJsonAndCsvAgree) {
    const auto j = run("search --p 3 --i 1 --bound 20 --format json");
    const auto c = run("search --p 3 --i 1 --bound 20 --format csv");
    ASSERT_EQ(j.exit_code, 0);
    ASSERT_EQ(c.exit_code, 0);
    const auto rows = nlohmann::json::parse(j.out)["results"]["rows"];
    std::istringstream lines(c.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "ell,base,order,group_order");
    std::size_t k = 0;
    while (std::getline(lines, line)) {
        ASSERT_LT(k, rows.size());
        const auto& row = rows[k++];
        EXPECT_EQ(line, std::to_string(row["ell"].get<int>()) + "," + std::to_string(row["base"].get<int>()) + "," +
                            std::to_string(row["order"].get<int>()) + "," +
                            std::to_string(row["group_order"].get<int>()));
    }
    EXPECT_EQ(k, rows.size());
    EXPECT_EQ(rows[0]["ell"], 5);
    EXPECT_EQ(rows[1]["ell"], 7);
    EXPECT_EQ(rows[2]["ell"], 11);
}

TEST(Cli, SearchBelowFiveIsEmpty) {
    const auto r = run("search --p 3 --i 1 --bound 4");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["results"]["rows"].empty());
}

TEST(Cli, DecomposePasses) {
    const auto r = run("decompose --p 3 --ell 7 --i 2 --skip-ct");
    EXPECT_EQ(r.exit_code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    for (const auto& c : j["checks"]) {
        EXPECT_TRUE(c.contains("name") && c.contains("claim_ref") && c.contains("pass") && c.contains("data"));
    }
    EXPECT_EQ(run("decompose --p 3 --ell 7 --i 2 --skip-ct").out, r.out);
}

TEST(Cli, UsageErrors) {
    const auto i1 = run("decompose --p 3 --ell 7 --i 1");
    EXPECT_EQ(i1.exit_code, 2);
    EXPECT_EQ(error_code(i1), "usage.i");
    const auto t2 = run("decompose --p 3 --ell 7 --i 2 --t 2");
    EXPECT_EQ(t2.exit_code, 2);
    EXPECT_EQ(error_code(t2), "precondition.t_pm2");
    const auto r4 = run("char2 --r 4");
    EXPECT_EQ(r4.exit_code, 2);
    EXPECT_EQ(error_code(r4), "usage.r");
    const auto bad = run("decompose --p 3 --ell 7 --i 2 --t x");
    EXPECT_EQ(bad.exit_code, 2);
    EXPECT_EQ(error_code(bad), "usage.t");
    const auto guard = run("search --guard 10");
    EXPECT_EQ(guard.exit_code, 2);
    EXPECT_EQ(error_code(guard), "usage.guard");
    EXPECT_EQ(run("nonsense").exit_code, 2);
}

TEST(Cli, GuardFromEnvironment) {
    const auto r = run("zeta --p 3 --ell 7 --i 2 --t 0,1 --curve D");
    EXPECT_EQ(r.exit_code, 0);
    const std::string cmd = "JACSPLIT_GUARD=2048 " + std::string(JACSPLIT_CLI) + " zeta --p 3 --ell 7 --i 2 --t 0,1 --curve D 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
    const int status = pclose(pipe);
    EXPECT_EQ(WEXITSTATUS(status), 2);
    EXPECT_EQ(nlohmann::json::parse(out)["error"]["code"], "guard_exceeded");
}

TEST(Cli, Char2Reports) {
    const auto r3 = run("char2 --r 3");
    EXPECT_EQ(r3.exit_code, 0);
    const auto j3 = nlohmann::json::parse(r3.out);
    EXPECT_EQ(j3["results"]["genus_m"], 3);
    EXPECT_EQ(j3["results"]["genus_one_lines"], 3);
    const auto r5 = nlohmann::json::parse(run("char2 --r 5").out);
    EXPECT_EQ(r5["results"]["genus_m"], 15);
    EXPECT_TRUE(r5["pass"].get<bool>());
}

TEST(Cli, OtherSubcommands) {
    const auto o = run("ordinary --p 3 --ell 5 --i 2 --t 0,1 --format text");
    EXPECT_EQ(o.exit_code, 0);
    EXPECT_NE(o.out.find("C_t is ordinary"), std::string::npos);
    const auto tw = nlohmann::json::parse(run("twist --p 3 --ell 7 --i 2 --context closure").out);
    EXPECT_EQ(tw["results"]["rank"]["predicted_rank"], 6);
    EXPECT_EQ(tw["results"]["rank"]["context"], "algebraic_closure");
    const auto z = nlohmann::json::parse(run("zeta --p 3 --ell 7 --i 2 --t 0,1 --curve D").out);
    EXPECT_EQ(z["results"]["counts"][0], 10);
}

TEST(Cli, OutputFile) {
    const std::string path = std::string(JACSPLIT_TMPDIR) + "/search.csv";
    EXPECT_EQ(run("search --p 3 --i 1 --bound 20 --format csv --out " + path).exit_code, 0);
    FILE* f = std::fopen(path.c_str(), "r");
    ASSERT_NE(f, nullptr);
    std::array<char, 64> buf{};
    ASSERT_NE(fgets(buf.data(), buf.size(), f), nullptr);
    std::fclose(f);
    EXPECT_EQ(std::string(buf.data()), "ell,base,order,group_order\n");
}
