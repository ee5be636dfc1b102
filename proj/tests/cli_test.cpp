#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(BESSELPROB_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(CliVerify, LommelDefaultsPass) {
    const auto r = run("verify lommel");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["rows"].size(), 25u);
}

TEST(CliVerify, LommelDomainAndTolerance) {
    EXPECT_EQ(run("verify lommel --alpha-list -0.6").code, 2);
    EXPECT_EQ(run("verify lommel --tol 1e-30").code, 1);
    const auto r = run("verify lommel --alpha-list 0.5 --t-list 3.141592653589793");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(json::parse(r.out)["rows"][0]["lhs"].get<double>(), 0.0, 1e-12);
}

TEST(CliVerify, WeberSchafheitlin) {
    auto r = run("verify ws");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["rows"].size(), 12u);
    EXPECT_EQ(run("verify ws --s-fractions 0").code, 2);
    r = run("verify ws --alpha-list 0.5 --s-fractions 0.25");
    ASSERT_EQ(r.code, 0);
    const auto row = json::parse(r.out)["rows"][0];
    EXPECT_DOUBLE_EQ(row["s"].get<double>(), 0.25);
    EXPECT_LE(row["rel_err"].get<double>(), 1e-6);
}

TEST(CliVerify, Appendix) {
    auto r = run("verify appendix --which all");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["fresnel"]["rows"].size(), 9u);
    EXPECT_EQ(j["selberg"]["rows"].size(), 3u);
    EXPECT_EQ(run("verify appendix --which fresnel").code, 0);
    EXPECT_EQ(run("verify appendix --which selberg").code, 0);
    EXPECT_EQ(run("verify appendix --which nothing").code, 2);
}

TEST(CliVandantzig, PairPasses) {
    for (const char* a : {"0", "0.5", "1"}) {
        const auto r = run(std::string("vandantzig pair --mc 20000 --alpha ") + a);
        EXPECT_EQ(r.code, 0) << a;
        EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>());
    }
    EXPECT_EQ(run("vandantzig pair --alpha -0.7").code, 2);
}

TEST(CliGammatype, ExistsExitCodes) {
    auto r = run("gammatype exists --a 1 --b 1 --c 3 --d 1.5");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["verdict"]["reason"], "Prop2a");

    r = run(R"(gammatype exists --spec '{"a":[2,"16/5","17/5"],"c":["11/5","12/5",4]}')");
    EXPECT_EQ(r.code, 3);
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["atom_at_one"].get<double>(), 150.0 / 132.0, 1e-12);
    EXPECT_EQ(j["verdict"]["reason"], "AtomExceedsOne");

    r = run("gammatype exists --a 1 --b 1 --c 2 --d 2");
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(json::parse(r.out)["verdict"]["witness"].is_number());

    r = run(R"(gammatype exists --spec '{"a":[2,"16/5","17/5"],"c":["11/5","12/5","4.02"]}')");
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(json::parse(r.out)["verdict"]["state"], "Indeterminate");

    EXPECT_EQ(run(R"(gammatype exists --spec '{"a":[1],"e":[2]}')").code, 2);
    EXPECT_EQ(run(R"(gammatype exists --spec '{"a":[-1]}')").code, 2);
    EXPECT_EQ(run("gammatype exists --a 1 --b 1 --c 3").code, 2);
    EXPECT_EQ(run("gammatype exists --spec '{' ").code, 2);
}

TEST(CliGammatype, BoundaryCsv) {
    const auto r = run("gammatype boundary --a 1 --b 1 --u-from 2.5 --u-to 4 --u-step 0.5");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "u,f_value,bracket_width,method");
    int rows = 0;
    while (std::getline(in, line)) {
        double u = 0.0, f = 0.0, w = 0.0;
        char method[32] = {0};
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%31s", &u, &f, &w, method), 4);
        if (u <= 3.0) {
            EXPECT_DOUBLE_EQ(f, 4.5 - u);
            EXPECT_STREQ(method, "LinearSegment");
        } else {
            EXPECT_STREQ(method, "Bisection");
            EXPECT_LE(w, 1e-6);
        }
        ++rows;
    }
    EXPECT_EQ(rows, 4);
}

TEST(CliGammatype, DensityQuasiLevyConvexity) {
    auto r = run(R"(gammatype density --spec '{"a":[1,3],"c":[2,2]}' --x 0.5,2)");
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_NEAR(j["rows"][0]["density"].get<double>(), 0.5, 1e-6);
    EXPECT_NEAR(j["rows"][1]["density"].get<double>(), 0.0, 1e-6);

    r = run("gammatype quasilevy --a 1 --b 1");
    ASSERT_EQ(r.code, 0);
    j = json::parse(r.out);
    EXPECT_EQ(j["sign_changes"], 1);
    EXPECT_LT(j["root"].get<double>(), 0.0);

    r = run("gammatype convexity --a 0.5 --b 0.5 --u-list 1.25,1.5,2,3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out)["monotonicity_violations"], 0);
}

TEST(CliSample, RatioProduct) {
    const auto r = run(R"(sample ratio-product --spec '{"a":[1]}' --count 20000 --seed 5)");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "index,value");
    double sum = 0.0;
    int n = 0;
    while (std::getline(in, line)) {
        sum += std::stod(line.substr(line.find(',') + 1));
        ++n;
    }
    EXPECT_EQ(n, 20000);
    EXPECT_NEAR(sum / n, 1.0, 3.0 / std::sqrt(20000.0));
    EXPECT_EQ(run(R"(sample ratio-product --spec '{"a":[1,2],"c":[2,3]}')").code, 2);
}

TEST(CliUsage, BadInvocations) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("verify").code, 2);
    EXPECT_EQ(run("verify lommel --no-such-flag").code, 2);
    EXPECT_EQ(run("--highprec-digits 10 verify lommel").code, 2);
}

TEST(CliDeterminism, SameSeedSameBytes) {
    for (const std::string cmd :
         {"vandantzig pair --alpha 1 --mc 20000 --seed 7", "vandantzig sample --alpha 0.5 --count 500 --seed 3",
          R"(sample ratio-product --spec '{"a":[1,2],"b":[2],"c":[3]}' --count 500 --seed 11)",
          "gammatype convexity --a 1 --b 1 --u-list 3.5,5,8", "verify ws --alpha-list 1"}) {
        const auto one = run(cmd + " --threads 1");
        const auto again = run(cmd + " --threads 1");
        const auto many = run(cmd + " --threads 4");
        EXPECT_EQ(one.code, 0) << cmd;
        EXPECT_FALSE(one.out.empty());
        EXPECT_EQ(one.out, again.out) << cmd;
        EXPECT_EQ(one.out, many.out) << cmd;
    }
    EXPECT_NE(run("vandantzig sample --count 50 --seed 1").out, run("vandantzig sample --count 50 --seed 2").out);
}

TEST(CliManifest, WrittenNextToOutput) {
    const auto dir = std::filesystem::temp_directory_path() / ("besselprob_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto out1 = dir / "a.json", out2 = dir / "b.json";
    ASSERT_EQ(run("verify appendix --seed 9 --out " + out1.string()).code, 0);
    ASSERT_EQ(run("verify appendix --seed 9 --threads 2 --out " + out2.string()).code, 0);
    EXPECT_EQ(slurp(out1), slurp(out2));
    const auto m1 = json::parse(slurp(dir / "a.json.manifest.json"));
    const auto m2 = json::parse(slurp(dir / "b.json.manifest.json"));
    EXPECT_EQ(m1["output_sha256"], m2["output_sha256"]);
    EXPECT_EQ(m1["output_sha256"].get<std::string>().size(), 64u);
    EXPECT_EQ(m1["seed"], 9);
    for (const char* k : {"command_line", "precision", "versions", "wall_time_s"}) EXPECT_TRUE(m1.contains(k)) << k;
    std::filesystem::remove_all(dir);
}
