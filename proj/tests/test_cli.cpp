#include "app/artifact.hpp"
#include "app/commands.hpp"
#include "app/config.hpp"
#include "app/reproduce.hpp"
#include "test_util.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace dks;
using namespace dks::app;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("DKS_CLI");
    return p ? p : "";
}

Outcome run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + cli_path() + "' " + args + " 2>/dev/null";
    Outcome r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        if (cli_path().empty())
            GTEST_SKIP() << "DKS_CLI not set";
        dir_ = fs::temp_directory_path() /
               ("dks_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override {
        if (!dir_.empty())
            fs::remove_all(dir_);
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

double csv_value(const std::string& csv, const std::string& column, std::size_t row = 0) {
    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> header;
    std::size_t r = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (header.empty()) {
            header = cells;
            continue;
        }
        if (r++ == row)
            for (std::size_t i = 0; i < header.size(); ++i)
                if (header[i] == column)
                    return std::stod(cells.at(i));
    }
    ADD_FAILURE() << "column " << column << " row " << row << " not found";
    return std::nan("");
}

} // namespace

TEST_F(Cli, FanoAtZeroLengthIsOne) {
    const Outcome r = run("fano 10 0 --beta-re 0.3 --beta-im -0.2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(csv_value(r.out, "fano"), 1.0);
    const Outcome z = run("fano 10 0.0218");
    ASSERT_EQ(z.code, 0);
    EXPECT_EQ(csv_value(z.out, "fano"), 1.0);
}

TEST_F(Cli, FanoAtOptimalShift) {
    const Optimum o = optimize_beta({10.0, 0.0218});
    char args[256];
    std::snprintf(args, sizeof args, "fano --alpha 10 --kz 0.0218 --beta-re %.17g --beta-im %.17g", o.beta_opt.real(),
                  o.beta_opt.imag());
    const Outcome r = run(args);
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(csv_value(r.out, "fano"), 0.0203, 0.0203 * 0.02);
}

TEST_F(Cli, OptimizeLength) {
    const Outcome r = run("optimize 100");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(csv_value(r.out, "kz"), 0.00102, 0.00102 * 0.02);
    EXPECT_NEAR(csv_value(r.out, "fano_min"), 0.000892, 0.000892 * 0.02);
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("fano 10 -1").code, kExitValidation);
    EXPECT_EQ(run("optimize 1").code, kExitValidation);
    EXPECT_EQ(run("transmogrify 3").code, kExitValidation);
    EXPECT_EQ(run("fano --alpha").code, kExitValidation);
    EXPECT_EQ(run("optimize 10 --kz 0.0218 --max-iterations 2").code, kExitConvergence);
    EXPECT_EQ(run("design 1e-3 1e8 si3n4 --target -60").code, kExitValidation);
    EXPECT_EQ(run("--version").code, kExitOk);
}

TEST_F(Cli, ToleranceMissStillWritesArtifact) {
    const Outcome r = run("reproduce table3 --out '" + path("t3.csv") + "'");
    EXPECT_EQ(r.code, kExitToleranceMiss);
    EXPECT_NE(r.out.find("MISS"), std::string::npos);
    const std::string body = slurp(path("t3.csv"));
    EXPECT_NE(body.find("# tool:"), std::string::npos);
}

TEST_F(Cli, ArtifactsAreDeterministic) {
    const std::string sweep = "sweep-length 30 --kz-min 0 --kz-max 0.01 --kz-points 9";
    for (const std::string fmt : {"csv", "json"}) {
        const std::string args = sweep + " --format " + fmt;
        ASSERT_EQ(run(args + " --out '" + path("a." + fmt) + "'").code, 0);
        ASSERT_EQ(run(args + " --out '" + path("b." + fmt) + "'").code, 0);
        const std::string a = slurp(path("a." + fmt));
        EXPECT_FALSE(a.empty());
        EXPECT_EQ(a, slurp(path("b." + fmt)));
    }
    const Outcome seq = run(sweep);
    const Outcome par = run(sweep + " --parallel 3");
    ASSERT_EQ(seq.code, 0);
    ASSERT_EQ(par.code, 0);
    for (std::size_t row = 0; row < 9; ++row)
        EXPECT_NEAR(csv_value(seq.out, "fano_min", row), csv_value(par.out, "fano_min", row), 1e-12);
}

TEST_F(Cli, RerunReproducesArtifact) {
    const std::vector<std::string> commands = {
        "fano 10 0.0218 --beta-re 0.01 --beta-im 0.12",
        "optimize 30 --kz 0.005 --format json",
        "photon-dist 5 0.01 --optimal-beta",
        "wigner 2 0.05 --resolution 21 --window mean --half-width 4 --format json",
        "design 0.1 1e8 si3n4 --target -5",
        "reproduce table2",
    };
    int i = 0;
    for (const auto& cmd : commands) {
        const std::string a = path("run" + std::to_string(i) + ".art");
        const std::string b = path("rerun" + std::to_string(i) + ".art");
        ++i;
        ASSERT_EQ(run(cmd + " --out '" + a + "'").code, 0) << cmd;
        ASSERT_EQ(run("rerun '" + a + "' --out '" + b + "'").code, 0) << cmd;
        EXPECT_EQ(slurp(a), slurp(b)) << cmd;
        EXPECT_EQ(run("rerun '" + a + "'").out, slurp(a)) << cmd;
    }
}

TEST_F(Cli, ConfigFileWithOverrides) {
    {
        std::ofstream f(path("run.cfg"));
        f << "# scenario\nalpha = 10\nkz = 0.0218\nformat = json\n";
    }
    const Outcome r = run("optimize --config '" + path("run.cfg") + "'");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_NEAR(j["data"][0]["fano_min"].get<double>(), 0.0203, 0.0203 * 0.02);

    const Outcome o = run("optimize --config '" + path("run.cfg") + "' --kz 0 --format csv");
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(csv_value(o.out, "fano_min"), 1.0);
    EXPECT_NE(o.out.find("# config: kz = 0"), std::string::npos);
}

TEST_F(Cli, EmbeddedMetadata) {
    const Outcome r = run("fano 3 0.01 --beta-re 0.1 --format json");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["meta"]["tool"], "dks");
    EXPECT_EQ(j["meta"]["command"], "fano");
    EXPECT_TRUE(j["meta"].contains("version"));
    EXPECT_TRUE(j["meta"].contains("kernel_backend"));
    EXPECT_EQ(parse_config(embedded_config(r.out)).alpha, 3.0);
}

TEST_F(Cli, ScalarOverrideIsRecorded) {
    const Outcome r = run("fano 3 0.01 --beta-re 0.1 --format json", "DKS_SIMD=scalar");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["meta"]["kernel_backend"], "scalar");
    const Outcome a = run("optimize 10 --kz 0.0218", "DKS_SIMD=scalar");
    const Outcome b = run("optimize 10 --kz 0.0218", "DKS_SIMD=avx2");
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_NEAR(csv_value(a.out, "fano_min"), csv_value(b.out, "fano_min"), 1e-12);
}

TEST_F(Cli, Design) {
    const Outcome r = run("design 0.1 1e8 si3n4");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("z_opt"), std::string::npos);
    std::istringstream in(r.out);
    std::string line;
    double z = 0.0, floor_db = 0.0;
    while (std::getline(in, line)) {
        if (line.rfind("z_opt,", 0) == 0)
            z = std::stod(line.substr(6, line.find(',', 6) - 6));
        if (line.rfind("fano_floor_db,", 0) == 0)
            floor_db = std::stod(line.substr(14, line.find(',', 14) - 14));
    }
    EXPECT_NEAR(z, 5.6e3, 5.6e3 * 0.01);
    EXPECT_NEAR(floor_db, -70.0, 0.5);
}

TEST_F(Cli, WignerGridArtifact) {
    const Outcome r = run("wigner 10 0.0218 --optimal-beta --format json --parallel 4");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["data"]["x"].size(), 201u);
    EXPECT_EQ(j["data"]["w"].size(), 201u);
    EXPECT_NEAR(j["meta"]["integral"].get<double>(), 1.0, 1e-3);
    EXPECT_LE(j["meta"]["max_abs"].get<double>(), 2.0 / M_PI + 1e-9);
}

TEST(Reproduce, TableOneLayout) {
    RunConfig cfg;
    cfg.command = "reproduce";
    cfg.target = "table1";
    const Reproduction r = reproduce("table1", cfg);
    EXPECT_FALSE(r.checks.empty());
    std::size_t fano_checks = 0;
    for (const Check& c : r.checks)
        if (c.name.rfind("F_min ", 0) == 0)
            ++fano_checks;
    EXPECT_GE(fano_checks, 4u);
    const CommandResult res = run_command(cfg);
    EXPECT_EQ(res.exit_code == kExitOk, r.passed());
    EXPECT_EQ(res.artifact.meta["all_pass"].get<bool>(), r.passed());
}

TEST(Reproduce, UnknownTarget) {
    RunConfig cfg;
    cfg.command = "reproduce";
    cfg.target = "table9";
    EXPECT_DKS_ERROR(run_command(cfg), ErrorCode::InvalidArgument);
}
