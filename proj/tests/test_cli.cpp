#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("fpcqed_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string& args) const {
        const std::string cmd = std::string(FPCQED_CLI_PATH) + " " + args + " > " + (dir_ / "stdout").string() +
                                " 2> " + (dir_ / "stderr").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    static std::string read(const std::string& file) {
        std::ifstream in(file);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrorsExitWithTwo) {
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("ldos --preset fig9"), 2);
    EXPECT_EQ(run("ldos --config " + path("missing.cfg")), 2);
    EXPECT_EQ(run("sweep --method fast"), 2);
    EXPECT_EQ(run("ldos --config " + write("bad.cfg", "colour = red\n")), 2);
    EXPECT_EQ(run("sweep --preset fig3-short --config " + write("empty.cfg", "T_points = 0\n")), 2);
    EXPECT_NE(read(path("stderr")).find("T_points"), std::string::npos);
}

TEST_F(CliTest, VersionAndHelp) {
    EXPECT_EQ(run("--version"), 0);
    EXPECT_NE(read(path("stdout")).find(FPCQED_VERSION), std::string::npos);
    EXPECT_EQ(run("--help"), 0);
}

TEST_F(CliTest, LdosWithoutMirrorsIsFlat) {
    ASSERT_EQ(run("ldos --preset fig1b --out " + path("ldos.csv")), 0);
    std::istringstream in(read(path("ldos.csv")));
    std::string line;
    int rows = 0;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) continue;
        if (!header) {
            EXPECT_EQ(line, "omega_fsr,omega_ueV,ldos_ueV");
            header = true;
            continue;
        }
        EXPECT_EQ(line.substr(line.rfind(',') + 1), "0.3");
        ++rows;
    }
    EXPECT_EQ(rows, 801);
}

TEST_F(CliTest, MetadataEchoesConfiguration) {
    ASSERT_EQ(run("ldos --preset fig1d --config " + write("c.cfg", "ldos_points = 5\nL_um = 2\n")), 0);
    const std::string out = read(path("stdout"));
    EXPECT_EQ(out.rfind(std::string("# fpcqed ") + FPCQED_VERSION + "\n", 0), 0u);
    EXPECT_NE(out.find("# command = ldos\n"), std::string::npos);
    EXPECT_NE(out.find("# name = fig1d\n"), std::string::npos);
    EXPECT_NE(out.find("# L_um = 2\n"), std::string::npos);
    EXPECT_NE(out.find("# r2 = 0.9\n"), std::string::npos);
}

TEST_F(CliTest, ParamsTable) {
    ASSERT_EQ(run("params --preset fig2 --config " + write("c.cfg", "r_min = 0.9\nr_max = 0.99\nr_points = 2\n")), 0);
    const std::string out = read(path("stdout"));
    EXPECT_NE(out.find("r,gammaB_ueV,Lc_ueV,kappa_reduced,kappa_ueV,g_ueV,g_max_ueV,kappa_max_ueV,fit_residual\n"),
              std::string::npos);
    EXPECT_NE(out.find("\n0.99,"), std::string::npos);
}

TEST_F(CliTest, NumericalFailureExitsWithOne) {
    const auto cfg = write("dark.cfg", "gammaB0_ueV = 0\ngammaRM_ueV = 0\nT_points = 2\nT_min = 0.5\n");
    EXPECT_EQ(run("sweep --preset fig3-long --method numeric --config " + cfg), 1);
    EXPECT_NE(read(path("stdout")).find("# failed T="), std::string::npos);
    EXPECT_NE(read(path("stderr")).find("failed T="), std::string::npos);
}

TEST_F(CliTest, SweepIsIndependentOfWorkerCount) {
    const auto cfg = write("s.cfg", "T_min = 0.2\nT_max = 1\nT_points = 3\n");
    ASSERT_EQ(run("sweep --preset fig3-long --method both --workers 1 --out " + path("a.csv") + " --config " + cfg), 0);
    ASSERT_EQ(run("sweep --preset fig3-long --method both --workers 3 --out " + path("b.csv") + " --config " + cfg), 0);
    const std::string a = read(path("a.csv"));
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, read(path("b.csv")));
    EXPECT_NE(a.find("r2,T,g_ueV,kappa_ueV,I_numeric,I_analytic,E_numeric,E_analytic,F,P_B,P_R\n"), std::string::npos);
}

TEST_F(CliTest, AnalyticFomPoint) {
    ASSERT_EQ(run("fom --preset fig3-short --method analytic --T 0.5"), 0);
    const std::string out = read(path("stdout"));
    EXPECT_NE(out.find("# method = analytic\n"), std::string::npos);
    EXPECT_NE(out.find(",0.5,"), std::string::npos);
    EXPECT_NE(out.find(",nan,"), std::string::npos);
}
