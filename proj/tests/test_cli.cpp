#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "oracles.hpp"

namespace texdecomp {
namespace {

namespace fs = std::filesystem;

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "texdecomp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("texdecomp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write_synthetic(std::size_t side) const {
        SyntheticSpec spec;
        spec.height = spec.width = side;
        const std::string p = path("input.pgm");
        write_file(p, write_pgm(generate_synthetic(spec).f));
        return p;
    }

    fs::path dir_;
};

TEST_F(CliTest, SynthIsDeterministic) {
    ASSERT_EQ(run_cli({"synth", path("a")}).code, 0);
    ASSERT_EQ(run_cli({"synth", path("b")}).code, 0);
    EXPECT_EQ(read_file(path("a.pgm")), read_file(path("b.pgm")));
    EXPECT_EQ(read_file(path("a_texture.f64")), read_file(path("b_texture.f64")));
    const ScalarField f = read_pgm(read_file(path("a.pgm")));
    EXPECT_EQ(f.height(), 64u);
    EXPECT_EQ(f.width(), 64u);
}

TEST_F(CliTest, DecomposeWritesFourFilesAndStatsLine) {
    const std::string input = write_synthetic(16);
    for (const std::string method : {"bregman", "chambolle"}) {
        const std::string prefix = path("out_" + method);
        const auto r = run_cli({"decompose", "--method", method, "--lambda", "1000", "--mu", "1000", input, prefix});
        EXPECT_TRUE(r.code == cli::kOk || r.code == cli::kNotConverged) << r.err;
        for (const char* suffix : {"_cartoon.pgm", "_texture.pgm", "_texture.f64", "_residual.f64"}) {
            EXPECT_TRUE(fs::exists(prefix + suffix)) << prefix + suffix;
        }
        const std::regex line("method=" + method + " outer=\\d+ inner=\\d+ time_s=[0-9.]+ converged=(true|false)\n");
        EXPECT_TRUE(std::regex_match(r.out, line)) << r.out;
        const bool converged = r.out.find("converged=true") != std::string::npos;
        EXPECT_EQ(r.code, converged ? cli::kOk : cli::kNotConverged);

        // The f64 sidecars reconstruct the input with the cartoon layer up to PGM quantization.
        const ScalarField texture = read_f64(read_file(prefix + "_texture.f64"));
        const ScalarField residual = read_f64(read_file(prefix + "_residual.f64"));
        const ScalarField cartoon = read_pgm(read_file(prefix + "_cartoon.pgm"));
        const ScalarField f = read_pgm(read_file(input));
        EXPECT_LE(norm_inf(cartoon + texture + residual - f), 0.5 / 255.0 + 1e-12);
    }
}

TEST_F(CliTest, DecomposeConvergesOnEasySettings) {
    const std::string input = write_synthetic(16);
    const auto r = run_cli({"decompose", "--lambda", "10", "--mu", "0.1", "--u-update", "gauss-seidel", input,
                            path("easy")});
    EXPECT_EQ(r.code, cli::kOk) << r.out << r.err;
}

TEST_F(CliTest, MissingInputIsAnIoError) {
    const std::string missing = path("does_not_exist.pgm");
    const auto r = run_cli({"decompose", missing, path("out")});
    EXPECT_EQ(r.code, cli::kIoError);
    EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
}

TEST_F(CliTest, MalformedInputIsAnIoError) {
    const std::string bad = path("bad.pgm");
    const std::string text = "P5 4 4 255\nxx";
    write_file(bad, Bytes(text.begin(), text.end()));
    const auto r = run_cli({"decompose", bad, path("out")});
    EXPECT_EQ(r.code, cli::kIoError);
    EXPECT_NE(r.err.find("TruncatedData"), std::string::npos) << r.err;
}

TEST_F(CliTest, InvalidFlagsExitTwo) {
    const std::string input = write_synthetic(8);
    EXPECT_EQ(run_cli({"decompose", "--method", "fista", input, path("o")}).code, cli::kBadFlags);
    EXPECT_EQ(run_cli({"decompose", "--tau", "0.2", input, path("o")}).code, cli::kBadFlags);
    EXPECT_EQ(run_cli({"decompose", "--lambda", "-1", input, path("o")}).code, cli::kBadFlags);
    EXPECT_EQ(run_cli({"decompose", "--u-update", "jacobi", input, path("o")}).code, cli::kBadFlags);
    EXPECT_EQ(run_cli({"decompose", "--threads", "-2", input, path("o")}).code, cli::kBadFlags);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kBadFlags);
    EXPECT_EQ(run_cli({}).code, cli::kBadFlags);
}

TEST_F(CliTest, BenchOnTinyInputIsFastAndWellFormed) {
    const std::string input = write_synthetic(8);
    const auto start = std::chrono::steady_clock::now();
    const auto r = run_cli({"bench", "--lambda", "1000", "--mu", "1000", "--threads", "1", input});
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(elapsed, 1.0);
    EXPECT_TRUE(r.code == cli::kOk || r.code == cli::kNotConverged) << r.err;

    std::istringstream lines(r.out);
    std::string header, row1, row2, summary;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    std::getline(lines, summary);
    EXPECT_EQ(header, "method,outer_iters,inner_iters_total,wall_time_s,final_fau_energy");
    EXPECT_EQ(row1.rfind("chambolle,", 0), 0u);
    EXPECT_EQ(row2.rfind("bregman,", 0), 0u);
    EXPECT_TRUE(std::regex_match(summary, std::regex("faster=(chambolle|bregman) .*"))) << summary;
}

TEST_F(CliTest, BenchWritesCsvFile) {
    const std::string input = write_synthetic(8);
    const auto r = run_cli({"bench", "--csv", path("b.csv"), input});
    EXPECT_TRUE(r.code == cli::kOk || r.code == cli::kNotConverged);
    const Bytes csv = read_file(path("b.csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

}  // namespace
}  // namespace texdecomp
