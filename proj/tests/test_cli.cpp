// End-to-end checks of the CLI contract: exit codes, JSON shape, determinism.
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef ZETAGAP_CLI_BIN
#error "ZETAGAP_CLI_BIN must point at the built CLI"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
    const auto out_path = dir / ("zetagap_cli_out_" + tag);
    const auto err_path = dir / ("zetagap_cli_err_" + tag);
    const std::string cmd = std::string(ZETAGAP_CLI_BIN) + " " + args + " > " +
                            out_path.string() + " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return res;
}

class TempFile {
public:
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("zetagap_cli_in_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
                 ".txt");
        std::ofstream out(path_);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST_CASE("ratio: headline polynomial") {
    const RunResult r =
        run_cli("ratio --coeffs 1000,-9332,30134,-40475,19292 --c 2.9pi");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["report"]["h"].get<double>() - 0.99725) <= 5e-5);
    CHECK(j["report"]["lambda_implied"].get<double>() == doctest::Approx(2.9).epsilon(1e-12));
    CHECK(j["config"]["subcommand"] == "ratio");
}

TEST_CASE("ratio: small c exits 0, h near zero") {
    const RunResult r = run_cli("ratio --coeffs 1 --c 0.001");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["report"]["h"].get<double>()) < 1e-8);
}

TEST_CASE("ratio: h >= 1 exits 2") {
    // the M = 2 ray stops certifying near c = 8.12, so c = 9.5 is past it
    const RunResult r = run_cli("ratio --coeffs 1 --c 9.5");
    CHECK(r.exit_code == 2);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["h"].get<double>() >= 1.0);
    CHECK_FALSE(j["report"].contains("lambda_implied"));
}

TEST_CASE("ratio: zero polynomial exits 1") {
    const RunResult r = run_cli("ratio --coeffs 0 --c 1.0");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("ratio: malformed flags exit 1") {
    CHECK(run_cli("ratio --coeffs 1,2,oops --c 1.0").exit_code == 1);
    CHECK(run_cli("ratio --coeffs 1 --c -2").exit_code == 1);
    // general theta needs the explicit flag
    CHECK(run_cli("ratio --coeffs 1 --c 1.0 --theta-inv 3").exit_code == 1);
    CHECK(run_cli("ratio --coeffs 1 --c 1.0 --theta-inv 3 --generalized-theta").exit_code == 0);
}

TEST_CASE("ratio: byte-identical output for identical flags") {
    const std::string args = "ratio --coeffs 1000,-9332,30134,-40475,19292 --c 2.9pi";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("lambda: degree 2") {
    const RunResult r = run_cli("lambda --degree 2 --tol-c 1e-4");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double lambda = j["certificate"]["lambda"].get<double>();
    CHECK(lambda > 2.0);
    CHECK(lambda < 2.9);
    CHECK(j["certificate"]["h_at_witness"].get<double>() < 1.0);
}

TEST_CASE("lambda: inadmissible degree exits 1") {
    const RunResult r = run_cli("lambda --degree 1");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("constants: identities pass") {
    const RunResult r = run_cli("constants --cutoff 2000");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["identities"]["C^2*D=A"] == "PASS");
    CHECK(j["identities"]["U1*U2*W=A"] == "PASS");
    CHECK(j["values"].size() == 6);
}

TEST_CASE("constants: tail-bound contract across cutoffs") {
    const auto lo = nlohmann::json::parse(run_cli("constants --cutoff 100").out);
    const auto hi = nlohmann::json::parse(run_cli("constants --cutoff 10000").out);
    for (std::size_t i = 0; i < 6; ++i) {
        const double vl = lo["values"][i]["value"].get<double>();
        const double vh = hi["values"][i]["value"].get<double>();
        const double tail = lo["values"][i]["tail_bound"].get<double>();
        CHECK(std::fabs(vh - vl) <= tail);
    }
}

TEST_CASE("gaps: two-line table") {
    TempFile f("14.134725\n21.022040\n");
    const RunResult r = run_cli("gaps --zeros " + f.path());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["stats"]["max_delta"].get<double>() == doctest::Approx(2.9033).epsilon(1e-4));
    CHECK(j["stats"]["count"].get<int>() == 2);
}

TEST_CASE("gaps: error paths exit 1") {
    TempFile empty("");
    CHECK(run_cli("gaps --zeros " + empty.path()).exit_code == 1);
    TempFile bad("14.134725\nxyz\n");
    const RunResult r = run_cli("gaps --zeros " + bad.path());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("gaps: histogram CSV") {
    TempFile f("14.134725\n21.022040\n25.010858\n30.424876\n");
    const auto csv_path = std::filesystem::temp_directory_path() /
                          ("zetagap_hist_" + std::to_string(::getpid()) + ".csv");
    const RunResult r = run_cli("gaps --zeros " + f.path() + " --hist-csv " + csv_path.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(csv_path);
    CHECK(csv.rfind("lo,hi,n\n", 0) == 0);
    std::filesystem::remove(csv_path);
}
