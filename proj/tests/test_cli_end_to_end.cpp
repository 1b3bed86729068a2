#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef ENTPOT_CLI_PATH
#error "ENTPOT_CLI_PATH must point at the built binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(ENTPOT_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

TEST_CASE("analyze: fock 1 end to end") {
    const auto run = run_cli("analyze --family fock --param m=1");
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.output);
    CHECK(report["npt"]["verdict"] == "npt");
    CHECK(report["npt"]["method"] == "witness_2x2");
    CHECK(report["npt"]["log_negativity"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(report["theorem_consistency"]["thm1_chain_ok"] == true);
}

TEST_CASE("analyze: higher-order nonclassicality without antibunching") {
    const auto run = run_cli("analyze --family vacuum-two-mixture --param lambda=0.25");
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.output);
    CHECK(report["pnd_summary"]["antibunching_value"].get<double>() > 0.0);
    CHECK(report["npt"]["method"] == "submatrix_H_tilde");
    CHECK(report["npt"]["detecting_order"] == 1);
    CHECK(report["theorem_consistency"]["thm2_chain_ok"] == true);
}

TEST_CASE("analyze: classical input exits zero with no detection") {
    const auto run = run_cli("analyze --family poisson --param mu=1");
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.output);
    CHECK(report["classicality"]["verdict"] == "classical_up_to_order");
    CHECK(report["npt"]["verdict"] == "no_detection");
}

TEST_CASE("analyze: csv summary and --out") {
    const auto out_path = std::filesystem::temp_directory_path() / "entpot_cli_out.csv";
    std::filesystem::remove(out_path);
    const auto run = run_cli("analyze --family fock --param m=1 --format csv-summary --out " +
                             out_path.string());
    REQUIRE(run.exit_code == 0);
    CHECK(run.output.empty());
    std::ifstream in(out_path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "input,mean,antibunching_value,classical,detecting_kind,detecting_order,"
          "min_pt_eigenvalue,log_negativity");
}

TEST_CASE("analyze: file input") {
    const auto path = std::filesystem::temp_directory_path() / "entpot_cli_pnd.json";
    {
        std::ofstream out(path);
        out << R"({"probs": [0.75, 0, 0.25], "tail_bound": 0})";
    }
    const auto run = run_cli("analyze --pnd-file " + path.string());
    REQUIRE(run.exit_code == 0);
    const json report = json::parse(run.output);
    CHECK(report["input_spec"]["pnd_file"] == path.string());
    CHECK(report["npt"]["method"] == "submatrix_H_tilde");
}

TEST_CASE("exit codes distinguish usage, validation, and success") {
    CHECK(run_cli("analyze --no-such-flag").exit_code == 2);
    CHECK(run_cli("analyze").exit_code == 2);  // neither --family nor --pnd-file
    CHECK(run_cli("analyze --family fock --param m=1 --pnd-file x.json").exit_code == 2);
    CHECK(run_cli("analyze --family no-such-family --param m=1").exit_code == 2);
    CHECK(run_cli("analyze --family fock").exit_code == 2);        // missing m
    CHECK(run_cli("analyze --family fock --param m=-3").exit_code == 3);
    CHECK(run_cli("--help").exit_code == 0);

    const auto bad = std::filesystem::temp_directory_path() / "entpot_cli_bad.json";
    {
        std::ofstream out(bad);
        out << R"({"probs": [0.5, 0.6]})";
    }
    CHECK(run_cli("analyze --pnd-file " + bad.string()).exit_code == 3);
    CHECK(run_cli("analyze --pnd-file /no/such/file.json").exit_code == 3);
}

TEST_CASE("sweep: vacuum-two-mixture grid is NPT without the witness") {
    const auto run = run_cli("sweep --family vacuum-two-mixture --sweep lambda=0.05:0.5:0.05");
    REQUIRE(run.exit_code == 0);
    const auto lines = lines_of(run.output);
    REQUIRE(lines.size() == 11);  // header + 10 rows
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 8);
        CHECK(std::stod(fields[2]) >= -1e-12);         // antibunching never fires
        CHECK(std::stod(fields[6]) < -1e-10);          // yet the spectrum is negative
    }
}

TEST_CASE("sweep: binomial grid fires the witness everywhere") {
    const auto run =
        run_cli("sweep --family binomial --param M=2 --sweep eta=0.1:0.9:0.1 --jobs 2");
    REQUIRE(run.exit_code == 0);
    const auto lines = lines_of(run.output);
    REQUIRE(lines.size() == 10);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        const double eta = std::stod(fields[0]);
        const double antibunching = std::stod(fields[2]);
        CHECK(antibunching == doctest::Approx(-2.0 * eta * eta).epsilon(1e-12));
        CHECK(std::stod(fields[6]) < -1e-10);
    }
}

TEST_CASE("sweep: log negativity grows with the fock number") {
    const auto run = run_cli("sweep --family fock --sweep m=1:5:1");
    REQUIRE(run.exit_code == 0);
    const auto lines = lines_of(run.output);
    REQUIRE(lines.size() == 6);
    double prev = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const double ln = std::stod(split_csv(lines[i])[7]);
        CHECK(ln > prev);
        prev = ln;
    }
}

TEST_CASE("sweep: empty and malformed grids") {
    CHECK(run_cli("sweep --family fock --sweep m=5:1:1").exit_code == 3);
    CHECK(run_cli("sweep --family fock --sweep m=1-5").exit_code == 2);
    CHECK(run_cli("sweep --sweep m=1:5:1").exit_code == 2);  // missing family
    CHECK(run_cli("sweep --family vacuum-two-mixture --sweep lambda=0.8:1.2:0.2").exit_code ==
          3);  // out-of-range point aborts
}

TEST_CASE("identical invocations produce identical reports outside timings") {
    const auto first = run_cli("analyze --family thermal --param nbar=1");
    const auto second = run_cli("analyze --family thermal --param nbar=1");
    REQUIRE(first.exit_code == 0);
    REQUIRE(second.exit_code == 0);
    json a = json::parse(first.output);
    json b = json::parse(second.output);
    a.erase("timings");
    b.erase("timings");
    CHECK(a.dump() == b.dump());
}
