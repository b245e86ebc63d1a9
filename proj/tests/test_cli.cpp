#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(TAUKAPPA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 512> buffer;
    while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe)) result.out.append(buffer.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

TEST_CASE("cli value commands") {
    CHECK(run_cli("tau --genus 1 --d 1").out == "1/24\n");
    CHECK(run_cli("tau --d 0,0,0,1").out == "1\n");
    CHECK(run_cli("w --profile 2:1 --n 4 --d 0,0,0,0").out == "9\n");
    CHECK(run_cli("kappa --genus 1 --psi 0,0 --kappa 1,1").out == "1/8\n");
    CHECK(run_cli("delta --genus 0 --n 4").out == "3\n");
    CHECK(run_cli("ribbon count --perimeters 1,10,100,1000").out == "9\n");
    const RunResult xtable = run_cli("xtable --codim 2");
    CHECK(xtable.exit_code == 0);
    CHECK(xtable.out.find("72*k1^2 - 348*k2") != std::string::npos);
    CHECK(xtable.out.find("120*k2") != std::string::npos);
    const RunResult graph = run_cli("graph --text 'v:(0,)|e:(0,0);e:(0,0)' --genus 2 --n 0");
    CHECK(graph.exit_code == 0);
    CHECK(graph.out == "8\n");
}

TEST_CASE("cli json envelope round-trips") {
    for (const char* args : {"--json tau --genus 1 --d 1", "--json w --profile 2:1 --n 4 --d 0,0,0,0",
                             "--json kappa --genus 1 --psi 0,0 --kappa 2"}) {
        const RunResult result = run_cli(args);
        REQUIRE(result.exit_code == 0);
        std::string line = result.out;
        REQUIRE(!line.empty());
        line.pop_back();  // trailing newline
        const auto parsed = nlohmann::ordered_json::parse(line);
        CHECK(parsed.dump() == line);  // byte-identical re-render
        CHECK(parsed.contains("op"));
        CHECK(parsed.contains("input"));
        CHECK(parsed["value"].is_string());
    }
    const RunResult tau = run_cli("--json tau --genus 1 --d 1");
    CHECK(nlohmann::ordered_json::parse(tau.out)["value"] == "1/24");
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("tau --genus 1 --d 1").exit_code == 0);
    CHECK(run_cli("w --profile 9:1 --n 4 --d 0,0,0,0").exit_code == 1);  // unsupported profile
    CHECK(run_cli("w --profile 2:1 --n 2 --d 1,1").exit_code == 1);      // inadmissible degree
    CHECK(run_cli("frobnicate").exit_code == 2);                         // usage error
    CHECK(run_cli("tau").exit_code == 2);                                // missing required option
}

TEST_CASE("cli verify suites") {
    CHECK(run_cli("verify --suite lemma2").exit_code == 0);
    const RunResult m04 = run_cli("verify --suite m04");
    CHECK(m04.exit_code == 0);
    CHECK(m04.out.find("PASS") != std::string::npos);
    CHECK(m04.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli cache round trip") {
    const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                             "/taukappa_cache_test.txt";
    std::remove(path.c_str());
    const std::string cmd = "--cache " + path + " tau --genus 2 --d 4";
    const RunResult cold = run_cli(cmd);
    CHECK(cold.exit_code == 0);
    CHECK(cold.out == "1/1152\n");
    std::ifstream saved(path);
    REQUIRE(saved.good());
    std::string header;
    std::getline(saved, header);
    CHECK(header == "taukappa-cache v1");
    const RunResult warm = run_cli(cmd);
    CHECK(warm.exit_code == 0);
    CHECK(warm.out == cold.out);
    std::remove(path.c_str());
}
