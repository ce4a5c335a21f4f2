#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "mfsb/io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(MFSB_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) {
        r.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('\n', pos);
        if (next == std::string::npos) next = s.size();
        if (next > pos) lines.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t next = line.find(',', pos);
        if (next == std::string::npos) next = line.size();
        cells.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return cells;
}

} // namespace

TEST_CASE("tree emits the order-2 partition") {
    const auto r = run("tree --depth 2");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5); // header + 4 rows
    CHECK(lines[0] == "index,left_num,left_den,right_num,right_den");
    CHECK(lines[1] == "1,0,1,1,3");
    CHECK(lines[4] == "4,2,3,1,1");
}

TEST_CASE("tree depth zero is the unit interval") {
    const auto r = run("tree --depth 0");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "1,0,1,1,1");
}

TEST_CASE("tree re-parses losslessly and sums to one") {
    const auto r = run("tree --depth 10");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 1025);
    mfsb::Fraction sum(0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 5);
        const mfsb::Fraction left{mpz_class(cells[1], 10), mpz_class(cells[2], 10)};
        const mfsb::Fraction right{mpz_class(cells[3], 10), mpz_class(cells[4], 10)};
        sum = sum + (right - left);
    }
    CHECK(sum == mfsb::Fraction(1));
}

TEST_CASE("tree depth cap exits with the resource code") {
    const auto r = run("tree --depth 40");
    CHECK(r.exit_code == 3);
}

TEST_CASE("pressure operator-eig at the fixed point") {
    const auto r = run("pressure --method operator-eig --theta-min 1 --theta-max 1 --theta-steps 1");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "theta,value,method,n_or_degree,error_bound");
    const auto cells = split_csv(lines[1]);
    CHECK(std::abs(std::stod(cells[1])) < 1e-10);
    CHECK(cells[2] == "operator-eig");
}

TEST_CASE("pressure induced-root curve is convex and non-increasing") {
    const auto r = run("pressure --method induced-root --theta-min -10 --theta-max 0.99 --theta-steps 41");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 42);
    std::vector<double> theta, value;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        theta.push_back(std::stod(cells[0]));
        value.push_back(std::stod(cells[1]));
    }
    for (std::size_t i = 0; i + 1 < value.size(); ++i) CHECK(value[i + 1] <= value[i] + 1e-9);
    for (std::size_t i = 1; i + 1 < value.size(); ++i) {
        CHECK(value[i] <= 0.5 * (value[i - 1] + value[i + 1]) + 1e-9);
    }
}

TEST_CASE("rates on a terminal rational") {
    const auto r = run("rates --rational 2/5");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["terminal"] == true);
    CHECK(j["ell"]["l5"].is_null());
    CHECK(j["ell"]["l6"].is_null());
    CHECK(j["proxies"]["tau_k"] == 4);
}

TEST_CASE("rates golden word approaches two log gamma") {
    const auto r = run("rates --cf 1,1,1 --repeat 40");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double l3 = j["ell"]["l3"].get<double>();
    CHECK(std::abs(l3 - 0.9624236501) < 0.01);
}

TEST_CASE("rates usage error") {
    const auto r = run("rates");
    CHECK(r.exit_code == 2);
}

TEST_CASE("montecarlo csv emits the header and reproduces") {
    const auto a = run("rates --montecarlo --samples 60 --depth 120 --seed 7");
    CHECK(a.exit_code == 0);
    const auto lines = lines_of(a.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "seed,samples,depth,mean,stderr");
    const auto b = run("rates --montecarlo --samples 60 --depth 120 --seed 7");
    CHECK(b.out == a.out); // bitwise identical emission
}

TEST_CASE("verify rejects unknown claims") {
    const auto r = run("verify --claims no-such-claim");
    CHECK(r.exit_code == 2);
}

TEST_CASE("verify runs a selected exact claim") {
    const auto r = run("verify --claims tree-symmetry --budget quick");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS] tree-symmetry") != std::string::npos);
}

TEST_CASE("word serialization round trips") {
    const mfsb::CFWord w = mfsb::CFWord::parse("3,1,4,2");
    const auto j = mfsb::io::cf_word_json(w);
    CHECK(j.dump() == "[3,1,4,2]");
    CHECK(mfsb::io::cf_word_from_json(j) == w);
    const mfsb::RunLengthWord r(mfsb::Letter::B, {2, 5, 1});
    const auto jr = mfsb::io::runlength_json(r);
    CHECK(jr["lead"] == "B");
    CHECK(jr["blocks"].dump() == "[2,5,1]");
    CHECK(mfsb::io::runlength_from_json(jr) == r);
}

TEST_CASE("spectrum farey endpoints") {
    const auto r = run("spectrum --kind farey-tau --alpha-steps 12 --format csv");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 13);
    CHECK(lines[0] == "alpha,tau,t_of_alpha,alpha_star,alpha_sharp,status");
    const auto first = split_csv(lines[1]);
    CHECK(std::stod(first[1]) == 1.0);
    CHECK(first[4] == "inf");
    const auto last = split_csv(lines[12]);
    CHECK(std::stod(last[1]) == 0.0);
}
