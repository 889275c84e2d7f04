#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct CmdResult {
    int exit_code;
    std::string out;
};

std::string binary_path() {
    const char* p = std::getenv("BTINV_BIN");
    REQUIRE_MESSAGE(p != nullptr, "BTINV_BIN must point at the btinv binary");
    return p;
}

CmdResult run(const std::string& args) {
    const std::string cmd = binary_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string chomp(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

} // namespace

TEST_CASE("seq computes sequences") {
    auto r = run("seq --stencil 1,1,1 --field gf:2 --n 9");
    CHECK(r.exit_code == 0);
    CHECK(chomp(r.out) == "101101101");

    auto runs = run("seq --stencil 1,0,1 --field rational --n 6 --format runs");
    CHECK(runs.exit_code == 0);
    CHECK(chomp(runs.out) == "0x1 1x1 0x1 1x1 0x1 1x1");

    auto naive = run("seq --stencil 1,1,1 --field gf:2 --n 9 --algo naive");
    CHECK(chomp(naive.out) == "101101101");
}

TEST_CASE("seq error paths and exit codes") {
    CHECK(run("seq --stencil 1,2 --field gf:5 --n 3").exit_code == 2);     // even stencil
    CHECK(run("seq --stencil 1,1,1 --field gf:4 --n 3").exit_code == 2);   // composite p
    CHECK(run("seq --stencil 1,1,1 --field gf:2").exit_code == 1);         // missing --n
    CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("seq json output round-trips") {
    auto r = run("seq --stencil 1,1,1 --field gf:2 --n 9 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["n"] == 9);
    CHECK(j["k"] == 1);
    CHECK(j["field"] == "gf:2");
    CHECK(j["algo"] == "sliding");
    CHECK(j["bits"] == "101101101");
    CHECK(j["singular_orders"] == nlohmann::json({2, 5, 8}));
    // k = 1: generation costs 3 mul+div per order
    const auto gen = j["ops"]["generate"];
    CHECK(gen["mul"].get<long long>() + gen["div"].get<long long>() == 27);
    CHECK(j.contains("wall_ms"));

    // stable key order
    auto keys_pos = [&](const std::string& key) { return r.out.find("\"" + key + "\""); };
    CHECK(keys_pos("n") < keys_pos("k"));
    CHECK(keys_pos("k") < keys_pos("field"));
    CHECK(keys_pos("bits") < keys_pos("singular_orders"));
    CHECK(keys_pos("ops") < keys_pos("wall_ms"));
}

TEST_CASE("stencil file input") {
    const std::string path = "cli_stencil_tmp.txt";
    {
        std::ofstream f(path);
        f << "# comment line\n1,1,1\n";
    }
    auto r = run("seq --stencil @" + path + " --field gf:2 --n 5");
    CHECK(r.exit_code == 0);
    CHECK(chomp(r.out) == "10110");
    std::remove(path.c_str());

    CHECK(run("seq --stencil @missing_file.txt --field gf:2 --n 5").exit_code == 2);
}

TEST_CASE("verify agrees and is seed-deterministic") {
    auto r = run("verify --stencil 1,1,1 --field gf:2 --n 12");
    CHECK(r.exit_code == 0);
    CHECK(chomp(r.out) == "OK (3 algorithms agree, blocks match)");

    auto a = run("verify --random 25 --k 4 --n 12 --field gf:7 --seed 42");
    auto b = run("verify --random 25 --k 4 --n 12 --field gf:7 --seed 42");
    CHECK(a.exit_code == 0);
    CHECK(chomp(a.out) == "OK 25/25");
    CHECK(a.out == b.out);
}

TEST_CASE("verify fault injection trips exit 3") {
    auto r = run("verify --stencil 1,1,1 --field gf:2 --n 12 --inject-fault");
    CHECK(r.exit_code == 3);
}

TEST_CASE("bench emits csv with counts") {
    auto r = run("bench --k 1 --n 1000 --field gf:7 --algo sliding,naive --csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "k,n,algo,wall_ms,gen_mul,gen_div,gen_muldiv,elim_mul,predicted_muldiv");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) rows++;
    CHECK(rows == 2);
    // k=1 sliding: generate mul+div = 3n
    CHECK(r.out.find(",3000,") != std::string::npos);
}
