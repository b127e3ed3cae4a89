#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumnet/cli.hpp"
#include "sumnet/code_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "sumnet");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = sumnet::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sumnet_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("structure command") {
    const Run fano = run({"structure", "fano"});
    CHECK(fano.status == 0);
    CHECK(fano.out == "7 7\n1011000\n1000101\n1100010\n0101001\n0110100\n0010011\n0001110\n");
    const Run sts = run({"structure", "sts", "9", "--validate"});
    CHECK(sts.status == 0);
    CHECK(sts.out == "2-(9,3,1), b=12, \xCF\x81=4\n");
    const Run bad = run({"structure", "sts", "8"});
    CHECK(bad.status == sumnet::kExitUsage);
    CHECK(has(bad.err, "error"));
    CHECK(run({"structure", "graph", "fig4a", "--format", "blocks"}).out == "4 5\n1 2\n2 3\n3 4\n1 4\n1 3\n");
    CHECK(run({"structure", "higher", "--design", "2-4-3-2"}).out.rfind("6 4\n", 0) == 0);
    CHECK(run({"structure", "complete", "4", "--validate"}).out == "1-(4,2,3), b=6, \xCF\x81=3\n");
    CHECK(run({"structure", "star-composite"}).out.rfind("33 32\n", 0) == 0);
    CHECK(run({"structure", "transpose", "fano"}).status == 0);
    CHECK(run({"structure", "from-file", std::string(SUMNET_TEST_DATA) + "/bibd_13_4_1.txt", "--validate"}).out ==
          "2-(13,4,1), b=13, \xCF\x81=4\n");
    CHECK(run({"structure", "from-file", "/nonexistent/file"}).status == sumnet::kExitUsage);
    const Run js = run({"structure", "show", "k2", "--format", "json"});
    CHECK(nlohmann::json::parse(js.out)["blocks"] == nlohmann::json::parse("[[1,2]]"));
}

TEST_CASE("bound command") {
    const Run fig3 = run({"bound", "--graph", "fig3", "--transpose", "--char", "3"});
    CHECK(fig3.status == 0);
    CHECK(has(fig3.out, "subset 3/4 (S={1,2,3}), rank 4/5"));
    CHECK(has(fig3.out, "S''={5,6,7,8}"));
    CHECK(has(run({"bound", "--fano", "--normal", "--char", "2"}).out, "bound 1\n"));
    CHECK(has(run({"bound", "--k2", "--normal", "--char", "5"}).out, "bound 2/3\n"));
    const Run fig6 = run({"bound", "--graph", "fig6", "--transpose", "--char", "2,3,5"});
    CHECK(has(fig6.out, "char 2: bound 16/17"));
    CHECK(has(fig6.out, "char 3: bound 11/12"));
    CHECK(has(fig6.out, "char 5: bound 7/8"));
    CHECK(has(fig6.out, "subset refused"));
    CHECK(has(run({"bound", "--graph", "fig6", "--transpose", "--char", "2", "--max-subset", "1"}).out, "not exact"));
}

TEST_CASE("bound command structured output") {
    const Run r = run({"bound", "--graph", "fig3", "--transpose", "--char", "3,9", "--format", "json"});
    CHECK(r.status == 0);
    CHECK(has(r.err, "field order 9 reduced to characteristic 3"));
    std::istringstream lines(r.out);
    std::string line;
    std::vector<nlohmann::json> records;
    while (std::getline(lines, line)) records.push_back(nlohmann::json::parse(line));
    REQUIRE(records.size() == 2);
    CHECK(records[0] == records[1]);
    CHECK(records[0]["bound"] == "3/4");
    CHECK(records[0]["S"] == nlohmann::json::parse("[1,2,3]"));
    CHECK(records[0]["closure"] == nlohmann::json::parse("[5,6,7,8]"));
}

TEST_CASE("code command") {
    const Run k2 = run({"code", "--k2", "--normal", "--char", "2"});
    CHECK(k2.status == 0);
    CHECK(has(k2.out, "rate 2/3 (normal), verified"));
    CHECK(has(run({"code", "--fano", "--normal", "--char", "2"}).out, "rate 1 (rate-1), verified"));
    CHECK(has(run({"code", "--graph", "fig4a", "--transpose", "--char", "2"}).out,
              "rate 4/6 (irregular-transpose), verified"));
    CHECK(has(run({"code", "--k2", "--char", "2", "--alpha", "2"}).out, "rate 4/3"));
    const Run none = run({"code", "--structure", "design:2-4-3-2", "--transpose", "--char", "3"});
    CHECK(none.status == sumnet::kExitNoConstruction);
    CHECK(has(none.err, "no construction applies: A^T A - (A^T A)_# is not diagonal mod 3\n"));
    const Run trials = run({"code", "--sts", "9", "--char", "3", "--trials", "5", "--seed", "3"});
    CHECK(has(trials.out, "random trials=5 seed=3: ok"));
}

TEST_CASE("code export and verify") {
    const auto path = scratch("k2.code").string();
    CHECK(run({"code", "--k2", "--char", "3", "--export", path}).status == 0);
    const Run ok = run({"verify", path, "--trials", "4", "--exhaustive", "1000"});
    CHECK(ok.status == 0);
    CHECK(has(ok.out, "mode=exact-basis\nok=true\n"));
    CHECK(has(ok.out, "mode=exhaustive\nok=true\ntuples=729\n"));

    std::ifstream in(path);
    sumnet::NetworkCode code = sumnet::read_code(in);
    in.close();
    code.encoders[0](2, 4) = 0;
    const auto broken = scratch("k2_broken.code").string();
    std::ofstream(broken) << sumnet::write_code(code);
    const Run bad = run({"verify", broken});
    CHECK(bad.status == sumnet::kExitVerifyFailed);
    CHECK(has(bad.out, "ok=false"));
    CHECK(run({"verify", path, "--exhaustive", "10"}).status == sumnet::kExitUsage);
    CHECK(run({"code", "--k2", "--char", "2,3", "--export", path}).status == sumnet::kExitUsage);
    const Run piped = run({"code", "--k2", "--char", "3", "--export", "-"});
    CHECK(piped.out.rfind("sumnet-code 1\n", 0) == 0);
    CHECK(has(piped.err, "rate 2/3"));
    std::ifstream again(path);
    CHECK(sumnet::write_code(sumnet::read_code(again)) == piped.out);
}

TEST_CASE("network command") {
    const Run summary = run({"network", "--k2", "--alpha", "2", "--min-cuts"});
    CHECK(summary.status == 0);
    CHECK(has(summary.out, "nodes 10, edges 12 (expected 12), structure ok"));
    CHECK(has(summary.out, "min-cut s_p1 -> t_B1: 2"));
    CHECK(has(summary.out, "smallest source-terminal cut: 2"));
    const auto dot = scratch("fig4a.dot").string();
    CHECK(run({"network", "--graph", "fig4a", "--export", dot}).status == 0);
    CHECK(has(run({"network", "--import", dot}).out, "structure ok"));
    CHECK(run({"network", "--graph", "fig4a", "--export", "-"}).out.rfind("digraph", 0) == 0);
}

TEST_CASE("table command") {
    const Run sts = run({"table", "sts", "--v", "7,9,13,15", "--char", "2,3,5"});
    CHECK(sts.status == 0);
    std::size_t lines = 0, matched = 0;
    std::istringstream in(sts.out);
    std::string line;
    while (std::getline(in, line)) {
        ++lines;
        matched += has(line, "matched");
    }
    CHECK(lines == 13);
    CHECK(matched == 12);

    const Run higher = run({"table", "higher", "--design", "2-4-3-2", "--char", "2,3", "--format", "json"});
    std::istringstream rows(higher.out);
    std::vector<nlohmann::json> records;
    while (std::getline(rows, line)) records.push_back(nlohmann::json::parse(line));
    REQUIRE(records.size() == 4);
    CHECK(records[0]["rate"] == "1");
    CHECK(records[1]["rate"] == "6/10");
    CHECK(records[1]["bound"] == "3/5");

    const Run formula = run({"table", "formula", "--t", "2,3"});
    CHECK(has(formula.out, "1/865"));
    CHECK(has(formula.out, "1/286654465"));
}

TEST_CASE("table paper-all") {
    const Run all = run({"table", "paper-all", "--format", "json"});
    CHECK(all.status == 0);
    std::istringstream in(all.out);
    std::string line;
    std::size_t total = 0, matched = 0, bound_only = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        ++total;
        if (j["matched"] == true) ++matched;
        else if (j["rate"].is_null()) ++bound_only;
    }
    CHECK(total == matched + bound_only);
    CHECK(bound_only == 4);
    CHECK(run({"table", "paper-all", "--format", "json"}).out == all.out);
}

TEST_CASE("usage errors") {
    CHECK(run({}).status == sumnet::kExitUsage);
    CHECK(run({"frobnicate"}).status == sumnet::kExitUsage);
    CHECK(run({"bound", "--k2"}).status == sumnet::kExitUsage);
    CHECK(run({"bound", "--k2", "--fano", "--char", "2"}).status == sumnet::kExitUsage);
    CHECK(run({"bound", "--k2", "--char", "6"}).status == sumnet::kExitUsage);
    CHECK(run({"bound", "--k2", "--char", "2", "--normal", "--transpose"}).status == sumnet::kExitUsage);
    CHECK(run({"bound", "--graph", "fano", "--char", "2"}).status == sumnet::kExitUsage);
    CHECK(run({"code", "--k2", "--char", "2", "--alpha", "0"}).status == sumnet::kExitUsage);
    CHECK(run({"--help"}).status == 0);
}
