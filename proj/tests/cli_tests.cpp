// Runs the built cobweb executable end to end.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run run(const std::vector<std::string>& args, const std::string& env = "") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto out = dir / ("cobweb_cli_out_" + std::to_string(::getpid()));
    const auto err = dir / ("cobweb_cli_err_" + std::to_string(::getpid()));
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += quote(COBWEB_CLI_PATH);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return r;
}

const std::string kNatural = R"({"kind":"natural"})";
const std::string kFib = R"({"kind":"fibonacci"})";
const std::string kNonTiling =
    R"({"kind":"product","inner":[{"kind":"periodic","c":2,"M":2},{"kind":"periodic","c":3,"M":3}]})";

}  // namespace

TEST_CASE("seq") {
    auto r = run({"seq", "--seq", R"({"kind":"rec2","f1":1,"f2":2})", "--N", "9", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 2 5 12 29 70 169 408 985\n");
    r = run({"seq", "--seq", R"({"kind":"periodic","c":2,"M":3})", "--N", "6", "--format", "text"});
    CHECK(r.out == "1 1 2 1 1 2\n");
    r = run({"seq", "--seq", kNatural, "--N", "3", "--format", "text"});
    CHECK(r.out == "1 2 3\n");
    r = run({"seq", "--seq", kFib, "--N", "4", "--show", "factorials", "--format", "text"});
    CHECK(r.out == "1 1 2 6\n");
    r = run({"seq", "--seq", R"({"kind":"shift","s":3,"inner":{"kind":"natural"}})", "--N", "7", "--format", "text"});
    CHECK(r.out == "1 1 1 1 2 3 4\n");
}

TEST_CASE("seq fnomial table") {
    const auto r = run({"seq", "--seq", kFib, "--N", "4", "--show", "fnomial", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4,0,1\n4,1,3\n4,2,6\n4,3,3\n4,4,1\n") != std::string::npos);
}

TEST_CASE("descriptor errors exit 2") {
    for (const std::string bad : {"nope", R"({"kind":"constant"})", R"({"kind":"zzz"})"}) {
        const auto r = run({"seq", "--seq", bad, "--N", "3"});
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
    CHECK(run({"seq", "--N", "3"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"tile", "--seq", kNatural, "--k", "1", "--n", "3", "--format", "csv"}).code == 2);
    CHECK(run({"seq", "--seq-file", "/nonexistent/seq.json", "--N", "3"}).code == 2);
}

TEST_CASE("descriptor from a file and output to a file") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto in = dir / "cobweb_cli_seq.json";
    const auto out = dir / "cobweb_cli_result.txt";
    std::ofstream(in) << kFib;
    const auto r = run({"seq", "--seq-file", in.string(), "--N", "6", "--format", "text", "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(out) == "1 1 2 3 5 8\n");
    std::filesystem::remove(in);
    std::filesystem::remove(out);
}

TEST_CASE("admissible") {
    auto r = run({"admissible", "--seq", kFib, "--N", "15", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "admissible up to N=15\n");
    r = run({"admissible", "--seq", R"({"kind":"explicit","terms":[1,3,2]})", "--N", "2"});
    CHECK(r.code == 1);
    CHECK(r.out.find(R"("value": "2/3")") != std::string::npos);
    CHECK(r.out.find(R"("n": 2)") != std::string::npos);
    CHECK(r.out.find(R"("k": 1)") != std::string::npos);
    r = run({"admissible", "--seq", kNatural, "--N", "0"});
    CHECK(r.code == 0);
}

TEST_CASE("tile") {
    auto r = run({"tile", "--seq", kNatural, "--k", "2", "--n", "4", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4 blocks") != std::string::npos);
    r = run({"tile", "--seq", kFib, "--k", "1", "--n", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find(R"("blocks": [)") != std::string::npos);
    r = run({"tile", "--seq", kNonTiling, "--k", "5", "--n", "7"});
    CHECK(r.code == 1);
    CHECK(r.err.find("no identity-1/2 structure; use enumerate") != std::string::npos);
    r = run({"tile", "--seq", kFib, "--k", "2", "--n", "4", "--variant", "natural"});
    CHECK(r.code == 1);
    r = run({"tile", "--seq", kNatural, "--k", "2", "--n", "3", "--format", "dot"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("digraph cobweb {", 0) == 0);
    r = run({"tile", "--seq", kNatural, "--k", "2", "--n", "6", "--cap-chains", "100"});
    CHECK(r.code == 3);
    r = run({"tile", "--seq", kNatural, "--k", "2", "--n", "6"}, "COBWEB_CAP_CHAINS=100");
    CHECK(r.code == 3);
    r = run({"tile", "--seq", kNatural, "--k", "4", "--n", "3"});
    CHECK(r.code == 1);
}

TEST_CASE("tile output is deterministic, also for a seeded random policy") {
    const std::vector<std::string> a{"tile", "--seq", kFib, "--k", "3", "--n", "6"};
    CHECK(run(a).out == run(a).out);
    const std::vector<std::string> b{"tile", "--seq", kNatural, "--k", "3", "--n", "5", "--policy", "random", "--seed", "9"};
    const auto first = run(b);
    CHECK(first.code == 0);
    CHECK(first.out == run(b).out);
}

TEST_CASE("enumerate") {
    auto r = run({"enumerate", "--seq", kNonTiling, "--k", "5", "--n", "7"});
    CHECK(r.code == 1);
    CHECK(r.out.find(R"("count": "0")") != std::string::npos);
    r = run({"enumerate", "--seq", kNatural, "--k", "1", "--n", "3", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "count 1\n");
    r = run({"enumerate", "--seq", kNatural, "--k", "2", "--n", "3", "--limit", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find(R"("count": "4")") != std::string::npos);
    CHECK(r.out.find(R"("truncated": true)") != std::string::npos);
    r = run({"enumerate", "--seq", kNatural, "--k", "3", "--n", "5", "--cap-nodes", "10"});
    CHECK(r.code == 3);
    CHECK(r.out.find(R"("complete": false)") != std::string::npos);
}

TEST_CASE("enumerate output does not depend on workers") {
    const auto one = run({"enumerate", "--seq", kNatural, "--k", "2", "--n", "4", "--limit", "5", "--workers", "1"});
    const auto four = run({"enumerate", "--seq", kNatural, "--k", "2", "--n", "4", "--limit", "5", "--workers", "4"});
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
}

TEST_CASE("triangle") {
    auto r = run({"triangle", "--seq", kNatural, "--kind", "sn", "--rows", "4", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,k,value\n1,1,1\n2,1,1\n2,2,1\n3,1,1\n3,2,3\n3,3,1\n4,1,1\n4,2,12\n4,3,18\n4,4,1\n");
    r = run({"triangle", "--seq", kFib, "--kind", "fnomial", "--rows", "4", "--k0", "--format", "csv"});
    CHECK(r.out.find("4,0,1\n4,1,3\n4,2,6\n4,3,3\n4,4,1\n") != std::string::npos);
    r = run({"triangle", "--seq", kFib, "--kind", "sn", "--rows", "3", "--format", "csv"});
    CHECK(r.code == 1);
    CHECK(r.out.find("ERR:") != std::string::npos);
    r = run({"triangle", "--seq", kFib, "--kind", "sf", "--rows", "5", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning: S_F(5,2)") != std::string::npos);
    r = run({"triangle", "--seq", kNatural, "--kind", "stirling", "--rows", "3", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("3,2,15\n") != std::string::npos);
}

TEST_CASE("cta3") {
    auto r = run({"cta3", "--seq", kNatural, "--N", "17", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "1,2,3,2,5,1,7,2,3,1,11,1,13,1,1,2,17\nreconstruction ok\n");
    r = run({"cta3", "--seq", kFib, "--N", "12", "--format", "text"});
    CHECK(r.out == "1,1,2,3,5,4,13,7,17,11,89,6\nreconstruction ok\n");
    r = run({"cta3", "--seq", R"({"kind":"constant","t":5})", "--N", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find(R"("reconstruction_ok": true)") != std::string::npos);
    r = run({"cta3", "--seq", R"({"kind":"explicit","terms":[1,1,4,3,6]})", "--N", "4", "--format", "text"});
    CHECK(r.code == 1);
}

TEST_CASE("layer") {
    auto r = run({"layer", "--seq", kNonTiling, "--k", "5", "--n", "7", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "sizes 1 6 1; chains 6; placements 0\n");
    r = run({"layer", "--seq", kFib, "--k", "1", "--n", "4", "--format", "dot"});
    CHECK(r.out.rfind("digraph cobweb {", 0) == 0);
}
