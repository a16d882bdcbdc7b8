#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kc/cli.hpp"
#include "kc/io.hpp"

#include <filesystem>
#include <sstream>
#include <unistd.h>

using namespace kc;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() /
              ("fbddkit-test-" + std::to_string(::getpid()) + "-" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("gen then validate round") {
    Sandbox sb;
    auto gen = run({"gen", "tight", "3", "-o", sb.path("t3.nnf")});
    REQUIRE(gen.code == 0);
    auto val = run({"validate", sb.path("t3.nnf")});
    CHECK(val.code == 0);
    CHECK(val.out.find("ok") == 0);
}

TEST_CASE("convert reports the tight example sizes") {
    Sandbox sb;
    REQUIRE(run({"gen", "tight", "3", "-o", sb.path("t3.nnf")}).code == 0);
    auto conv = run({"convert", sb.path("t3.nnf"), "-o", sb.path("t3.fbdd"), "--report",
                     sb.path("r.json")});
    REQUIRE(conv.code == 0);
    std::string json = read_file(sb.path("r.json"));
    CHECK(json.find("\"M\": 56") != std::string::npos); // m(m+1) with m = 7
    CHECK(json.find("\"N\"") != std::string::npos);
    CHECK(json.find("\"L\"") != std::string::npos);
    CHECK(json.find("out_nodes_with_noops") != std::string::npos);
    auto val = run({"validate", sb.path("t3.fbdd")});
    CHECK(val.code == 0);
}

TEST_CASE("count agrees across representations and universes") {
    Sandbox sb;
    REQUIRE(run({"gen", "phi", "2", "-o", sb.path("phi2.dnf")}).code == 0);
    REQUIRE(run({"compile", sb.path("phi2.dnf"), "-o", sb.path("phi2.nnf")}).code == 0);
    REQUIRE(run({"convert", sb.path("phi2.nnf"), "-o", sb.path("phi2.fbdd")}).code == 0);

    auto a = run({"count", sb.path("phi2.nnf")});
    auto b = run({"count", sb.path("phi2.fbdd")});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == "95 / 2^8\n");
    CHECK(b.out == a.out);

    auto widened = run({"count", sb.path("phi2.nnf"), "--universe", "10"});
    CHECK(widened.out == "380 / 2^10\n"); // 95 * 2^2

    auto too_small = run({"count", sb.path("phi2.nnf"), "--universe", "3"});
    CHECK(too_small.code == 1);
}

TEST_CASE("prob reads weights and warns about gaps") {
    Sandbox sb;
    REQUIRE(run({"gen", "phi", "1", "-o", sb.path("phi1.dnf")}).code == 0);
    REQUIRE(run({"compile", sb.path("phi1.dnf"), "-o", sb.path("phi1.nnf")}).code == 0);
    write_file(sb.path("w.csv"), "var,probability\n1,1\n2,1\n");
    auto p = run({"prob", sb.path("phi1.nnf"), "--weights", sb.path("w.csv")});
    REQUIRE(p.code == 0);
    CHECK(p.out.find("1/2") == 0); // 1 * 1 * 1/2
    CHECK(p.err.find("variable 3") != std::string::npos);
}

TEST_CASE("hierarchical prints the offending pair") {
    Sandbox sb;
    write_file(sb.path("h.txt"), "exists x y : R(x), S(x,y), T(y)\n");
    auto h = run({"hierarchical", sb.path("h.txt")});
    CHECK(h.code == 0);
    CHECK(h.out == "non-hierarchical: (x,y)\n");

    write_file(sb.path("ok.txt"), "exists x y : R(x), S(x,y)\n");
    auto ok = run({"hierarchical", sb.path("ok.txt")});
    CHECK(ok.code == 0);
    CHECK(ok.out == "hierarchical\n");
}

TEST_CASE("lineage grounds a query over a database file") {
    Sandbox sb;
    write_file(sb.path("q.txt"), "exists x y : R(x), S(x,y), T(y)\n");
    write_file(sb.path("db.txt"),
               "relation R 1\n1 0.5\n2 0.5\n"
               "relation S 2\n1 1 0.5\n1 2 0.5\n2 1 0.5\n2 2 0.5\n"
               "relation T 1\n1 0.5\n2 0.5\n");
    auto lin = run({"lineage", sb.path("q.txt"), sb.path("db.txt"), "-o", sb.path("l.dnf")});
    REQUIRE(lin.code == 0);
    CHECK(lin.out.find("4 terms") != std::string::npos);
    auto count = run({"count", sb.path("l.dnf")});
    CHECK(count.out == "95 / 2^8\n");
}

TEST_CASE("bench writes the csv and tight sizes grow with the parameter") {
    Sandbox sb;
    auto b = run({"bench", "--family", "tight", "--range", "1..3", "-o", sb.path("r.csv")});
    REQUIRE(b.code == 0);
    std::string csv = read_file(sb.path("r.csv"));
    CHECK(csv.find("family,param,N,M,L,out_nodes,bound") == 0);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line); // header
    long prev = -1;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        // out_nodes is the second-to-last column
        auto last_comma = line.rfind(',');
        auto pre_comma = line.rfind(',', last_comma - 1);
        long out_nodes = std::stol(line.substr(pre_comma + 1, last_comma - pre_comma - 1));
        CHECK(out_nodes > prev);
        prev = out_nodes;
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("the 2-DNF family and its dual flow through gen, compile, count") {
    Sandbox sb;
    REQUIRE(run({"gen", "psi", "2", "-o", sb.path("psi.dnf")}).code == 0);
    REQUIRE(run({"compile", sb.path("psi.dnf"), "-o", sb.path("psi.nnf")}).code == 0);
    CHECK(run({"count", sb.path("psi.nnf")}).out == "209 / 2^8\n");

    REQUIRE(run({"gen", "psi-dual", "2", "-o", sb.path("dual.cnf")}).code == 0);
    REQUIRE(run({"compile", sb.path("dual.cnf"), "-o", sb.path("dual.nnf"), "--heuristic",
                 "freq"}).code == 0);
    CHECK(run({"count", sb.path("dual.nnf")}).out == "47 / 2^8\n");

    REQUIRE(run({"gen", "triangle", "2", "-o", sb.path("tri.dnf")}).code == 0);
    CHECK(run({"count", sb.path("tri.dnf")}).out == "12 / 2^4\n");
}

TEST_CASE("convert refuses circuits that do not validate") {
    Sandbox sb;
    write_file(sb.path("bad.nnf"),
               "nnf 6 6 1\nL 1\nL -1\nO 1 2 0 1\nA 2 0 2\nL -1\nO 1 2 3 4\n");
    auto conv = run({"convert", sb.path("bad.nnf"), "-o", sb.path("bad.fbdd")});
    CHECK(conv.code == 1);
    CHECK(conv.err.find("read-once") != std::string::npos);
}

TEST_CASE("exit codes") {
    Sandbox sb;
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"convert"}).code == 2);
    CHECK(run({"validate", sb.path("missing.nnf")}).code == 1);

    // a parseable circuit that tests a variable twice validates with exit 1
    write_file(sb.path("bad.nnf"),
               "nnf 6 6 1\nL 1\nL -1\nO 1 2 0 1\nA 2 0 2\nL -1\nO 1 2 3 4\n");
    auto bad = run({"validate", sb.path("bad.nnf")});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("read-once") != std::string::npos);

    write_file(sb.path("notdec.nnf"), "nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1\n");
    CHECK(run({"validate", sb.path("notdec.nnf")}).code == 1);

    CHECK(run({"--help"}).code == 0);
}
