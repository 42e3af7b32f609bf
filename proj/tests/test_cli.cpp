#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "hypertet/hypertet.hpp"

using json = nlohmann::ordered_json;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPiThird = 1.0471975511965976;

struct cli_result {
    int status;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Run the CLI binary with `args`, feeding `input` on stdin.
cli_result run_cli(const std::string& args, const std::string& input = "") {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/hypertet_cli_test_XXXXXX";
        const char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    static int counter = 0;
    const std::string base = dir + "/" + std::to_string(counter++);
    {
        std::ofstream in(base + ".in");
        in << input;
    }
    const std::string cmd = std::string(HYPERTET_CLI_PATH) + " " + args + " < " +
                            base + ".in > " + base + ".out 2> " + base + ".err";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return {WEXITSTATUS(rc), slurp(base + ".out"), slurp(base + ".err")};
}

const std::string kIdealDoc = R"({
  "types": ["ideal", "ideal", "ideal", "ideal"],
  "lengths": {"12": 0.6931471805599453, "13": 0.6931471805599453,
              "14": 0.6931471805599453, "23": 0.6931471805599453,
              "24": 0.6931471805599453, "34": 0.6931471805599453}
})";

const std::string kInadmissibleDoc = R"({
  "types": ["finite", "finite", "finite", "finite"],
  "lengths": {"12": 10.0, "13": 0.1, "14": 0.1, "23": 1.0, "24": 1.0, "34": 1.0}
})";

json error_of(const cli_result& r) {
    const json e = json::parse(r.err);
    REQUIRE(e.contains("error"));
    return e["error"];
}

} // namespace

TEST_CASE("cli angles: regular ideal tetrahedron") {
    const cli_result r = run_cli("angles", kIdealDoc);
    CAPTURE(r.err);
    REQUIRE(r.status == 0);
    const json out = json::parse(r.out);
    REQUIRE(out["command"] == "angles");
    REQUIRE(out["edge_order"] ==
            json::array({"12", "13", "14", "23", "24", "34"}));
    for (const char* e : {"12", "13", "14", "23", "24", "34"}) {
        REQUIRE_THAT(out["angles"]["cofactor"][e].get<double>(),
                     WithinAbs(kPiThird, 1e-9));
        REQUIRE_THAT(out["angles"]["link"][e].get<double>(),
                     WithinAbs(kPiThird, 1e-9));
    }
    REQUIRE(out["angles"]["max_route_deviation"].get<double>() < 1e-9);
}

TEST_CASE("cli: malformed inputs exit 1 with a parse error") {
    const cli_result bad_key = run_cli(
        "angles", R"({"types": ["ideal","ideal","ideal","ideal"],
                      "lengths": {"21": 1, "13": 1, "14": 1,
                                  "23": 1, "24": 1, "34": 1}})");
    REQUIRE(bad_key.status == 1);
    const json err = error_of(bad_key);
    REQUIRE(err["kind"] == "parse");
    REQUIRE(err["message"].get<std::string>().find("21") != std::string::npos);

    const cli_result invalid = run_cli("angles", "{nope");
    REQUIRE(invalid.status == 1);
    REQUIRE(error_of(invalid)["kind"] == "parse");

    const cli_result negative = run_cli(
        "angles", R"({"types": ["ideal","ideal","ideal","ideal"],
                      "lengths": {"12": -1, "13": 1, "14": 1,
                                  "23": 1, "24": 1, "34": 1}})");
    REQUIRE(negative.status == 1);
    REQUIRE(error_of(negative)["kind"] == "parse");
}

TEST_CASE("cli: inadmissible input exits 2 and lists failures") {
    const cli_result r = run_cli("angles", kInadmissibleDoc);
    REQUIRE(r.status == 2);
    const json err = error_of(r);
    REQUIRE(err["kind"] == "inadmissible");
    REQUIRE(err["failures"].is_array());
    REQUIRE(!err["failures"].empty());
}

TEST_CASE("cli check: verdict in exit code, report on stdout") {
    const cli_result good = run_cli("check", kIdealDoc);
    REQUIRE(good.status == 0);
    REQUIRE(json::parse(good.out)["admissible"] == true);

    const cli_result bad = run_cli("check", kInadmissibleDoc);
    REQUIRE(bad.status == 2);
    const json out = json::parse(bad.out);
    REQUIRE(out["admissible"] == false);
    REQUIRE(!out["failures"].empty());
}

TEST_CASE("cli gram: diagnostics work even for inadmissible input") {
    const cli_result r = run_cli("gram", kInadmissibleDoc);
    REQUIRE(r.status == 0);
    const json out = json::parse(r.out);
    REQUIRE(out["admissible"] == false);
    REQUIRE(!out["failures"].empty());
    REQUIRE(!out.contains("determinant_identities"));

    const cli_result ok = run_cli("gram", kIdealDoc);
    REQUIRE(ok.status == 0);
    const json good = json::parse(ok.out);
    REQUIRE_THAT(good["gram"]["determinant"].get<double>(),
                 WithinAbs(-3.0, 1e-12));
    REQUIRE(good["gram"]["signature"]["positive"] == 3);
    REQUIRE(good["gram"]["signature"]["negative"] == 1);
    REQUIRE(good.contains("determinant_identities"));
}

TEST_CASE("cli jacobian: FD oracle and symmetry report") {
    const cli_result r = run_cli("jacobian --fd", kIdealDoc);
    REQUIRE(r.status == 0);
    const json out = json::parse(r.out);
    REQUIRE(out["jacobian"]["max_abs_deviation"].get<double>() < 1e-8);
    REQUIRE(out["jacobian"]["fd_step"].get<double>() == 1e-5);
    REQUIRE(out["symmetries"]["all_pass"] == true);
    REQUIRE(out["symmetries"]["families"].size() == 5);

    // A coarse step walks the perturbed configs out of the admissible
    // region (negative lengths), which is a numeric failure.
    const cli_result coarse = run_cli(
        "jacobian --fd --h 0.5",
        R"({"types": ["finite","finite","finite","finite"],
            "lengths": {"12": 0.01, "13": 0.01, "14": 0.01,
                        "23": 0.01, "24": 0.01, "34": 0.01}})");
    REQUIRE(coarse.status == 3);
    REQUIRE(error_of(coarse)["kind"] == "numeric");
}

TEST_CASE("cli symmetries: source selection") {
    const cli_result analytic = run_cli("symmetries", kIdealDoc);
    REQUIRE(analytic.status == 0);
    REQUIRE(json::parse(analytic.out)["matrix_source"] == "analytic");

    const cli_result fd = run_cli("symmetries --fd --tol 1e-5", kIdealDoc);
    REQUIRE(fd.status == 0);
    const json out = json::parse(fd.out);
    REQUIRE(out["matrix_source"] == "fd");
    REQUIRE(out["symmetries"]["all_pass"] == true);
}

TEST_CASE("cli solve: explicit target reconstructs the lengths") {
    const std::array<double, 6> truth{1.0, 1.1, 0.9, 1.2, 1.0, 1.05};
    const hypertet::tet_config cfg{{hypertet::vertex_type::finite,
                                    hypertet::vertex_type::finite,
                                    hypertet::vertex_type::finite,
                                    hypertet::vertex_type::finite},
                                   truth};
    const std::array<double, 6> target = hypertet::angles_cofactor(cfg);
    json doc = {{"types", {"finite", "finite", "finite", "finite"}}};
    json tgt = json::object();
    for (int e = 0; e < 6; ++e)
        tgt[hypertet::edge_names[e]] = target[e];
    doc["target"] = tgt;

    const cli_result r = run_cli("solve", doc.dump());
    CAPTURE(r.err);
    REQUIRE(r.status == 0);
    const json out = json::parse(r.out);
    REQUIRE(out["solve"]["residual"].get<double>() < 1e-10);
    REQUIRE(out["solve"]["rank_deficient"] == false);
    for (int e = 0; e < 6; ++e)
        REQUIRE_THAT(out["solve"]["lengths"][hypertet::edge_names[e]].get<double>(),
                     WithinAbs(truth[e], 1e-8));
}

TEST_CASE("cli solve: round-trip form verifies a known configuration") {
    const cli_result r = run_cli("solve", kIdealDoc);
    CAPTURE(r.err);
    REQUIRE(r.status == 0);
    const json out = json::parse(r.out);
    REQUIRE(out["solve"]["iterations"] == 0);
    REQUIRE(out["solve"]["residual"].get<double>() < 1e-10);
    REQUIRE(out["solve"]["rank_deficient"] == true);

    // Supplying both target and lengths is ambiguous.
    json both = json::parse(kIdealDoc);
    both["target"] = {{"12", 1.0}, {"13", 1.0}, {"14", 1.0},
                      {"23", 1.0}, {"24", 1.0}, {"34", 1.0}};
    const cli_result bad = run_cli("solve", both.dump());
    REQUIRE(bad.status == 1);
    REQUIRE(error_of(bad)["kind"] == "parse");
}

TEST_CASE("cli solve: unreachable target exits 3 with best residual") {
    const json doc = {{"types", {"finite", "finite", "finite", "finite"}},
                      {"target", {{"12", 3.0}, {"13", 3.0}, {"14", 3.0},
                                  {"23", 3.0}, {"24", 3.0}, {"34", 3.0}}}};
    const cli_result r = run_cli("solve", doc.dump());
    REQUIRE(r.status == 3);
    const json err = error_of(r);
    REQUIRE(err["kind"] == "numeric");
    REQUIRE(err["best_residual"].get<double>() > 0.0);
    REQUIRE(err.contains("iterations"));
}

TEST_CASE("cli sample: deterministic, parallel-stable, prefix-consistent") {
    const std::string doc =
        R"({"types": ["finite", "finite", "hyperideal", "hyperideal"]})";
    const cli_result a = run_cli("sample --count 3 --seed 5", doc);
    const cli_result b = run_cli("sample --count 3 --seed 5", doc);
    const cli_result par = run_cli("sample --count 3 --seed 5 --parallel", doc);
    REQUIRE(a.status == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out == par.out);

    const cli_result five = run_cli("sample --count 5 --seed 5", doc);
    REQUIRE(five.out.substr(0, a.out.size()) == a.out);

    const cli_result other = run_cli("sample --count 3 --seed 6", doc);
    REQUIRE(other.out != a.out);

    // Each emitted line is itself a valid, admissible input document.
    std::istringstream lines(a.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        ++n;
        const json cfg = json::parse(line);
        REQUIRE(cfg.contains("types"));
        REQUIRE(cfg.contains("lengths"));
        const cli_result chk = run_cli("check", line);
        REQUIRE(chk.status == 0);
        const cli_result ang = run_cli("angles", line);
        REQUIRE(ang.status == 0);
    }
    REQUIRE(n == 3);

    const cli_result zero = run_cli("sample --count 0 --seed 5", doc);
    REQUIRE(zero.status != 0);
}

TEST_CASE("cli: help and input plumbing") {
    REQUIRE(run_cli("--help").status == 0);
    REQUIRE(run_cli("angles --help").status == 0);
    REQUIRE(run_cli("").status != 0); // subcommand required

    // --input FILE reads the same document from disk.
    char tmpl[] = "/tmp/hypertet_cli_doc_XXXXXX";
    const int fd = mkstemp(tmpl);
    REQUIRE(fd >= 0);
    {
        std::ofstream f(tmpl);
        f << kIdealDoc;
    }
    const cli_result r = run_cli(std::string("angles --input ") + tmpl);
    REQUIRE(r.status == 0);
    REQUIRE_THAT(json::parse(r.out)["angles"]["cofactor"]["12"].get<double>(),
                 WithinAbs(kPiThird, 1e-9));

    const cli_result missing = run_cli("angles --input /nonexistent/file.json");
    REQUIRE(missing.status == 1);
    REQUIRE(error_of(missing)["kind"] == "parse");
}
