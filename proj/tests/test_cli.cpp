#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hopfstar/cli.hpp"

using namespace hopfstar;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    Run r = run(std::move(args));
    return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("hopfstar_test_" + name);
}

}  // namespace

TEST_CASE("verify-hopf exit codes") {
    CHECK(run({"verify-hopf", "uqsl2:l=3"}).code == 0);
    CHECK(run({"verify-hopf", "taft:n=2,d=2"}).code == 0);
    CHECK(run({"verify-hopf", "cyclic:n=6"}).code == 0);
    auto bad = run({"verify-hopf", "taft:n=4,d=3"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("d | n") != std::string::npos);
    CHECK(run({"verify-hopf", "sl3:l=3"}).code == 2);
    CHECK(run({"verify-hopf"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    auto j = run_json({"verify-hopf", "taft:n=4,d=2"});
    CHECK(j["schema"] == 1);
    CHECK(j["pass"] == true);
    CHECK(j["dim"] == 8);
}

TEST_CASE("forms command") {
    auto p = run_json({"forms", "uqsl2:l=5", "P:2"});
    REQUIRE(p["cases"].size() == 1);
    const json& c = p["cases"][0];
    CHECK(c["forms"]["dim_real"] == 2);
    CHECK(c["forms"]["pattern_match"] == true);
    CHECK(c["forms"]["nondegenerate"] == true);
    CHECK(p["pass"] == true);

    auto sweedler = run_json({"forms", "taft:n=2,d=2", "M:2:0"});
    CHECK(sweedler["cases"][0]["forms"]["nondegenerate"] == false);
    CHECK(sweedler["pass"] == true);

    auto t = run_json({"forms", "taft:n=4,d=2", "M:2:1"});
    CHECK(t["cases"][0]["forms"]["dim_real"] == 1);
    CHECK(t["cases"][0]["forms"]["nondegenerate"] == true);

    auto sig = run_json({"forms", "uqsl2:l=3", "P:1", "--embedding", "2"});
    const json& s = sig["cases"][0]["forms"]["signature"];
    CHECK(s["positive"] == 3);
    CHECK(s["negative"] == 3);
    CHECK(s["zero"] == 0);
    auto sig_bad = run_json({"forms", "uqsl2:l=3", "P:1", "--embedding", "3"});
    CHECK(sig_bad["cases"][0]["forms"]["signature"].contains("error"));

    CHECK(run({"forms", "uqsl2:l=5", "P:5"}).code == 2);
    CHECK(run({"forms", "uqsl2:l=5"}).code == 2);
    CHECK(run({"forms", "uqsl2:l=5", "M:1:0"}).code == 2);
}

TEST_CASE("araki command") {
    auto p = run_json({"araki", "uqsl2:l=3", "P:1"});
    const json& c = p["cases"][0];
    CHECK(c["verdicts"]["araki.chain_labels"] == json::array({"V_1", "W_1", "P_1"}));
    CHECK(c["araki"]["verdicts"]["all_verified"] == true);
    CHECK(c["araki"]["verdicts"]["null_space"] == true);
    CHECK(c["araki"]["verdicts"]["conjugate"] == true);
    CHECK(c["araki"]["verdicts"]["induced_nondegenerate"] == true);
    CHECK(run({"araki", "uqsl2:l=3", "P:1"}).code == 0);

    auto t = run_json({"araki", "taft:n=4,d=2", "M:2:1"});
    CHECK(t["cases"][0]["araki"]["verdicts"]["chain_length"] == 2);
    CHECK(run({"araki", "taft:n=4,d=2", "M:2:1"}).code == 0);

    auto cyc = run({"araki", "cyclic:n=3", "C:0,1,2"});
    CHECK(cyc.code == 1);
    CHECK(cyc.out.find("invariant complement exists") != std::string::npos);

    // The socle of M(2,1) is spanned by v_1.
    auto span = run_json({"araki", "taft:n=4,d=2", "M:2:1", "--submodule", "span:v=0,1"});
    CHECK(span["cases"][0]["araki"]["verdicts"]["all_verified"] == true);
    auto whole = run({"araki", "taft:n=4,d=2", "M:2:1", "--submodule", "span:v=1,0"});
    CHECK(whole.code == 1);
    CHECK(run({"araki", "taft:n=4,d=2", "M:2:1", "--submodule", "span:v=1,0,0"}).code == 2);
    CHECK(run({"araki", "taft:n=4,d=2", "M:2:1", "--submodule", "top"}).code == 2);
    CHECK(run({"araki", "taft:n=4,d=2", "M:2:1", "--submodule", "span:v=1,x"}).code == 2);
}

TEST_CASE("module files") {
    const auto path = temp_file("module.json");
    {
        std::ofstream f(path);
        f << to_json(module_M(4, 2, 2, 1)).dump();
    }
    auto r = run_json({"araki", "--module-file", path.string()});
    CHECK(r["pass"] == true);
    CHECK(r["cases"][0]["id"] == "M(2,1)");
    CHECK(r["cases"][0]["verdicts"]["araki.all_verified"] == true);
    {
        std::ofstream f(path);
        f << "{not json";
    }
    CHECK(run({"forms", "--module-file", path.string()}).code == 2);
    CHECK(run({"forms", "--module-file", temp_file("missing.json").string()}).code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("expectation tables and output files") {
    const auto table = temp_file("expect.json");
    {
        std::ofstream f(table);
        f << json{{"cases", {{"uqsl2:l=3 P:1", {{"forms.dim_real", 3}}}}}}.dump();
    }
    auto r = run({"forms", "uqsl2:l=3", "P:1", "--expect", table.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("mismatch forms.dim_real") != std::string::npos);
    {
        std::ofstream f(table);
        f << json{{"uqsl2:l=3 P:2", {{"forms.dim_real", 2}}}}.dump();
    }
    CHECK(run({"sweep", "uqsl2:l=3", "--expect", table.string()}).code == 0);
    {
        std::ofstream f(table);
        f << "[1, 2";
    }
    CHECK(run({"sweep", "uqsl2:l=3", "--expect", table.string()}).code == 2);
    std::filesystem::remove(table);

    const auto out = temp_file("report.json");
    auto w = run({"sweep", "taft:n=2", "--format", "json", "--out", out.string()});
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    std::ifstream in(out);
    CHECK(json::parse(in)["summary"]["cases"] == 4);
    std::filesystem::remove(out);
}

TEST_CASE("sweeps") {
    auto empty = run_json({"sweep", ""});
    CHECK(empty["summary"]["cases"] == 0);
    CHECK(empty["pass"] == true);
    CHECK(run({"sweep"}).code == 0);

    auto u = run({"sweep", "uqsl2:l=3,5"});
    CHECK(u.code == 0);
    CHECK(u.out.find("6 cases, 6 passed") != std::string::npos);

    auto t = run_json({"sweep", "taft:n<=6", "--parallel", "4"});
    CHECK(t["summary"]["cases"] == 128);
    CHECK(t["summary"]["failed"] == 0);
    CHECK(run({"sweep", "taft:n=4,d=3"}).code == 2);
    CHECK(run({"sweep", "uqsl2:r=3"}).code == 2);
    CHECK(run({"sweep", "uqsl2:l=3", "--parallel", "0"}).code == 2);
}

TEST_CASE("reports are deterministic") {
    const std::vector<std::string> args{"sweep", "taft:n=4;cyclic:n=3", "--format", "json", "--no-timing"};
    const Run a = run(args);
    auto par = args;
    par.push_back("--parallel");
    par.push_back("3");
    const Run b = run(par);
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out).contains("timing") == false);
    auto timed = run_json({"sweep", "taft:n=4;cyclic:n=3"});
    REQUIRE(timed.contains("timing"));
    timed.erase("timing");
    json untimed = json::parse(a.out);
    untimed["input"] = timed["input"];
    CHECK(timed == untimed);
}

TEST_CASE("grid expansion") {
    CHECK(cli::expand_grid("").empty());
    CHECK(cli::expand_grid(" ; ").empty());
    CHECK(cli::expand_grid("uqsl2:l=3,5").size() == 6);
    CHECK(cli::expand_grid("uqsl2:l<=7").size() == 12);
    CHECK(cli::expand_grid("taft:n=4,d=2").size() == 8);
    CHECK(cli::expand_grid("taft:n=4").size() == 24);
    CHECK(cli::expand_grid("taft:n<=6").size() == 128);
    CHECK(cli::expand_grid("cyclic:n=1,2,3,6").size() == 4);
    CHECK(cli::expand_grid("uqsl2:l=3;cyclic:n=2").size() == 3);
    auto ids = cli::expand_grid("taft:n=2,d=2");
    CHECK(ids.front().id() == "taft:n=2,d=2 M:1:0");
    CHECK_THROWS_AS(cli::expand_grid("uqsl2"), DescriptorError);
    CHECK_THROWS_AS(cli::expand_grid("uqsl2:l=4"), DescriptorError);
    CHECK_THROWS_AS(cli::expand_grid("uqsl2:l=3,l=5"), DescriptorError);
    CHECK_THROWS_AS(cli::expand_grid("lie:n=3"), DescriptorError);
    CHECK_THROWS_AS(cli::expand_grid("taft:d=2"), DescriptorError);
}
