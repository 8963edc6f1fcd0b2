#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "casson/casson.hpp"
#include "casson/cli.hpp"
#include "casson/moves.hpp"
#include "oracles.hpp"

using namespace casson;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run casson_cmd(std::vector<std::string> args) {
  args.insert(args.begin(), "casson");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CASSON_TEST_DATA) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("casson_cli_test_" + name)).string();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

json value_of(const json& results, const std::string& method) {
  for (const auto& r : results)
    if (r["method"] == method) return r["value"];
  return "missing";
}

}  // namespace

TEST_CASE("v2 of the trefoil by every method") {
  const auto r = casson_cmd({"v2", "--braid", "s1 s1 s1", "--method", "all"});
  REQUIRE(r.code == 0);
  const auto j = r.doc();
  CHECK(j["schema"] == "casson/1");
  CHECK(j["command"] == "v2");
  CHECK(j["agree"] == true);
  CHECK(j["v2"] == 1);
  REQUIRE(j["results"].size() == 5);
  for (const auto& x : j["results"]) CHECK(x["value"] == 1);
}

TEST_CASE("v2 of the empty Gauss code") {
  const auto r = casson_cmd({"v2", "--gauss", ""});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["v2"] == 0);
  CHECK(r.doc()["chords"] == 0);
}

TEST_CASE("structure-dependent methods report not applicable") {
  const auto r = casson_cmd({"v2", "--gauss", "O1-U2-O3-U1-O2-U3-", "--method", "morse,natangle,gauss"});
  REQUIRE(r.code == 0);
  const auto j = r.doc();
  CHECK(value_of(j["results"], "morse").is_null());
  CHECK(value_of(j["results"], "natangle").is_null());
  CHECK(j["results"][0]["note"] == "not applicable");
  CHECK(value_of(j["results"], "gauss") == 1);

  const auto p = casson_cmd({"v2", "--polyknot", data("trefoil_long.json"), "--method", "all"});
  REQUIRE(p.code == 0);
  CHECK(value_of(p.doc()["results"], "morse") == 1);
  CHECK(value_of(p.doc()["results"], "natangle").is_null());

  const auto t = casson_cmd({"v2", "--tangle", data("trefoil.tangle"), "--method", "all"});
  REQUIRE(t.code == 0);
  CHECK(value_of(t.doc()["results"], "natangle") == 1);
  CHECK(value_of(t.doc()["results"], "morse").is_null());
}

TEST_CASE("input notations agree") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"--pd", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"},
           {"--gauss", "O1+U2+O3+U1+O2+U3+"},
           {"--torus", "3"},
       }) {
    args.insert(args.begin(), "v2");
    args.push_back("--method");
    args.push_back("all");
    const auto r = casson_cmd(args);
    INFO(r.err);
    REQUIRE(r.code == 0);
    CHECK(std::abs(r.doc()["v2"].get<long long>()) == 1);
  }
  const auto fig8 = casson_cmd({"v2", "--braid", "s1 -s2 s1 -s2", "--method", "all"});
  REQUIRE(fig8.code == 0);
  CHECK(fig8.doc()["v2"] == -1);
}

TEST_CASE("exit codes") {
  CHECK(casson_cmd({"v2", "--gauss", "O1+U2"}).code == cli::kParse);
  CHECK(casson_cmd({"v2", "--braid", "s1 q2"}).code == cli::kParse);
  CHECK(casson_cmd({"v2", "--braid", "s1", "--method", "magic"}).code == cli::kParse);
  CHECK(casson_cmd({"v2"}).code == cli::kParse);
  CHECK(casson_cmd({"v2", "--gauss", "", "--braid", "s1"}).code == cli::kParse);
  CHECK(casson_cmd({"frobnicate"}).code == cli::kParse);
  CHECK(casson_cmd({"v2", "--polyknot", temp_path("missing.json")}).code == cli::kParse);
  CHECK(casson_cmd({"v2", "--torus", "4"}).code == cli::kValidation);
  CHECK(casson_cmd({"v2", "--braid", "s1 s1"}).code == cli::kValidation);

  const std::string flat = temp_path("flat.json");
  write(flat, R"({"shape":"long","vertices":[["0","0","0"],["0","5","0"],["1","7","0"],["0","3","1"],["2","9","0"]]})");
  CHECK(casson_cmd({"v2", "--polyknot", flat, "--method", "morse"}).code == cli::kValidation);

  // Not realizable by a plane curve: the combinatorial methods part ways.
  const auto bad = casson_cmd({"v2", "--gauss", "O1+U2+U1+O2+", "--method", "all"});
  CHECK(bad.code == cli::kDisagreement);
  CHECK(bad.doc()["realizable"] == false);
  CHECK(bad.err.find("not realizable") != std::string::npos);

  CHECK(casson_cmd({"--help"}).code == 0);
}

TEST_CASE("tsv output and output files") {
  const auto r = casson_cmd({"v2", "--braid", "s1 s1 s1", "--method", "gauss,skein", "--format", "tsv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "method\tvalue\ngauss\t1\nskein\t1\n");

  const std::string path = temp_path("out.json");
  std::filesystem::remove(path);
  const auto f = casson_cmd({"-o", path, "bound", "--torus", "7"});
  REQUIRE(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream in(path);
  REQUIRE(in);
  const auto j = json::parse(in);
  CHECK(j["v2"] == 6);
  CHECK(j["bound"] == 6);
  CHECK(j["sharp"] == true);
}

TEST_CASE("skein trace") {
  const auto r = casson_cmd({"v2", "--gauss", "O1+U2+O3+U1+O2+U3+", "--method", "skein", "--trace"});
  REQUIRE(r.code == 0);
  const auto j = r.doc();
  REQUIRE(j["trace"].is_array());
  long long sum = 0;
  for (const auto& f : j["trace"]) sum += f["sign"].get<int>() * f["lk"].get<int>();
  CHECK(sum == j["v2"].get<long long>());
}

TEST_CASE("arf and bound subcommands") {
  const auto a = casson_cmd({"arf", "--braid", "s1 -s2 s1 -s2"});
  REQUIRE(a.code == 0);
  CHECK(a.doc()["arf"] == 1);
  CHECK(a.doc()["v2"] == -1);
  CHECK(a.doc()["parity_ok"] == true);

  const auto b = casson_cmd({"bound", "--gauss", "O1+U2+O3+U1+O2+U3+"});
  REQUIRE(b.code == 0);
  CHECK(b.doc()["bound"] == 1);
  CHECK(b.doc()["ok"] == true);
}

TEST_CASE("generated diagrams") {
  const auto a = casson_cmd({"gen", "--seed", "12", "--letters", "7", "--moves", "6"});
  REQUIRE(a.code == 0);
  const auto j = a.doc();
  const auto g = parse_gauss_code(j["gauss"].get<std::string>());
  CHECK(is_realizable(g));
  CHECK(j["v2"] == oracle::conway_c2(g));

  ::setenv("CASSON_SEED", "12", 1);
  const auto b = casson_cmd({"gen", "--letters", "7", "--moves", "6"});
  ::unsetenv("CASSON_SEED");
  CHECK(b.out == a.out);
  CHECK(casson_cmd({"gen", "--seed", "13", "--letters", "7", "--moves", "6"}).out != a.out);

  ::setenv("CASSON_SEED", "twelve", 1);
  CHECK(casson_cmd({"gen"}).code == cli::kParse);
  ::unsetenv("CASSON_SEED");
}

TEST_CASE("moves keep v2 and Arf") {
  const auto r = casson_cmd({"moves-check", "--braid", "s1 s1 s1 s2 -s1 s2", "--moves", "25", "--seed", "4"});
  REQUIRE(r.code == 0);
  const auto j = r.doc();
  CHECK(j["invariant"] == true);
  CHECK(j["realizable"] == true);
  CHECK(j["steps"].size() == 25);
  for (const auto& s : j["steps"]) CHECK(s["v2"] == j["v2"]);
}

TEST_CASE("integration subcommand") {
  const auto k = casson_cmd({"integrate", "--knot", data("trefoil_mc.json"), "--samples", "50000", "--seed", "2",
                             "--report-variance"});
  REQUIRE(k.code == 0);
  const auto j = k.doc();
  CHECK(j["samples"] == 50000);
  CHECK(j["seed"] == 2);
  CHECK(j["rejected"] == 0);
  CHECK(j.contains("variance"));
  CHECK(std::abs(j["value"].get<double>() - 1) < 5 * j["std_error"].get<double>());
  const auto again = casson_cmd({"integrate", "--knot", data("trefoil_mc.json"), "--samples", "50000", "--seed", "2",
                                 "--workers", "3", "--report-variance"});
  CHECK(again.out == k.out);

  const std::string link = temp_path("hopf.json");
  write(link, R"({"loops": [[[-1,-1,0],[1,-1,0],[1,1,0],[-1,1,0]], [[0.5,-0.2,1],[2.5,-0.2,1],[2.5,0.2,-1],[0.5,0.2,-1]]]})");
  const auto l = casson_cmd({"integrate", "--link", link, "--samples", "200000"});
  REQUIRE(l.code == 0);
  CHECK(l.doc()["value"].get<double>() == Catch::Approx(1).margin(0.05));

  write(link, R"({"loops": [[[0,0,0]]]})");
  CHECK(casson_cmd({"integrate", "--link", link}).code == cli::kParse);
  CHECK(casson_cmd({"integrate", "--knot", data("trefoil_mc.json"), "--samples", "0"}).code == cli::kParse);
}

TEST_CASE("batch over the torus table") {
  const auto r = casson_cmd({"batch", data("torus_table.csv"), "--workers", "3"});
  REQUIRE(r.code == 0);
  const auto j = r.doc();
  REQUIRE(j["records"].size() == 13);
  int ok = 0;
  for (int n = 3; n <= 15; ++n) {
    const auto& rec = j["records"][n - 3];
    CHECK(rec["name"] == "T" + std::to_string(n));
    if (n % 2 == 1) {
      CHECK(rec["v2"] == (n * n - 1) / 8);
      CHECK(rec["agree"] == true);
      CHECK(rec["bound"]["sharp"] == true);
      for (const auto& x : rec["results"]) CHECK(x["value"] == (n * n - 1) / 8);
      ++ok;
    } else {
      CHECK(rec["error_code"] == cli::kValidation);
    }
  }
  CHECK(ok == 7);
  CHECK(j["summary"]["errors"] == 6);

  const auto serial = casson_cmd({"batch", data("torus_table.csv"), "--workers", "1"});
  CHECK(serial.out == r.out);
}

TEST_CASE("batch keeps going past bad rows") {
  const std::string csv = temp_path("mixed.csv");
  write(csv, "name,kind,payload\n"
             "trefoil,gauss,O1+U2+O3+U1+O2+U3+\n"
             "broken,gauss,O1+U7\n"
             "\"pd, quoted\",pd,\"X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\"\n"
             "short row\n"
             "poly,polyknot," + data("trefoil_long.json") + "\n"
             "nonsense,knotscape,whatever\n");
  const auto r = casson_cmd({"batch", csv, "--format", "tsv"});
  REQUIRE(r.code == 0);
  const auto rows = cli::ingest_csv(csv);
  REQUIRE(rows.size() == 6);
  CHECK(rows[2].name == "pd, quoted");
  CHECK(rows[2].payload == "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
  CHECK(rows[3].error_code == cli::kParse);

  auto recs = rows;
  for (auto& rec : recs) cli::evaluate(rec, {"gauss", "morse"});
  CHECK(recs[0].error_code == cli::kOk);
  CHECK(recs[1].error_code == cli::kParse);
  CHECK(recs[2].results[0].value == 1);
  CHECK(recs[4].results[1].value == 1);
  CHECK(recs[5].error_code == cli::kParse);

  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 7);

  const std::string empty = temp_path("empty.csv");
  write(empty, "");
  CHECK(cli::ingest_csv(empty).empty());
  CHECK_THROWS_AS(cli::ingest_csv(temp_path("nope.csv")), std::runtime_error);
  CHECK(casson_cmd({"batch", temp_path("nope.csv")}).code == cli::kParse);
}
