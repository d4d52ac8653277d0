#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "beltrami/serialize.hpp"

using namespace beltrami;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  std::string cmd = std::string(BELTRAMI_CLI) + " --fixtures " + default_fixture_dir() + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& command, const std::string& args, int expected_code) {
  CliResult r = run("--json " + command + " " + args);
  EXPECT_EQ(r.code, expected_code) << command << " " << args;
  json doc = json::parse(r.out);
  std::string where;
  EXPECT_TRUE(matches_schema(doc, command_schema(command), &where)) << command << ": " << where;
  EXPECT_EQ(doc["command"], command);
  EXPECT_EQ(doc["exit_code"], expected_code);
  EXPECT_EQ(json::parse(doc.dump()), doc);
  return doc;
}

}  // namespace

TEST(Cli, Determining) {
  CliResult r = run("determining --system curl-f --compare-fixture eq10");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("15 equations"), std::string::npos);
  EXPECT_NE(r.out.find("equivalent: yes"), std::string::npos);
  json d = run_json("determining", "--system curl-f --compare-fixture eq10", 0);
  EXPECT_EQ(d["count"], 15);
  EXPECT_EQ(d["equations"].size(), 15u);
  CliResult tex = run("determining --system blair --latex");
  EXPECT_EQ(tex.code, 0);
  EXPECT_NE(tex.out.find("\\begin{tabular}"), std::string::npos);
  EXPECT_EQ(run("determining --system curl-absB --compare-fixture eq10").code, 4);
}

TEST(Cli, SolveAnsatz) {
  json a = run_json("solve-ansatz", "--system blair --degree 2", 0);
  EXPECT_EQ(a["dimension"], 7);
  EXPECT_EQ(a["basis"].size(), 7u);
  json b = run_json("solve-ansatz", "--system curl-f --degree 2", 0);
  EXPECT_EQ(b["dimension"], 10);
  EXPECT_EQ(run("solve-ansatz --degree 9").code, 4);
}

TEST(Cli, VerifyGenerator) {
  json ok = run_json("verify-generator", "--gen X8", 0);
  EXPECT_TRUE(ok["ok"].get<bool>());
  json bad = run_json("verify-generator", "--gen X8 --system blair", 2);
  EXPECT_FALSE(bad["ok"].get<bool>());
  EXPECT_EQ(run("verify-generator --gen X11").code, 4);

  auto path = std::filesystem::temp_directory_path() / "beltrami_gen.txt";
  std::ofstream(path) << "zeta = -y\neta = x\ntheta = 0\nphi = -v\nlambda = u\npsi = 0\n";
  EXPECT_EQ(run("verify-generator --expr-file " + path.string() + " --system blair").code, 0);
  std::ofstream(path) << "zeta = x\neta = 0\ntheta = 0\nphi = 0\nlambda = 0\npsi = 0\n";
  EXPECT_EQ(run("verify-generator --expr-file " + path.string()).code, 2);
  std::ofstream(path) << "zeta = x +\n";
  EXPECT_EQ(run("verify-generator --expr-file " + path.string()).code, 4);
  std::filesystem::remove(path);
}

TEST(Cli, BracketTable) {
  json b10 = run_json("bracket-table", "--basis b10", 1);
  EXPECT_EQ(b10["fixture"]["status"], "documented-mismatch-only");
  EXPECT_EQ(b10["fixture"]["mismatches"].size(), 3u);
  EXPECT_TRUE(b10["jacobi"].get<bool>());
  EXPECT_EQ(b10["brackets"][0][1], "X3");
  json b7 = run_json("bracket-table", "--basis b7", 0);
  EXPECT_EQ(b7["fixture"]["status"], "clean");
}

TEST(Cli, Adjoint) {
  json a = run_json("adjoint", "--basis b7", 0);
  EXPECT_EQ(a["mode"], "closed-form");
  CliResult n = run("adjoint --basis b7 --numeric --eps 0.5");
  EXPECT_EQ(n.code, 0);
}

TEST(Cli, VerifySolution) {
  CliResult r = run("verify-solution --sol B1 --system blair");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("residuals: 0 0 0 0"), std::string::npos);
  json d = run_json("verify-solution", "--sol B2 --system curl-absB", 0);
  EXPECT_TRUE(d["residual"]["zero"].get<bool>());
  run_json("verify-solution", "--sol B2 --system blair", 2);
  EXPECT_EQ(run("verify-solution --sol B1 --system blair --transform 3 --eps 0.5").code, 0);
  EXPECT_EQ(run("verify-solution --sol B1 --system blair --transform 7 --eps eps").code, 0);
  EXPECT_EQ(run("verify-solution --sol B1_2 --system blair").code, 0);
  EXPECT_EQ(run("verify-solution --sol B1_3 --system blair").code, 2);
  EXPECT_EQ(run("verify-solution --sol B9").code, 4);
  EXPECT_EQ(run("verify-solution --sol B1 --transform 9 --eps 1").code, 4);
}

TEST(Cli, Reduce) {
  json d = run_json("reduce", "--kind translation --step 0.01", 0);
  EXPECT_FALSE(d["blew_up"].get<bool>());
  EXPECT_EQ(d["table"][0].size(), 3u);
  CliResult r = run("reduce --kind rotation --step 1e-3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("#", 0), 0u);
  auto csv = std::filesystem::temp_directory_path() / "beltrami_red.csv";
  EXPECT_EQ(run("reduce --kind rotation --step 1e-2 --csv " + csv.string()).code, 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "r,beta,gamma");
  std::filesystem::remove(csv);
  EXPECT_EQ(run("reduce --kind rotation --range 0,1").code, 4);
  EXPECT_EQ(run("reduce --kind rotation --ic 1").code, 4);
}

TEST(Cli, CheckF) {
  json ok = run_json("check-f", "--expr R", 0);
  EXPECT_TRUE(ok["ok"].get<bool>());
  CliResult bad = run("check-f --expr u");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.out.substr(0, bad.out.find('\n')), "FAIL: rotation constraint u*f_v - v*f_u = 0");
  EXPECT_EQ(run("check-f --expr 'u^2+v^2+w^2'").code, 2);
  EXPECT_EQ(run("check-f --expr 'x*u'").code, 4);
  EXPECT_EQ(run("check-f --expr 'u +'").code, 4);
}

TEST(Cli, AllIsDeterministic) {
  CliResult a = run("all --compare-fixtures");
  CliResult b = run("all --compare-fixtures");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("FAIL"), std::string::npos);
  json d = run_json("all", "--compare-fixtures", 0);
  for (const auto& c : d["checks"]) EXPECT_TRUE(c["ok"].get<bool>()) << c["name"];
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("frobnicate").code, 4);
  EXPECT_EQ(run("bracket-table --basis b9").code, 4);
  CliResult r = run("--fixtures /nonexistent bracket-table --basis b10");
  EXPECT_EQ(r.code, 4);
}
