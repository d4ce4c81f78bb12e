#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypergpd/cli/run.hpp"

using hypergpd::cli::Job;

namespace {

struct Result {
  int status = -1;
  std::string out, err;
};

Job job(std::string command, std::string fixture) {
  Job j;
  j.command = std::move(command);
  j.fixture = std::move(fixture);
  j.fixture_dir = HYPERGPD_FIXTURES;
  return j;
}

Result run_job(const Job& j) {
  std::ostringstream out, err;
  Result r;
  r.status = hypergpd::cli::run(j, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the installed binary; stderr goes to a side file.
Result run_binary(const std::string& args, const std::string& env = {}) {
  auto dir = std::filesystem::temp_directory_path();
  auto err = dir / ("hypergpd_cli_err_" + std::to_string(::getpid()));
  std::string cmd = env + (env.empty() ? "" : " ") + std::string("\"") + HYPERGPD_CLI + "\" " + args + " 2>\"" +
                    err.string() + "\"";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int st = ::pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.err = slurp(err);
  std::filesystem::remove(err);
  return r;
}

std::string last_line(const std::string& s) {
  auto t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') == std::string::npos ? 0 : t.rfind('\n') + 1);
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / (std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Binary, NerveOfS3IsAOneHypergroupoid) {
  auto r = run_binary("check-hypergroupoid --fixture s3_nerve --n 1");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("verdict: true"), std::string::npos);
}

TEST(Binary, ProjectiveLineMinusTwo) {
  auto r = run_binary("cech-cohomology --fixture p1 --sheaf 'O(-2)' --max-degree 2");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(last_line(r.out), "(0,1,0)");
}

TEST(Binary, MalformedInputReportsPosition) {
  auto r = run_binary("check-hypergroupoid --fixture malformed --n 1");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("line 5, column 5"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Binary, UsageErrorsExitTwo) {
  EXPECT_EQ(run_binary("no-such-command").status, 2);
  EXPECT_EQ(run_binary("cech-cohomology --fixture p1 --weights 1").status, 2);
  EXPECT_EQ(run_binary("cech-cohomology --fixture p1 --format yaml").status, 2);
  EXPECT_EQ(run_binary("--help").status, 0);
}

TEST(Binary, GroebnerCapFailsLoudly) {
  auto p = write_temp("capped.json", R"({"kind": "scheme", "builtin": "affine", "variables": ["x", "y"],
    "weights": [0, 0], "relations": ["x^2 - y", "x*y - 1"], "window": [0, 0]})");
  auto ok = run_binary("cech-cohomology \"" + p.string() + "\" --max-degree 1");
  EXPECT_EQ(ok.status, 0) << ok.err;
  auto capped = run_binary("cech-cohomology \"" + p.string() + "\" --max-degree 1", "HYPERGPD_GROEBNER_CAP=0");
  EXPECT_EQ(capped.status, 2);
  EXPECT_NE(capped.err.find("groebner-cap"), std::string::npos) << capped.err;
  std::filesystem::remove(p);
}

TEST(Run, FalseVerdictNamesWitness) {
  auto j = job("check-hypergroupoid", "delta1");
  j.n = 1;
  auto r = run_job(j);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("failure at (2,0)"), std::string::npos) << r.out;
}

TEST(Run, RecordsHaveVersionedHeader) {
  auto j = job("check-hypergroupoid", "delta1");
  j.n = 1;
  j.format = "records";
  auto r = run_job(j);
  EXPECT_EQ(r.out.rfind("#hypergpd-records v1\n", 0), 0u);
  EXPECT_NE(r.out.find("failure witness=(2,0) reason=not-surjective"), std::string::npos) << r.out;
  EXPECT_EQ(last_line(r.out), "exit status=1");
}

TEST(Run, DecModes) {
  auto j = job("check-hypergroupoid", "mixed_groupoid");
  j.n = 0;
  j.mode = "relative";
  EXPECT_EQ(run_job(j).status, 0);
  j.n = 1;
  j.mode = "trivial";
  EXPECT_EQ(run_job(j).status, 0);
  j.n = 0;
  EXPECT_EQ(run_job(j).status, 1);
}

TEST(Run, OptionsAreCheckedAgainstTheCommand) {
  auto j = job("cech-cohomology", "p1");
  j.n = 2;
  auto r = run_job(j);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("--n does not apply"), std::string::npos);

  auto k = job("dold-kan", "sphere2");
  EXPECT_EQ(run_job(k).status, 2);  // needs --n
  k.n = 1;
  k.mode = "fast";
  EXPECT_EQ(run_job(k).status, 2);

  auto wrong = job("integrate", "p1");
  r = run_job(wrong);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("does not take \"scheme\" input"), std::string::npos) << r.err;

  auto rel = job("check-hypergroupoid", "p1");
  rel.n = 1;
  rel.mode = "relative";
  EXPECT_EQ(run_job(rel).status, 2);
}

TEST(Run, SchemaErrorsNameThePath) {
  auto p = write_temp("bad_group.json", R"({"kind": "groupoid", "components": [{"objects": 1, "group": "Q8"}]})");
  Job j;
  j.command = "homotopy";
  j.input = p.string();
  auto r = run_job(j);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("/components/0/group"), std::string::npos) << r.err;
  std::filesystem::remove(p);
}

TEST(Run, EmbeddedPolynomialErrorsGiveTheColumn) {
  auto p = write_temp("bad_poly.json", R"({"kind": "scheme", "builtin": "affine", "variables": ["x"],
    "relations": ["x^2 + * 1"]})");
  Job j;
  j.command = "cech-cohomology";
  j.input = p.string();
  auto r = run_job(j);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("/relations/0"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("column"), std::string::npos) << r.err;
  std::filesystem::remove(p);
}

TEST(Run, ProjectiveLineEulerCharacteristic) {
  for (int d = -3; d <= 3; ++d) {
    auto j = job("cech-cohomology", "p1");
    j.sheaf = "O(" + std::to_string(d) + ")";
    j.format = "records";
    auto r = run_job(j);
    ASSERT_EQ(r.status, 0) << r.err;
    auto pos = r.out.find("total H=");
    ASSERT_NE(pos, std::string::npos);
    int h0 = 0, h1 = 0, h2 = 0;
    ASSERT_EQ(std::sscanf(r.out.c_str() + pos, "total H=%d,%d,%d", &h0, &h1, &h2), 3);
    EXPECT_EQ(h0 - h1 + h2, d + 1) << "d = " << d;
    EXPECT_EQ(h2, 0);
  }
}

TEST(Run, DoldKanWitnessIsTheFirstExtraDegree) {
  auto j = job("dold-kan", "sphere2");
  j.n = 1;
  auto r = run_job(j);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("degree 2 has rank 1"), std::string::npos) << r.out;
  j.n = 2;
  EXPECT_EQ(run_job(j).status, 0);
}

TEST(Run, HomologyOfClassifyingSpaceOfS3) {
  auto r = run_job(job("homotopy", "s3_nerve"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("pi_1 = Z/2\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("pi_3 = Z/6\n"), std::string::npos) << r.out;
}

TEST(Run, BGmCotangentAndExt) {
  auto c = job("cotangent", "bgm");
  c.n = 1;
  auto r = run_job(c);
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("H_-1 = 1"), std::string::npos);
  EXPECT_NE(r.out.find("H_0 = 0"), std::string::npos);
  auto e = job("ext", "bgm");
  e.n = 1;
  e.weights = {0, 2};
  r = run_job(e);
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("Ext^1 = 1\n"), std::string::npos) << r.out;
}

TEST(Run, ShiftCheckFixtures) {
  for (std::string f : {"bgm", "affine_plane", "discrete_c2"}) {
    auto j = job("cotangent", f);
    j.n = f == "affine_plane" ? 0 : 1;
    j.mode = "shift";
    auto r = run_job(j);
    EXPECT_EQ(r.status, 0) << f << ": " << r.err << r.out;
  }
}

TEST(Run, IntegrationSamples) {
  auto r = run_job(job("integrate", "omega_samples"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("t1*t2*dt1^dt2 (degree 2): [1/24]"), std::string::npos) << r.out;
}

TEST(Run, ThomSullivanOnASphere) {
  auto j = job("thom-sullivan", "sphere2");
  j.n = 3;
  auto r = run_job(j);
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("Thom-Sullivan (1,0,1)"), std::string::npos) << r.out;
}

TEST(Run, OutputIsDeterministic) {
  for (std::string f : {"p1", "bgm"}) {
    auto j = job("cech-cohomology", f);
    j.format = "records";
    EXPECT_EQ(run_job(j).out, run_job(j).out);
  }
}

TEST(Run, WindowOverflowNamesTheWeight) {
  auto p = write_temp("flat.json", R"({"kind": "scheme", "builtin": "affine", "variables": ["x"], "weights": [0]})");
  Job j;
  j.command = "cech-cohomology";
  j.input = p.string();
  auto r = run_job(j);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("window-overflow"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("weight 0"), std::string::npos) << r.err;
  std::filesystem::remove(p);
}

TEST(Run, GroupTablesAreChecked) {
  auto good = write_temp("c2_table.json", R"({"kind": "groupoid", "components": [{"objects": 1, "group": [[0, 1], [1, 0]]}]})");
  Job j;
  j.command = "homotopy";
  j.input = good.string();
  auto r = run_job(j);
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("pi_1 = Z/2\n"), std::string::npos) << r.out;
  // a*a = b, b*b = 0: not associative
  auto bad = write_temp("bad_table.json",
                        R"({"kind": "groupoid", "components": [{"objects": 1, "group": [[0, 1, 2], [1, 2, 0], [2, 0, 0]]}]})");
  j.input = bad.string();
  r = run_job(j);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("not associative"), std::string::npos) << r.err;
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}
