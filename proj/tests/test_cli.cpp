#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpfourier/cli.hpp"
#include "lpfourier/special_functions.hpp"

using namespace lpf;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "lpfourier");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

std::string csv(const RunResult& r) {
  std::ostringstream os;
  write_csv(r.table, os);
  return os.str();
}

std::size_t column(const Table& t, const std::string& name) {
  return static_cast<std::size_t>(std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin());
}

class CliFiles : public ::testing::Test {
 protected:
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "lpf_cli_test";
  void SetUp() override { std::filesystem::create_directories(dir); }
  void TearDown() override { std::filesystem::remove_all(dir); }
};

}  // namespace

TEST(Grid, ParsesLinearAndLog) {
  const GridSpec g = parse_grid("0:10:101");
  EXPECT_EQ(g.count, 101);
  EXPECT_FALSE(g.log);
  const auto v = grid_values(g);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 10.0);
  EXPECT_DOUBLE_EQ(v[37], 3.7);
  const auto l = grid_values(parse_grid("1.2:10:12:log"));
  EXPECT_EQ(l.front(), 1.2);
  EXPECT_EQ(l.back(), 10.0);
  for (std::size_t i = 1; i + 1 < l.size(); ++i) EXPECT_NEAR(l[i] * l[i], l[i - 1] * l[i + 1], 1e-12 * l[i] * l[i]);
}

TEST(Grid, RejectsBrokenSpecs) {
  for (const char* s : {"1:0:3", "0:1:1", "0:1", "0:1:3:cubic", "0:1:x", "0:1:3.5", "-1:1:3:log", "a:1:3"})
    EXPECT_THROW(parse_grid(s), std::invalid_argument) << s;
  EXPECT_EQ(parse_values("1,0.5,0.25").size(), 3u);
  EXPECT_THROW(parse_values("1,,2"), std::invalid_argument);
}

TEST(Execute, PsifColumnMatchesSineIntegral) {
  RunConfig cfg;
  cfg.subcommand = "psif";
  cfg.f = {"indicator"};
  cfg.sgrid = "0:10:101";
  cfg.p = {1.0};
  const RunResult r = execute(cfg);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.table.rows.size(), 101u);
  const std::size_t si = column(r.table, "s"), re = column(r.table, "psif_re");
  for (const auto& row : r.table.rows) {
    const double s = std::get<double>(row[si]);
    EXPECT_NEAR(std::get<double>(row[re]), 2.0 * lpf::si(s), 1e-8);
  }
}

TEST(Execute, ConstantsSignsFollowConjecture) {
  RunConfig cfg;
  cfg.subcommand = "constants";
  const RunResult r = execute(cfg);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.table.columns, (std::vector<std::string>{"q", "c_q", "c_q_err", "b_q", "diff", "sign"}));
  for (const auto& row : r.table.rows) {
    const double q = std::get<double>(row[0]);
    EXPECT_EQ(std::get<std::int64_t>(row[5]), q < 2.0 ? 1 : -1) << q;
  }
}

TEST(Execute, RejectionNamesTheHypothesis) {
  RunConfig cfg;
  cfg.subcommand = "exchange";
  cfg.f = {"gaussian"};
  cfg.g = "sinc";
  const RunResult r = execute(cfg);
  EXPECT_FALSE(r.pass);
  ASSERT_EQ(r.messages.size(), 1u);
  EXPECT_NE(r.messages[0].find("weighted variation divergent"), std::string::npos);
  const std::string reason = std::get<std::string>(r.table.rows[0][column(r.table, "reason")]);
  EXPECT_EQ(reason.rfind("finite weighted variation", 0), 0u);
}

TEST(Execute, DirichletInversionRejected) {
  RunConfig cfg;
  cfg.subcommand = "invert";
  cfg.f = {"gaussian"};
  cfg.kernel = "dirichlet";
  const RunResult r = execute(cfg);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.messages[0].find("summability kernel hypotheses"), std::string::npos);
}

TEST(Execute, RowsAreSortedAndDeterministic) {
  RunConfig cfg;
  cfg.subcommand = "invert";
  cfg.f = {"gaussian"};
  cfg.kernel = "gauss_weierstrass";
  cfg.alist = "0.25,1,0.5";
  const RunResult a = execute(cfg);
  EXPECT_TRUE(a.pass);
  std::vector<double> as;
  for (const auto& row : a.table.rows) as.push_back(std::get<double>(row[column(a.table, "a")]));
  EXPECT_EQ(as, (std::vector<double>{0.25, 0.5, 1.0}));
  EXPECT_EQ(csv(a), csv(execute(cfg)));

  RunConfig h;
  h.subcommand = "holder";
  h.f = {"gaussian", "indicator"};
  h.p = {1.5, 3.0};
  h.seed = 5;
  EXPECT_EQ(csv(execute(h)), csv(execute(h)));
  h.seed = 6;
  const RunResult other = execute(h);
  EXPECT_TRUE(other.pass);
}

TEST(Execute, PropertiesReportsClauses) {
  RunConfig cfg;
  cfg.subcommand = "properties";
  cfg.f = {"sinc"};
  const RunResult r = execute(cfg);
  EXPECT_TRUE(std::get<bool>(r.table.rows[0][column(r.table, "sufficient_only")]));
  EXPECT_EQ(std::get<std::string>(r.table.rows[0][column(r.table, "triggered")]), "");
}

TEST_F(CliFiles, ExitCodes) {
  const auto out = (dir / "c.csv").string();
  EXPECT_EQ(run({"constants", "--qgrid", "3:6:2", "--out", out}), 0);
  EXPECT_EQ(slurp(out).substr(0, slurp(out).find('\n')), "q,c_q,c_q_err,b_q,diff,sign");
  EXPECT_EQ(run({"exchange", "--f", "gaussian", "--g", "sinc", "--out", out}), 1);
  EXPECT_NE(slurp(out).find("weighted variation divergent"), std::string::npos);
  EXPECT_EQ(run({"constants", "--bogus"}), 2);
  EXPECT_EQ(run({"nonsense"}), 2);
  EXPECT_EQ(run({"psif", "--sgrid", "1:0:3"}), 2);
  EXPECT_EQ(run({"psif", "--f", "no_such_function"}), 2);
  EXPECT_EQ(run({"convolution-check", "--thm", "triple"}), 2);
  EXPECT_EQ(run({"catalog", "--out", "/nonexistent-dir/x.csv"}), 1);
}

TEST_F(CliFiles, JsonOutput) {
  const auto out = (dir / "p.json").string();
  EXPECT_EQ(run({"properties", "--f", "gaussian,sinc", "--format", "json", "--out", out}), 0);
  const std::string s = slurp(out);
  EXPECT_EQ(s.front(), '[');
  EXPECT_NE(s.find("\"sufficient_only\": true"), std::string::npos);
}
