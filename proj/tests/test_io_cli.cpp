#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdtest/cli.hpp"
#include "hdtest/csv_io.hpp"
#include "hdtest/errors.hpp"
#include "hdtest/sim_config.hpp"

namespace hdtest {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("hdtest_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path file = path_ / name;
    std::ofstream(file, std::ios::binary) << text;
    return file.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hdtest");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

DataMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(Csv, HeaderlessNumbers) {
  const DataMatrix d = parse("1,0\n-1,0\n");
  ASSERT_EQ(d.values.rows(), 2);
  ASSERT_EQ(d.values.cols(), 2);
  EXPECT_TRUE(d.names.empty());
  EXPECT_EQ(d.values(1, 0), -1.0);
}

TEST(Csv, HeaderRow) {
  const DataMatrix d = parse("a,b\n1,2");
  ASSERT_EQ(d.names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.values.rows(), 1);
  EXPECT_EQ(d.values(0, 1), 2.0);
}

TEST(Csv, CrlfBlanksAndSigns) {
  const DataMatrix d = parse("x, y\r\n +1.5 ,-2e-3\r\n");
  EXPECT_EQ(d.names[1], "y");
  EXPECT_DOUBLE_EQ(d.values(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(d.values(0, 1), -0.002);
}

TEST(Csv, ErrorsNameTheCell) {
  try {
    parse("1,x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Csv);
    EXPECT_NE(std::string(e.what()).find("row 1 col 2"), std::string::npos) << e.what();
  }
  try {
    parse("a,b\n1,2\n3\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Csv);
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([] { parse("a,b\n"); }), ErrorCode::Csv);
  EXPECT_EQ(code_of([] { parse("1,nan\n"); }), ErrorCode::Csv);
  EXPECT_EQ(code_of([] { read_csv_file("/nonexistent/file.csv"); }), ErrorCode::InvalidArgument);
}

TEST(Csv, RoundTripIsExact) {
  DataMatrix d;
  d.names = {"u", "v", "w"};
  d.values.resize(2, 3);
  d.values << 0.1, 1.0 / 3.0, -1e-300, 6.02214076e23, -0.0, 123456789.123456789;
  std::ostringstream out;
  write_csv(out, d);
  const DataMatrix back = parse(out.str());
  EXPECT_EQ(back.names, d.names);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) EXPECT_EQ(back.values(i, j), d.values(i, j));
  }
}

TEST(Csv, RegressionLayout) {
  const DataMatrix d = parse("y,a,b,c\n1,2,3,4\n5,6,7,8\n");
  const RegressionProblem r = to_regression(d, {"y", {"c"}});
  EXPECT_EQ(r.y(1), 5.0);
  ASSERT_EQ(r.x_a.cols(), 1);
  EXPECT_EQ(r.x_a(0, 0), 4.0);
  ASSERT_EQ(r.x_b.cols(), 2);
  EXPECT_EQ(r.x_b(1, 1), 7.0);
  const RegressionProblem by_index = to_regression(d, {"1", {}});
  EXPECT_EQ(by_index.x_b.cols(), 3);
  EXPECT_EQ(code_of([&] { to_regression(d, {"z", {}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { to_regression(d, {"y", {"y"}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { to_regression(d, {"y", {"a", "b", "c"}}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(split_list(" a, b ,c"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(split_list("").empty());
}

TEST(Config, ParsesAllKeys) {
  const ParsedConfig c = parse_config_text(
      "# comment\n"
      "problem = regression\n"
      "n=80\nq=3\np=50\n"
      "scenario=I\nrho=0.3\n"
      "innovation=t5\n"
      "m=4\ntotal_sq_norm=1.5\nalpha=0.1\nreps=12\nseed=9\n"
      "methods=SUM,COM\n"
      "redraw_coefficients=true\n"
      "m_values=1,2,4\n");
  EXPECT_EQ(c.sim.problem, Problem::Regression);
  EXPECT_EQ(c.sim.n, 80);
  EXPECT_EQ(c.sim.q, 3);
  EXPECT_EQ(c.sim.p, 50);
  ASSERT_TRUE(std::holds_alternative<Ar1>(c.sim.scenario));
  EXPECT_DOUBLE_EQ(std::get<Ar1>(c.sim.scenario).rho, 0.3);
  EXPECT_EQ(std::get<Ar1>(c.sim.scenario).p, 50);
  EXPECT_EQ(innovation_name(c.sim.innovation), "t5");
  EXPECT_EQ(c.sim.alternative.m, 4);
  EXPECT_DOUBLE_EQ(c.sim.alternative.total_sq_norm, 1.5);
  EXPECT_DOUBLE_EQ(c.sim.alpha, 0.1);
  EXPECT_EQ(c.sim.reps, 12);
  EXPECT_EQ(c.sim.seed, 9u);
  EXPECT_EQ(c.sim.methods, (std::vector<Method>{Method::Sum, Method::Combo}));
  EXPECT_TRUE(c.sim.redraw_coefficients);
  EXPECT_FALSE(c.sim.redraw_scenario);
  EXPECT_EQ(c.m_values, (std::vector<int>{1, 2, 4}));
  const ParsedConfig again = parse_config_text(config_echo(c.sim));
  EXPECT_EQ(config_echo(again.sim), config_echo(c.sim));
}

TEST(Config, Errors) {
  EXPECT_EQ(code_of([] { parse_config_text("bogus=1\n"); }), ErrorCode::Config);
  EXPECT_EQ(code_of([] { parse_config_text("n=ten\n"); }), ErrorCode::Config);
  EXPECT_EQ(code_of([] { parse_config_text("no equals sign\n"); }), ErrorCode::Config);
  EXPECT_EQ(code_of([] { parse_methods("SUM,BOGUS"); }), ErrorCode::Config);
  EXPECT_EQ(code_of([] { parse_innovation("cauchy"); }), ErrorCode::Config);
  EXPECT_EQ(code_of([] { parse_scenario("IV", 10); }), ErrorCode::Config);
}

TEST(ErrorCodes, ExitStatusIsExhaustive) {
  std::set<std::string> names;
  for (ErrorCode code : kAllErrorCodes) {
    const int status = exit_code(code);
    EXPECT_EQ(status, kind_of(code) == ErrorKind::Validation ? 1 : 2);
    const std::string name(code_name(code));
    EXPECT_FALSE(name.empty());
    EXPECT_EQ(name.find_first_not_of("abcdefghijklmnopqrstuvwxyz_"), std::string::npos) << name;
    names.insert(name);
    const auto record = nlohmann::json::parse(cli::error_record(code, "msg"));
    EXPECT_EQ(record["error"], name);
    EXPECT_EQ(record["kind"], status == 1 ? "validation" : "numerical");
    EXPECT_EQ(record["message"], "msg");
  }
  EXPECT_EQ(names.size(), kAllErrorCodes.size());
  EXPECT_EQ(exit_code(ErrorCode::Config), 1);
  EXPECT_EQ(exit_code(ErrorCode::Singular), 2);
}

TEST(Cli, TestOneToyExample) {
  TempDir dir;
  const std::string data = dir.write("toy.csv", "1,0\n-1,0\n0,1\n0,-1\n");
  const CliResult r = run_cli({"test-one", "--data", data});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line, header, row;
  std::vector<std::string> echo;
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) == 0) {
      echo.push_back(line);
    } else if (header.empty()) {
      header = line;
    } else {
      row = line;
    }
  }
  EXPECT_EQ(header,
            "statistic,centered,p_sum,p_max,p_combo,decision_sum,decision_max,decision_combo,alpha");
  EXPECT_NE(r.out.find("# subcommand=test-one"), std::string::npos);
  EXPECT_NE(r.out.find("# shape=4x2"), std::string::npos);
  EXPECT_NE(r.out.find("# t_max_raw=0\n"), std::string::npos) << r.out;
  EXPECT_NEAR(std::stod(row.substr(0, row.find(','))), -3.0 * std::sqrt(3.0), 1e-9);
  EXPECT_EQ(row.substr(row.rfind(',') + 1), "0.050000000000000003");
}

TEST(Cli, TestTwoAndRegression) {
  TempDir dir;
  const std::string a = dir.write("a.csv", "x,y,z\n1,2,0\n2,1,1\n0,0,2\n3,1,1\n1,3,0\n");
  const std::string b = dir.write("b.csv", "x,y,z\n0,1,2\n1,0,1\n2,2,0\n1,1,3\n");
  CliResult r = run_cli({"test-two", "--data", a, "--data2", b});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# shape2=4x3"), std::string::npos);

  std::ostringstream text;
  text << "y,a,b1,b2,b3\n";
  for (int i = 0; i < 12; ++i) {
    text << std::sin(i) << ',' << 1 << ',' << std::cos(3 * i) << ',' << i % 3 << ','
         << std::sin(i * i) << '\n';
  }
  const std::string reg = dir.write("reg.csv", text.str());
  const std::string out = dir.file("reg_out.csv");
  r = run_cli({"test-reg", "--data", reg, "--response", "y", "--nuisance", "a", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string written = slurp(out);
  EXPECT_NE(written.find("# q=1"), std::string::npos);
  EXPECT_NE(written.find("# tested=3"), std::string::npos);
}

TEST(Cli, ErrorExitCodes) {
  TempDir dir;
  CliResult r = run_cli({"no-such-command"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "invalid_argument");

  r = run_cli({"test-one", "--data", dir.write("bad.csv", "1,x\n")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "csv");

  r = run_cli({"test-one", "--data", dir.write("flat.csv", "1,2\n1,3\n1,4\n1,0\n1,5\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(nlohmann::json::parse(r.err)["kind"], "numerical");

  r = run_cli({"test-one", "--data", dir.write("ok.csv", "1,2\n2,3\n0,1\n"), "--alpha", "1.5"});
  EXPECT_EQ(r.code, 1);

  r = run_cli({"simulate", "--config", dir.write("c.cfg", "problem=regression\nmethods=HC2\n")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "config");

  r = run_cli({"reproduce-table", "--table", "2", "--cell", "I,normal"});
  EXPECT_EQ(r.code, 1);

  r = run_cli({"power-curve", "--config", dir.write("p.cfg", "reps=5\n")});
  EXPECT_EQ(r.code, 1);

  r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("reproduce-table"), std::string::npos);
}

TEST(Cli, SimulateIsByteReproducible) {
  TempDir dir;
  const std::string cfg =
      dir.write("sim.cfg", "n=30\np=40\nscenario=II\ninnovation=mixture\nm=3\ntotal_sq_norm=1\n"
                           "reps=60\nseed=17\nmethods=SUM,MAX,COM,HC2,FLY\n");
  const CliResult a = run_cli({"simulate", "--config", cfg});
  const CliResult b = run_cli({"simulate", "--config", cfg});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("problem,scenario,innovation,n,p,q,m,method,rate,se,reps,seed"),
            std::string::npos);
  const CliResult c = run_cli({"simulate", "--config", cfg, "--seed", "18"});
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, PowerCurveAndChecks) {
  TempDir dir;
  const std::string cfg =
      dir.write("pc.cfg", "n=30\np=40\ntotal_sq_norm=1\nreps=40\nm_values=1,4\n");
  const CliResult r = run_cli({"power-curve", "--config", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# m_values=1,4"), std::string::npos);
  EXPECT_NE(r.out.find("one-sample,I,normal,30,40,0,4,COM,"), std::string::npos) << r.out;

  CliResult check = run_cli({"check-asymptotics", "--reps", "200", "--seed", "4"});
  ASSERT_EQ(check.code, 0) << check.err;
  auto doc = nlohmann::json::parse(check.out);
  EXPECT_EQ(doc["clt"]["sample_size"], 200);
  EXPECT_TRUE(doc["independence"].contains("skipped"));
  const std::string small = dir.write("ck.cfg", "scenario=identity\np=30\nn=40\n");
  check = run_cli({"check-asymptotics", "--config", small, "--reps", "1600"});
  ASSERT_EQ(check.code, 0) << check.err;
  doc = nlohmann::json::parse(check.out);
  EXPECT_EQ(doc["independence"]["levels"].size(), 3u);
  EXPECT_EQ(doc["config"]["scenario"], "identity");
}

TEST(Cli, TableCellConfig) {
  const SimConfig c = cli::table_cell_config("S1", "I,t5,n=100,p=400,n2=120");
  EXPECT_EQ(c.problem, Problem::TwoSample);
  EXPECT_EQ(c.n, 100);
  EXPECT_EQ(c.n2, 120);
  EXPECT_EQ(c.p, 400);
  EXPECT_EQ(innovation_name(c.innovation), "t5");
  EXPECT_EQ(code_of([] { cli::table_cell_config("3", "II,normal"); }), ErrorCode::Config);
  EXPECT_EQ(code_of([] { cli::table_cell_config("1", "I,normal,k=3"); }), ErrorCode::Config);
  EXPECT_EQ(code_of([] { cli::table_cell_config("1", "I,normal,n=abc"); }), ErrorCode::Config);
}

TEST(Cli, ReproduceTableFirstCell) {
  const CliResult r = run_cli({"reproduce-table", "--table", "1", "--cell",
                               "I,normal,n=100,p=200", "--methods", "COM", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto at = r.out.find("one-sample,I,normal,100,200,0,0,COM,");
  ASSERT_NE(at, std::string::npos) << r.out;
  std::istringstream row(r.out.substr(at));
  std::string field;
  for (int i = 0; i < 9; ++i) std::getline(row, field, ',');
  const double rate = std::stod(field);
  EXPECT_GE(rate, 0.043);
  EXPECT_LE(rate, 0.083);
  EXPECT_NE(r.out.find(",0.063\n"), std::string::npos);
}

}  // namespace
}  // namespace hdtest
