#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sqgain/report.hpp"

using namespace sqgain;

namespace {

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    REQUIRE(it != columns.end());
    return static_cast<std::size_t>(it - columns.begin());
  }
  double num(std::size_t row, const std::string& name) const {
    return std::stod(rows[row][col(name)]);
  }
};

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string c;
  while (std::getline(ss, c, ',')) out.push_back(c);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Csv parse(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("#", 0) == 0) {
      csv.comments.push_back(line);
    } else if (csv.columns.empty()) {
      csv.columns = cells(line);
    } else {
      csv.rows.push_back(cells(line));
    }
  }
  return csv;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(RunConfig cfg) {
  std::ostringstream out, err;
  const int code = run_command(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  return cfg;
}

}  // namespace

TEST_CASE("S range parsing") {
  const SRange r = parse_s_range("0.1:5:0.1");
  CHECK(r.values().size() == 50);
  CHECK(r.values().back() == doctest::Approx(5.0));
  CHECK(parse_s_range("2.5").values() == std::vector<double>{2.5});
  CHECK(parse_s_range("1:1:0.5").values().size() == 1);
  CHECK_THROWS_AS(parse_s_range("5:1:0.1"), UsageError);
  CHECK_THROWS_AS(parse_s_range("1:5:0"), UsageError);
  CHECK_THROWS_AS(parse_s_range("1:5"), UsageError);
  CHECK_THROWS_AS(parse_s_range("abc"), UsageError);
  CHECK_THROWS_AS(parse_s_range("1x"), UsageError);
}

TEST_CASE("B range parsing") {
  const BRange r = parse_b_range("0.01:2");
  CHECK(r.lo == 0.01);
  CHECK(r.hi == 2.0);
  CHECK_THROWS_AS(parse_b_range("0:2"), UsageError);
  CHECK_THROWS_AS(parse_b_range("2:1"), UsageError);
  CHECK_THROWS_AS(parse_b_range("1"), UsageError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1 + 0.2) == "0.3");
  CHECK(format_number(1.267e-5) == "1.267e-05");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("sweep rows and header") {
  RunConfig cfg = config("sweep");
  cfg.k_list = {2};
  cfg.s_range = parse_s_range("0.1:5:0.1");
  const Run r = run(cfg);
  REQUIRE(r.code == kExitOk);
  const Csv csv = parse(r.out);
  CHECK(csv.comments.front() == "# sqgain 0.1.0");
  CHECK(std::find(csv.comments.begin(), csv.comments.end(), "# s=0.1:5:0.1") !=
        csv.comments.end());
  CHECK(csv.columns == std::vector<std::string>{"S_dB", "k", "ancilla", "eta", "B_opt", "var_min",
                                                "squeeze_out_dB", "gain_dB", "prob", "mean_n"});
  REQUIRE(csv.rows.size() == 50);
  for (std::size_t i = 1; i < csv.rows.size(); ++i) {
    CHECK(csv.num(i, "S_dB") > csv.num(i - 1, "S_dB"));
  }
  CHECK(csv.rows[2][0] == "0.3");
}

TEST_CASE("sweep output is byte-identical across runs") {
  RunConfig cfg = config("sweep");
  cfg.k_list = {2, 4};
  cfg.s_range = parse_s_range("0.5:3:0.5");
  CHECK(run(cfg).out == run(cfg).out);
}

TEST_CASE("added-photon sweep changes sign") {
  RunConfig cfg = config("sweep");
  cfg.k_list = {3};
  cfg.ancilla = 1;
  const Run r = run(cfg);
  REQUIRE(r.code == kExitOk);
  const Csv csv = parse(r.out);
  bool positive = false;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double S = csv.num(i, "S_dB");
    const double g = csv.num(i, "gain_dB");
    if (g > 0) positive = true;
    if (S > 5.3) CHECK(g < 0.0);
  }
  CHECK(positive);
}

TEST_CASE("usage errors") {
  CHECK(run(config("bogus")).code == kExitUsage);
  RunConfig cfg = config("sweep");
  cfg.k_list = {12};
  CHECK(run(cfg).code == kExitUsage);
  cfg = config("sweep");
  cfg.eta = 0.9;
  cfg.k_list = {3};
  CHECK(run(cfg).code == kExitUsage);
  cfg = config("sweep");
  cfg.ancilla = 3;
  CHECK(run(cfg).code == kExitUsage);
  cfg = config("oracle-check");
  cfg.k_list = {6};
  cfg.n_max = 31;
  CHECK(run(cfg).code == kExitUsage);
  cfg = config("sweep");
  cfg.s_range = SRange{40.0, 40.0, 0.0};
  cfg.b_range = BRange{1e-4, 4.0};
  CHECK(run(cfg).code == kExitUsage);
}

TEST_CASE("oracle-check exit codes") {
  RunConfig cfg = config("oracle-check");
  Run r = run(cfg);
  CHECK(r.code == kExitOk);
  CHECK(parse(r.out).rows.size() == 1);
  CHECK(r.err.find("max var_dev") != std::string::npos);

  cfg.k_list = {6};
  cfg.s_range = SRange{8.0, 8.0, 0.0};
  cfg.b_values = {0.02};
  r = run(cfg);
  CHECK(r.code == kExitTruncation);
  CHECK(parse(r.out).rows.at(0).back() == "truncation");

  cfg.n_max = 200;
  CHECK(run(cfg).code == kExitOk);
}

TEST_CASE("distribution") {
  RunConfig cfg = config("distribution");
  Run r0 = run(cfg);
  CHECK(r0.code == kExitOk);
  CHECK(r0.out.find("# s=5\n") != std::string::npos);
  cfg.s_range = SRange{5.0, 5.0, 0.0};
  Run r = run(cfg);
  REQUIRE(r.code == kExitOk);
  Csv csv = parse(r.out);
  CHECK(csv.columns == std::vector<std::string>{"n", "P_SMSV", "P_k1", "P_k3"});
  CHECK(csv.rows.size() == 81);
  for (const char* column : {"P_SMSV", "P_k1", "P_k3"}) {
    double sum = 0.0;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) sum += csv.num(i, column);
    CHECK(std::abs(sum - 1.0) < 1e-10);
  }
  std::size_t mode_smsv = 0, mode_k3 = 0;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    if (csv.num(i, "P_SMSV") > csv.num(mode_smsv, "P_SMSV")) mode_smsv = i;
    if (csv.num(i, "P_k3") > csv.num(mode_k3, "P_k3")) mode_k3 = i;
  }
  CHECK(mode_smsv == 0);
  CHECK(mode_k3 > 0);

  cfg.b_values = {1e-8};
  r = run(cfg);
  REQUIRE(r.code == kExitOk);
  csv = parse(r.out);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    CHECK(std::abs(csv.num(i, "P_SMSV") - csv.num(i, "P_k1")) < 1e-6);
  }

  cfg.s_range = parse_s_range("1:2:0.5");
  CHECK(run(cfg).code == kExitUsage);
}

TEST_CASE("optimize reports the maximum and the width") {
  RunConfig cfg = config("optimize");
  cfg.k_list = {2};
  const Run r = run(cfg);
  REQUIRE(r.code == kExitOk);
  const Csv csv = parse(r.out);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.num(0, "g_max_dB") > 2.5);
  CHECK(csv.num(0, "width_dB") == doctest::Approx(5.0).epsilon(0.06));
}

TEST_CASE("table1 layout") {
  const Run r = run(config("table1"));
  CHECK((r.code == kExitOk || r.code == kExitAcceptance));
  const Csv csv = parse(r.out);
  CHECK(csv.columns == std::vector<std::string>{"k", "S_dB", "B_opt", "g_max_dB", "prob"});
  REQUIRE(csv.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& ref = table1_reference()[i];
    CHECK(csv.rows[i][0] == std::to_string(ref.k));
    CHECK(std::abs(csv.num(i, "g_max_dB") - ref.g_max_dB) <= kTable1GainTol);
    CHECK(std::abs(csv.num(i, "B_opt") - ref.B_opt) <= kTable1BTol);
  }
  if (r.code == kExitAcceptance) CHECK(r.err.find("table1 k=") != std::string::npos);
}

TEST_CASE("output file") {
  RunConfig cfg = config("oracle-check");
  cfg.out_path = "report_test_out.csv";
  const Run r = run(cfg);
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(cfg.out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().rfind("# sqgain", 0) == 0);
  std::remove(cfg.out_path.c_str());

  cfg.out_path = "/nonexistent-dir/x.csv";
  CHECK(run(cfg).code == kExitUsage);
}
