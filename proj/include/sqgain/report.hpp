#pragma once

// CSV reports behind the sqgain command-line tool. Every command writes a
// '#'-prefixed header with the resolved configuration, then plain CSV with
// 12 significant digits.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqgain/optimizer.hpp"

namespace sqgain {

enum ExitCode : int {
  kExitOk = 0,
  kExitAcceptance = 1,
  kExitUsage = 2,
  kExitTruncation = 3,
};

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Inclusive arithmetic grid lo, lo+step, ... <= hi. A single value parses
/// as lo = hi with step 0.
struct SRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

/// "x" or "lo:hi:step". Throws UsageError.
SRange parse_s_range(const std::string& text);
/// "lo:hi". Throws UsageError.
BRange parse_b_range(const std::string& text);

struct RunConfig {
  std::string command;
  std::vector<int> k_list;            ///< empty: command default
  int ancilla = 0;
  double eta = 1.0;
  std::optional<SRange> s_range;      ///< unset: command default
  std::optional<BRange> b_range;      ///< unset: default_b_range()
  std::vector<double> b_values;       ///< oracle-check / distribution fixed B
  int n_max = 80;
  std::string out_path;               ///< empty: stdout
  std::string config_path;
};

/// Rejects anything the numerical modules would refuse. Throws UsageError.
void validate(const RunConfig& cfg);

/// printf("%.12g"), with "nan"/"inf" spelled out.
std::string format_number(double x);

struct Table1Reference {
  int k;
  double S_dB;
  double B_opt;
  double g_max_dB;
  double prob;
};

/// Reference optimum rows for k = 2, 4, 6.
const std::vector<Table1Reference>& table1_reference();

inline constexpr double kTable1GainTol = 0.01;
inline constexpr double kTable1BTol = 0.005;
inline constexpr double kTable1ProbRelTol = 0.02;

// Each command writes CSV to `out` and diagnostics to `err`, and returns an ExitCode.
int cmd_table1(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_optimize(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_distribution(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Validates, dispatches on cfg.command and maps exceptions to exit codes.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace sqgain
