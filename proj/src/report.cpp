#include "sqgain/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sqgain/analytic.hpp"
#include "sqgain/crosscheck.hpp"
#include "sqgain/error.hpp"
#include "sqgain/fock_oracle.hpp"
#include "sqgain/version.hpp"

namespace sqgain {

namespace {

const std::vector<std::string> kCommands = {"table1", "sweep", "optimize", "oracle-check",
                                            "distribution"};

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError("cannot parse " + what + " from '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

std::string s_range_text(const SRange& r) {
  if (r.step == 0.0) return format_number(r.lo);
  return format_number(r.lo) + ":" + format_number(r.hi) + ":" + format_number(r.step);
}

std::string b_range_text(const BRange& r) {
  return format_number(r.lo) + ":" + format_number(r.hi);
}

void write_header(std::ostream& out, const RunConfig& cfg,
                  const std::vector<std::string>& extra = {}) {
  out << "# sqgain " << kVersion << "\n";
  out << "# command=" << cfg.command << "\n";
  out << "# k=" << join_ints(cfg.k_list) << "\n";
  out << "# ancilla=" << cfg.ancilla << "\n";
  out << "# eta=" << format_number(cfg.eta) << "\n";
  if (cfg.s_range) out << "# s=" << s_range_text(*cfg.s_range) << "\n";
  if (cfg.b_range) out << "# b-range=" << b_range_text(*cfg.b_range) << "\n";
  if (!cfg.b_values.empty()) out << "# b=" << join_doubles(cfg.b_values) << "\n";
  out << "# nmax=" << cfg.n_max << "\n";
  if (!cfg.config_path.empty()) out << "# config=" << cfg.config_path << "\n";
  for (const auto& line : extra) out << "# " << line << "\n";
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << "\n";
}

RunConfig resolved(const RunConfig& cfg, std::vector<int> default_k, SRange default_s) {
  RunConfig r = cfg;
  if (r.k_list.empty()) r.k_list = std::move(default_k);
  if (!r.s_range) r.s_range = default_s;
  if (!r.b_range) r.b_range = default_b_range();
  return r;
}

std::vector<std::string> sweep_cells(const OptimizationResult& r) {
  return {format_number(r.S_dB),   std::to_string(r.k),         std::to_string(r.ancilla),
          format_number(r.eta),    format_number(r.B_opt),      format_number(r.var_min),
          format_number(r.squeeze_out_dB()), format_number(r.gain_dB), format_number(r.prob),
          format_number(r.mean_n)};
}

}  // namespace

std::vector<double> SRange::values() const {
  if (step == 0.0) return {lo};
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(count + 1));
  for (long i = 0; i <= count; ++i) v.push_back(lo + static_cast<double>(i) * step);
  return v;
}

SRange parse_s_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const double x = parse_double(parts[0], "S");
    return SRange{x, x, 0.0};
  }
  if (parts.size() != 3) throw UsageError("expected S as 'x' or 'lo:hi:step', got '" + text + "'");
  SRange r{parse_double(parts[0], "S lo"), parse_double(parts[1], "S hi"),
           parse_double(parts[2], "S step")};
  if (!(r.step > 0.0)) throw UsageError("S step must be positive");
  if (r.hi < r.lo) throw UsageError("S range is empty: hi < lo");
  return r;
}

BRange parse_b_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("expected B range as 'lo:hi', got '" + text + "'");
  BRange r{parse_double(parts[0], "B lo"), parse_double(parts[1], "B hi")};
  if (!(r.lo > 0.0) || !(r.hi > r.lo)) throw UsageError("B range must satisfy 0 < lo < hi");
  return r;
}

void validate(const RunConfig& cfg) {
  if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
    throw UsageError("unknown command '" + cfg.command + "'");
  }
  if (cfg.ancilla != 0 && cfg.ancilla != 1) throw UsageError("ancilla must be 0 or 1");
  if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) throw UsageError("eta must lie in (0, 1]");
  const int k_cap = AnalyticLimits{}.k_cap;
  for (int k : cfg.k_list) {
    if (k < 0 || k > k_cap) {
      throw UsageError("k = " + std::to_string(k) + " outside [0, " + std::to_string(k_cap) + "]");
    }
  }
  if (cfg.s_range) {
    const SRange& s = *cfg.s_range;
    if (!(s.lo >= 0.0)) throw UsageError("S must be non-negative");
    if (s.step < 0.0 || s.hi < s.lo) throw UsageError("invalid S range");
  }
  if (cfg.b_range && !(cfg.b_range->lo > 0.0 && cfg.b_range->hi > cfg.b_range->lo)) {
    throw UsageError("B range must satisfy 0 < lo < hi");
  }
  for (double b : cfg.b_values) {
    if (!(b > 0.0) || !std::isfinite(b)) throw UsageError("B values must be positive");
  }
  if (cfg.n_max < 10) throw UsageError("nmax must be at least 10");

  if (cfg.eta < 1.0 && (cfg.command == "sweep" || cfg.command == "optimize" ||
                        cfg.command == "oracle-check")) {
    if (cfg.ancilla != 0) throw UsageError("eta < 1 is modeled for ancilla 0 only");
    for (int k : cfg.k_list) {
      if (k % 2 != 0) throw UsageError("eta < 1 is modeled for even k only");
    }
  }
  if (cfg.command == "oracle-check") {
    const int k_max = cfg.k_list.empty() ? 2 : *std::max_element(cfg.k_list.begin(),
                                                                  cfg.k_list.end());
    if (cfg.n_max < 2 * k_max + 20) throw UsageError("oracle-check needs nmax >= 2k + 20");
  }
  if (cfg.command == "optimize" && cfg.s_range && !(cfg.s_range->hi > cfg.s_range->lo)) {
    throw UsageError("optimize needs an S interval lo:hi:step with hi > lo");
  }
  if (cfg.command == "distribution") {
    if (cfg.s_range && cfg.s_range->step != 0.0) {
      throw UsageError("distribution takes a single S value");
    }
    if (cfg.b_values.size() > 1) throw UsageError("distribution takes at most one B value");
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

const std::vector<Table1Reference>& table1_reference() {
  static const std::vector<Table1Reference> rows = {
      {2, 2.026, 0.02, 2.551, 1.267e-5},
      {4, 1.159, 0.02, 2.952, 2.213e-11},
      {6, 0.841, 0.02, 3.119, 1.92e-17},
  };
  return rows;
}

int cmd_table1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunConfig r = cfg;
  r.k_list = {2, 4, 6};
  r.ancilla = 0;
  r.eta = 1.0;
  if (!r.b_range) r.b_range = default_b_range();
  write_header(out, r,
               {"tolerances: gain " + format_number(kTable1GainTol) + " dB, B " +
                format_number(kTable1BTol) + ", prob " + format_number(kTable1ProbRelTol) +
                " relative"});
  write_row(out, {"k", "S_dB", "B_opt", "g_max_dB", "prob"});

  int failures = 0;
  for (const auto& ref : table1_reference()) {
    const OptimizationResult res = max_gain(Branch{ref.k, 0, 1.0}, *r.b_range);
    write_row(out, {std::to_string(ref.k), format_number(res.S_dB), format_number(res.B_opt),
                    format_number(res.gain_dB), format_number(res.prob)});

    const auto check = [&](const char* cell, double got, double want, double dev, double tol) {
      if (dev <= tol) return;
      ++failures;
      err << "table1 k=" << ref.k << " " << cell << ": got " << format_number(got)
          << ", expected " << format_number(want) << ", deviation " << format_number(dev)
          << " > " << format_number(tol) << "\n";
    };
    check("g_max_dB", res.gain_dB, ref.g_max_dB, std::abs(res.gain_dB - ref.g_max_dB),
          kTable1GainTol);
    check("B_opt", res.B_opt, ref.B_opt, std::abs(res.B_opt - ref.B_opt), kTable1BTol);
    check("prob", res.prob, ref.prob, std::abs(res.prob - ref.prob) / ref.prob,
          kTable1ProbRelTol);
  }
  if (failures > 0) {
    err << "table1: " << failures << " cell(s) outside tolerance\n";
    return kExitAcceptance;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const RunConfig r = resolved(cfg, {2}, SRange{0.1, 15.0, 0.1});
  const std::vector<double> S = r.s_range->values();
  // Compute everything before writing so a failure leaves no partial CSV.
  std::vector<SweepRow> rows;
  for (int k : r.k_list) {
    const auto part = gain_curve(S, Branch{k, r.ancilla, r.eta}, *r.b_range);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  write_header(out, r);
  write_row(out, {"S_dB", "k", "ancilla", "eta", "B_opt", "var_min", "squeeze_out_dB", "gain_dB",
                  "prob", "mean_n"});
  for (const auto& row : rows) write_row(out, sweep_cells(row));
  return kExitOk;
}

int cmd_optimize(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const RunConfig r = resolved(cfg, {2}, SRange{0.05, 6.0, 0.02});
  std::vector<std::vector<std::string>> rows;
  for (int k : r.k_list) {
    const Branch branch{k, r.ancilla, r.eta};
    const OptimizationResult best = max_gain(branch, *r.b_range, r.s_range->lo, r.s_range->hi);
    const std::optional<double> width = gain_width(branch, *r.b_range);
    rows.push_back({std::to_string(k), std::to_string(r.ancilla), format_number(r.eta),
                    format_number(best.S_dB), format_number(best.B_opt),
                    format_number(best.gain_dB), format_number(best.squeeze_out_dB()),
                    format_number(best.prob), format_number(best.mean_n),
                    width ? format_number(*width) : ""});
  }
  write_header(out, r, {"width: upper zero crossing of the gain on S in (0, 15]"});
  write_row(out, {"k", "ancilla", "eta", "S_opt_dB", "B_opt", "g_max_dB", "squeeze_out_dB", "prob",
                  "mean_n", "width_dB"});
  for (const auto& row : rows) write_row(out, row);
  return kExitOk;
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunConfig r = resolved(cfg, {2}, SRange{2.0, 2.0, 0.0});
  if (r.b_values.empty()) r.b_values = {0.1};
  r.b_range.reset();
  const TruncationConfig trunc{r.n_max, TruncationConfig{}.tail_tol};

  std::vector<OracleComparison> results;
  for (int k : r.k_list) {
    for (double S : r.s_range->values()) {
      for (double B : r.b_values) {
        results.push_back(compare_with_oracle(OraclePoint{S, B, k, r.ancilla, r.eta}, trunc));
      }
    }
  }

  write_header(out, r, {"tail_tol=" + format_number(trunc.tail_tol)});
  write_row(out, {"S_dB", "B", "k", "ancilla", "eta", "var_closed", "var_oracle", "var_dev",
                  "var_tol", "prob_closed", "prob_oracle", "prob_rel_dev", "prob_rel_tol",
                  "mean_closed", "mean_oracle", "mean_dev", "mean_tol", "state_dev", "state_tol",
                  "input_tail", "conditional_tail", "status"});
  bool truncation_bad = false;
  bool deviation_bad = false;
  double max_var = 0.0, max_prob = 0.0, max_mean = 0.0, max_state = 0.0;
  for (const auto& c : results) {
    const bool healthy = c.truncation_healthy(trunc.tail_tol);
    const bool ok = c.within_tolerance();
    truncation_bad = truncation_bad || !healthy;
    deviation_bad = deviation_bad || !ok;
    max_var = std::max(max_var, c.var_dev());
    max_prob = std::max(max_prob, c.prob_rel_dev());
    max_mean = std::max(max_mean, c.mean_dev());
    max_state = std::max(max_state, c.state_dev);
    const auto& p = c.point;
    write_row(out, {format_number(p.S_dB), format_number(p.B), std::to_string(p.k),
                    std::to_string(p.ancilla), format_number(p.eta), format_number(c.var_closed),
                    format_number(c.var_oracle), format_number(c.var_dev()),
                    format_number(c.var_tol), format_number(c.prob_closed),
                    format_number(c.prob_oracle), format_number(c.prob_rel_dev()),
                    format_number(c.prob_rel_tol), format_number(c.mean_closed),
                    format_number(c.mean_oracle), format_number(c.mean_dev()),
                    format_number(c.mean_tol), format_number(c.state_dev),
                    format_number(c.state_tol), format_number(c.input_tail),
                    format_number(c.conditional_tail),
                    !healthy ? "truncation" : (ok ? "ok" : "deviation")});
  }
  err << "oracle-check: " << results.size() << " point(s); max var_dev "
      << format_number(max_var) << ", max prob_rel_dev " << format_number(max_prob)
      << ", max mean_dev " << format_number(max_mean) << ", max state_dev "
      << format_number(max_state) << "\n";
  if (truncation_bad) {
    err << "oracle-check: truncation tail above " << format_number(trunc.tail_tol)
        << "; raise --nmax\n";
    return kExitTruncation;
  }
  return deviation_bad ? kExitAcceptance : kExitOk;
}

int cmd_distribution(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  RunConfig r = resolved(cfg, {1, 3}, SRange{5.0, 5.0, 0.0});
  r.k_list = {1, 3};
  r.ancilla = 1;
  r.eta = 1.0;
  const double S = r.s_range->lo;
  const SqueezeParams sq = squeeze_from_db(S);
  const TruncationConfig trunc{r.n_max, TruncationConfig{}.tail_tol};

  std::vector<double> B(2);
  for (std::size_t i = 0; i < 2; ++i) {
    B[i] = r.b_values.empty()
               ? minimize_over_B(S, Branch{r.k_list[i], 1, 1.0}, *r.b_range).B_opt
               : r.b_values.front();
  }
  const FockVector smsv = smsv_vector(sq.y, trunc);
  const FockCoeffs k1 = state_coefficients(StateSpec::from_input(1, 1, sq.y, B[0]), r.n_max,
                                           trunc.tail_tol);
  const FockCoeffs k3 = state_coefficients(StateSpec::from_input(1, 3, sq.y, B[1]), r.n_max,
                                           trunc.tail_tol);

  write_header(out, r, {"B_k1=" + format_number(B[0]), "B_k3=" + format_number(B[1])});
  write_row(out, {"n", "P_SMSV", "P_k1", "P_k3"});
  for (int n = 0; n <= r.n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    write_row(out, {std::to_string(n), format_number(std::norm(smsv.amplitudes[i])),
                    format_number(k1.coeffs[i] * k1.coeffs[i]),
                    format_number(k3.coeffs[i] * k3.coeffs[i])});
  }
  return kExitOk;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    std::ofstream file;
    std::ostringstream buffer;
    std::ostream& sink = cfg.out_path.empty() ? out : static_cast<std::ostream&>(buffer);
    int code = kExitOk;
    if (cfg.command == "table1") {
      code = cmd_table1(cfg, sink, err);
    } else if (cfg.command == "sweep") {
      code = cmd_sweep(cfg, sink, err);
    } else if (cfg.command == "optimize") {
      code = cmd_optimize(cfg, sink, err);
    } else if (cfg.command == "oracle-check") {
      code = cmd_oracle_check(cfg, sink, err);
    } else {
      code = cmd_distribution(cfg, sink, err);
    }
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot open output file '" + cfg.out_path + "'");
      file << buffer.str();
    }
    return code;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << " (tail mass " << format_number(e.tail_mass()) << ")\n";
    return kExitTruncation;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace sqgain
