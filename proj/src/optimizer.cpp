#include "sqgain/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sqgain/analytic.hpp"
#include "sqgain/detector.hpp"
#include "sqgain/error.hpp"

namespace sqgain {

namespace {

constexpr double kGoldenTol = 1e-7;
constexpr int kLogPoints = 400;
constexpr int kLinearPoints = 300;
constexpr std::size_t kRefinedMinima = 3;

struct Point {
  double x;
  double f;
};

bool better(const Point& a, const Point& b) { return a.f < b.f || (a.f == b.f && a.x < b.x); }

Point golden_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Point best{c, fc};
  if (better(Point{d, fd}, best)) best = {d, fd};
  return best;
}

// Grid scan followed by golden refinement of the best few local minima.
Point multistart_minimize(const std::function<double(double)>& f, const std::vector<double>& grid,
                          double tol) {
  const std::size_t n = grid.size();
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = f(grid[i]);

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = i == 0 || vals[i] <= vals[i - 1];
    const bool right = i + 1 == n || vals[i] <= vals[i + 1];
    if (left && right) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) {
    return better(Point{grid[a], vals[a]}, Point{grid[b], vals[b]});
  });
  if (minima.size() > kRefinedMinima) minima.resize(kRefinedMinima);

  Point best{grid[minima.front()], vals[minima.front()]};
  for (std::size_t i : minima) {
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[std::min(i + 1, n - 1)];
    if (hi - lo <= tol) continue;
    const Point p = golden_minimize(f, lo, hi, tol);
    if (better(p, best)) best = p;
  }
  return best;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return v;
}

}  // namespace

BRange default_b_range() {
  const double t2 = kMaxTransmittance * kMaxTransmittance;
  return BRange{(1.0 - t2) / t2, 4.0};
}

void validate(const Branch& branch) {
  if (branch.ancilla != 0 && branch.ancilla != 1) throw DomainError("ancilla must be 0 or 1");
  if (branch.k < 0 || branch.k > AnalyticLimits{}.k_cap) {
    throw DomainError("k = " + std::to_string(branch.k) + " outside the supported range");
  }
  const DetectorModel det(branch.eta);
  if (det.eta() < 1.0) {
    if (branch.ancilla != 0) {
      throw UnsupportedError("lossy detection is modeled for the vacuum ancilla only");
    }
    if (branch.k % 2 != 0) throw UnsupportedError("lossy detection is modeled for even k only");
  }
}

double OptimizationResult::squeeze_out_dB() const { return squeezing_db(var_min); }

double branch_variance(const Branch& branch, double y, double B) {
  const StateSpec spec = StateSpec::from_input(branch.ancilla, branch.k, y, B);
  if (branch.eta < 1.0) return variance_eta(branch.k, spec.y1, B, branch.eta);
  return variance(spec);
}

double branch_probability(const Branch& branch, double y, double B) {
  const StateSpec spec = StateSpec::from_input(branch.ancilla, branch.k, y, B);
  if (branch.eta < 1.0) return probability_eta(branch.k, spec.y1, B, branch.eta);
  return probability(spec);
}

double branch_mean_photon(const Branch& branch, double y, double B) {
  const StateSpec spec = StateSpec::from_input(branch.ancilla, branch.k, y, B);
  if (branch.eta < 1.0) return mean_photon_eta(branch.k, spec.y1, B, branch.eta);
  return mean_photon(spec);
}

OptimizationResult evaluate_at(const Branch& branch, double S_dB, double B) {
  validate(branch);
  const SqueezeParams sq = squeeze_from_db(S_dB);
  OptimizationResult r;
  r.S_dB = S_dB;
  r.k = branch.k;
  r.ancilla = branch.ancilla;
  r.eta = branch.eta;
  r.B_opt = B;
  r.var_min = branch_variance(branch, sq.y, B);
  r.gain_dB = gain_db(r.var_min, smsv_variance(sq));
  r.prob = branch_probability(branch, sq.y, B);
  r.mean_n = branch_mean_photon(branch, sq.y, B);
  return r;
}

std::vector<double> b_grid(BRange range) {
  if (!(range.lo > 0.0) || !(range.hi > range.lo) || !std::isfinite(range.hi)) {
    throw DomainError("empty or invalid B range [" + std::to_string(range.lo) + ", " +
                      std::to_string(range.hi) + "]");
  }
  if (range.hi <= 1.0 || range.lo >= 1.0) {
    if (range.lo >= 1.0) return linspace(range.lo, range.hi, kLogPoints);
    std::vector<double> v = linspace(std::log(range.lo), std::log(range.hi), kLogPoints);
    for (double& x : v) x = std::exp(x);
    v.back() = range.hi;
    return v;
  }
  std::vector<double> v = linspace(std::log(range.lo), 0.0, kLogPoints);
  for (double& x : v) x = std::exp(x);
  v.front() = range.lo;
  v.back() = 1.0;
  const std::vector<double> upper = linspace(1.0, range.hi, kLinearPoints + 1);
  v.insert(v.end(), upper.begin() + 1, upper.end());
  return v;
}

OptimizationResult minimize_over_B(double S_dB, const Branch& branch, BRange range) {
  validate(branch);
  const SqueezeParams sq = squeeze_from_db(S_dB);
  const std::vector<double> grid = b_grid(range);
  if (sq.y / (1.0 + range.lo) >= AnalyticLimits{}.y1_guard) {
    throw DomainError("input squeezing too strong for the B range: y1 reaches the guard");
  }
  const auto objective = [&](double B) { return branch_variance(branch, sq.y, B); };
  const Point best = multistart_minimize(objective, grid, kGoldenTol);
  return evaluate_at(branch, S_dB, best.x);
}

std::vector<SweepRow> gain_curve(std::span<const double> S_grid, const Branch& branch,
                                 BRange range) {
  std::vector<SweepRow> rows;
  rows.reserve(S_grid.size());
  for (std::size_t i = 0; i < S_grid.size(); ++i) {
    if (i > 0 && !(S_grid[i] > S_grid[i - 1])) {
      throw DomainError("gain_curve: S grid must be strictly increasing");
    }
    rows.push_back(minimize_over_B(S_grid[i], branch, range));
  }
  return rows;
}

std::optional<double> gain_width(const Branch& branch, BRange range, double S_hi) {
  constexpr double kStep = 0.05;
  const auto gain = [&](double S) { return minimize_over_B(S, branch, range).gain_dB; };
  const int count = static_cast<int>(std::floor(S_hi / kStep + 1e-9));
  int last_positive = -1;
  for (int i = 1; i <= count; ++i) {
    if (gain(i * kStep) > 0.0) last_positive = i;
  }
  if (last_positive < 0) return std::nullopt;
  if (last_positive == count) return count * kStep;

  double lo = last_positive * kStep;  // gain > 0
  double hi = lo + kStep;             // gain <= 0
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (gain(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

OptimizationResult max_gain(const Branch& branch, BRange range, double S_lo, double S_hi) {
  validate(branch);
  if (!(S_hi > S_lo) || !(S_lo >= 0.0)) throw DomainError("max_gain: empty S interval");
  constexpr double kStep = 0.02;
  std::vector<double> grid;
  for (int i = 1;; ++i) {
    const double S = S_lo + i * kStep;
    if (S > S_hi + 1e-12) break;
    grid.push_back(std::min(S, S_hi));
  }
  if (grid.empty() || grid.back() < S_hi) grid.push_back(S_hi);
  const auto neg_gain = [&](double S) { return -minimize_over_B(S, branch, range).gain_dB; };
  const Point best = multistart_minimize(neg_gain, grid, 1e-6);
  return minimize_over_B(best.x, branch, range);
}

std::vector<BrightnessPoint> brightness_curve(std::span<const double> S_grid, int k, BRange range) {
  const Branch branch{k, 1, 1.0};
  std::vector<BrightnessPoint> out;
  out.reserve(S_grid.size());
  for (double S : S_grid) {
    if (!(S > 0.0)) throw DomainError("brightness_curve: S must be > 0");
    const OptimizationResult r = minimize_over_B(S, branch, range);
    const double base = squeeze_from_db(S).mean_n;
    out.push_back(BrightnessPoint{S, r.B_opt, r.mean_n, r.mean_n / base});
  }
  return out;
}

}  // namespace sqgain
