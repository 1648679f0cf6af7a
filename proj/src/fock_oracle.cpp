#include "sqgain/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqgain/error.hpp"

namespace sqgain {

namespace {

// Amplitudes of (a1'^dag)^n1 (a2'^dag)^n2 / sqrt(n1! n2!) |0,0> on |m, N-m>,
// where a1'^dag = t a1^dag - r a2^dag and a2'^dag = r a1^dag + t a2^dag.
// Every intermediate vector is a normalized rotated Fock state, so the
// entries stay bounded by one and no cancellation-prone sums appear.
std::vector<double> rotated_column(int n1, int n2, double t, double r) {
  std::vector<double> v{1.0};
  v.reserve(static_cast<std::size_t>(n1 + n2) + 1);
  auto raise = [&v](double c1, double c2, double inv_norm) {
    const int M = static_cast<int>(v.size()) - 1;
    std::vector<double> w(v.size() + 1, 0.0);
    for (int m = 0; m <= M; ++m) {
      const double x = v[static_cast<std::size_t>(m)];
      if (x == 0.0) continue;
      w[static_cast<std::size_t>(m) + 1] += c1 * std::sqrt(m + 1.0) * x;
      w[static_cast<std::size_t>(m)] += c2 * std::sqrt(M - m + 1.0) * x;
    }
    for (double& x : w) x *= inv_norm;
    v.swap(w);
  };
  for (int j = 1; j <= n1; ++j) raise(t, -r, 1.0 / std::sqrt(static_cast<double>(j)));
  for (int j = 1; j <= n2; ++j) raise(r, t, 1.0 / std::sqrt(static_cast<double>(j)));
  return v;
}

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("detector efficiency must lie in (0, 1], got " + std::to_string(eta));
  }
}

TwoModeVector split_with_ancilla(const FockVector& input, int ancilla,
                                 const BeamSplitterParams& bs, int k) {
  if (ancilla != 0 && ancilla != 1) throw DomainError("ancilla must be 0 or 1");
  if (k < 0 || 2 * k > input.n_max()) {
    throw DomainError("heralded photon number k = " + std::to_string(k) +
                      " must satisfy 0 <= k <= n_max/2");
  }
  const int n_total = input.n_max() + ancilla;
  TwoModeVector joint =
      TwoModeVector::product(input, fock_state(ancilla, ancilla), n_total);
  joint.tail_mass = input.tail_mass;
  return beam_split(joint, bs);
}

// Unnormalized mode-1 amplitudes conditioned on n photons in mode 2.
FockVector slice_mode2(const TwoModeVector& joint, int n) {
  FockVector out;
  out.amplitudes.assign(static_cast<std::size_t>(joint.n_max()) + 1, cplx{});
  for (int n1 = 0; n1 + n <= joint.n_max(); ++n1) {
    out.amplitudes[static_cast<std::size_t>(n1)] = joint.at(n1, n);
  }
  out.tail_mass = joint.tail_mass;
  return out;
}

}  // namespace

double FockVector::norm_squared() const {
  double s = 0.0;
  for (const cplx& a : amplitudes) s += std::norm(a);
  return s;
}

FockVector fock_state(int n, int n_max) {
  if (n < 0 || n > n_max) throw DomainError("fock_state: index outside [0, n_max]");
  FockVector v;
  v.amplitudes.assign(static_cast<std::size_t>(n_max) + 1, cplx{});
  v.amplitudes[static_cast<std::size_t>(n)] = 1.0;
  return v;
}

TwoModeVector::TwoModeVector(int n_max) {
  if (n_max < 0) throw DomainError("TwoModeVector: n_max must be >= 0");
  sectors_.resize(static_cast<std::size_t>(n_max) + 1);
  for (int N = 0; N <= n_max; ++N) sectors_[static_cast<std::size_t>(N)].assign(N + 1, cplx{});
}

TwoModeVector TwoModeVector::product(const FockVector& mode1, const FockVector& mode2,
                                     int n_max) {
  TwoModeVector out(n_max);
  for (int n1 = 0; n1 <= std::min(mode1.n_max(), n_max); ++n1) {
    const cplx a = mode1.amplitudes[static_cast<std::size_t>(n1)];
    if (a == cplx{}) continue;
    for (int n2 = 0; n2 <= mode2.n_max() && n1 + n2 <= n_max; ++n2) {
      out.at(n1, n2) = a * mode2.amplitudes[static_cast<std::size_t>(n2)];
    }
  }
  return out;
}

cplx& TwoModeVector::at(int n1, int n2) {
  return sectors_[static_cast<std::size_t>(n1 + n2)][static_cast<std::size_t>(n1)];
}

cplx TwoModeVector::at(int n1, int n2) const {
  return sectors_[static_cast<std::size_t>(n1 + n2)][static_cast<std::size_t>(n1)];
}

double TwoModeVector::norm_squared() const {
  double s = 0.0;
  for (const auto& sec : sectors_) {
    for (const cplx& a : sec) s += std::norm(a);
  }
  return s;
}

DensityMatrix DensityMatrix::from_pure(const FockVector& psi) {
  const auto n = static_cast<Eigen::Index>(psi.amplitudes.size());
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes.data(), n);
  return DensityMatrix(v * v.adjoint(), psi.tail_mass);
}

bool DensityMatrix::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

FockVector smsv_vector(double y, const TruncationConfig& cfg) {
  if (!(y >= 0.0 && y < 0.5)) throw DomainError("smsv_vector: y must lie in [0, 0.5)");
  if (cfg.n_max < 0) throw DomainError("smsv_vector: n_max must be >= 0");

  FockVector v;
  v.amplitudes.assign(static_cast<std::size_t>(cfg.n_max) + 1, cplx{});
  double a = std::pow(1.0 - 4.0 * y * y, 0.25);
  double tail = 0.0;
  for (int n = 0;; ++n) {
    const int idx = 2 * n;
    if (idx <= cfg.n_max) {
      v.amplitudes[static_cast<std::size_t>(idx)] = a;
    } else {
      tail += a * a;
      if (a * a <= 1e-34 || a == 0.0) break;
    }
    a *= y * std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) / (n + 1.0);
  }
  v.tail_mass = tail;
  if (tail >= cfg.tail_tol) {
    throw TruncationError("smsv_vector: mass beyond n_max = " + std::to_string(cfg.n_max) +
                              " is " + std::to_string(tail),
                          tail);
  }
  return v;
}

TwoModeVector beam_split(const TwoModeVector& state, const BeamSplitterParams& bs) {
  TwoModeVector out(state.n_max());
  out.tail_mass = state.tail_mass;
  for (int N = 0; N <= state.n_max(); ++N) {
    const auto in = state.sector(N);
    auto dst = out.sector(N);
    for (int n1 = 0; n1 <= N; ++n1) {
      const cplx c = in[static_cast<std::size_t>(n1)];
      if (c == cplx{}) continue;
      const std::vector<double> col = rotated_column(n1, N - n1, bs.t, bs.r);
      for (int m = 0; m <= N; ++m) dst[static_cast<std::size_t>(m)] += c * col[static_cast<std::size_t>(m)];
    }
  }
  return out;
}

HeraldResult herald_project(const FockVector& input, int ancilla, const BeamSplitterParams& bs,
                            int k) {
  const TwoModeVector joint = split_with_ancilla(input, ancilla, bs, k);
  HeraldResult res;
  res.state = slice_mode2(joint, k);
  res.probability = res.state.norm_squared();
  if (res.probability > 0.0) {
    const double s = 1.0 / std::sqrt(res.probability);
    for (cplx& a : res.state.amplitudes) a *= s;
  }
  return res;
}

std::vector<double> povm_element(int k, double eta, int n_max) {
  require_eta(eta);
  if (k < 0) throw DomainError("povm_element: k must be >= 0");
  std::vector<double> diag(static_cast<std::size_t>(std::max(n_max, 0)) + 1, 0.0);
  const double loss = 1.0 - eta;
  double binom = 1.0;  // C(n, k)
  for (int n = k; n <= n_max; ++n) {
    if (n > k) binom = binom * n / (n - k);
    diag[static_cast<std::size_t>(n)] = binom * std::pow(eta, k) * std::pow(loss, n - k);
  }
  return diag;
}

MixedHeraldResult herald_povm(const FockVector& input, int ancilla, const BeamSplitterParams& bs,
                              int k, double eta) {
  require_eta(eta);
  const TwoModeVector joint = split_with_ancilla(input, ancilla, bs, k);
  const int n_total = joint.n_max();
  const std::vector<double> weights = povm_element(k, eta, n_total);

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_total + 1, n_total + 1);
  for (int n = k; n <= n_total; ++n) {
    const double w = weights[static_cast<std::size_t>(n)];
    if (w == 0.0) continue;
    const FockVector phi = slice_mode2(joint, n);
    Eigen::Map<const Eigen::VectorXcd> v(phi.amplitudes.data(), n_total + 1);
    rho.noalias() += w * (v * v.adjoint());
  }
  MixedHeraldResult res;
  res.probability = rho.trace().real();
  if (res.probability > 0.0) rho /= res.probability;
  res.state = DensityMatrix(std::move(rho), input.tail_mass);
  return res;
}

namespace {

Observables finish(double mean_n, cplx a, cplx a2, std::vector<double> dist) {
  Observables o;
  o.mean_n = mean_n;
  o.mean_a = a;
  o.mean_a2 = a2;
  o.x1_var = (2.0 * mean_n + 1.0 + 2.0 * a2.real()) / 4.0 - a.real() * a.real();
  o.x2_var = (2.0 * mean_n + 1.0 - 2.0 * a2.real()) / 4.0 - a.imag() * a.imag();
  o.distribution = std::move(dist);
  return o;
}

void require_normalized(double norm) {
  if (std::abs(norm - 1.0) > 1e-9) {
    throw DomainError("observables: state is not normalized (norm " + std::to_string(norm) + ")");
  }
}

}  // namespace

Observables observables(const FockVector& psi) {
  require_normalized(psi.norm_squared());
  const auto& c = psi.amplitudes;
  const int n_max = psi.n_max();
  double mean_n = 0.0;
  cplx a{}, a2{};
  std::vector<double> dist(c.size());
  for (int n = 0; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    dist[i] = std::norm(c[i]);
    mean_n += n * dist[i];
    if (n + 1 <= n_max) a += std::conj(c[i]) * c[i + 1] * std::sqrt(n + 1.0);
    if (n + 2 <= n_max) a2 += std::conj(c[i]) * c[i + 2] * std::sqrt((n + 1.0) * (n + 2.0));
  }
  return finish(mean_n, a, a2, std::move(dist));
}

Observables observables(const DensityMatrix& rho) {
  require_normalized(rho.trace());
  const auto& m = rho.entries();
  const int n_max = rho.n_max();
  double mean_n = 0.0;
  cplx a{}, a2{};
  std::vector<double> dist(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    dist[static_cast<std::size_t>(n)] = m(n, n).real();
    mean_n += n * m(n, n).real();
    if (n >= 1) a += m(n, n - 1) * std::sqrt(static_cast<double>(n));
    if (n >= 2) a2 += m(n, n - 2) * std::sqrt(n * (n - 1.0));
  }
  return finish(mean_n, a, a2, std::move(dist));
}

double fidelity(const FockVector& a, const FockVector& b) {
  const std::size_t n = std::min(a.amplitudes.size(), b.amplitudes.size());
  cplx overlap{};
  for (std::size_t i = 0; i < n; ++i) overlap += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return std::norm(overlap);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const Eigen::Index n = std::max(a.entries().rows(), b.entries().rows());
  Eigen::MatrixXcd diff = Eigen::MatrixXcd::Zero(n, n);
  diff.topLeftCorner(a.entries().rows(), a.entries().cols()) += a.entries();
  diff.topLeftCorner(b.entries().rows(), b.entries().cols()) -= b.entries();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace sqgain
