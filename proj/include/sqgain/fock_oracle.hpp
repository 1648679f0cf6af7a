#pragma once

// Brute-force reference model in a truncated two-mode Fock space. Nothing in
// here uses the closed forms of analytic.hpp; it builds the input state,
// applies the beam-splitter unitary sector by sector and heralds on mode 2.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sqgain/analytic.hpp"

namespace sqgain {

using cplx = std::complex<double>;

struct TruncationConfig {
  int n_max = 80;          ///< Fock cutoff (total photon number in two-mode space)
  double tail_tol = 1e-12; ///< acceptable probability mass beyond n_max
};

/// Single-mode state on |0> .. |n_max>. `tail_mass` is the probability the
/// untruncated state carries beyond n_max.
struct FockVector {
  std::vector<cplx> amplitudes;
  double tail_mass = 0.0;

  int n_max() const { return static_cast<int>(amplitudes.size()) - 1; }
  double norm_squared() const;
};

FockVector fock_state(int n, int n_max);

/// Two-mode pure state restricted to n1 + n2 <= n_max, stored per
/// total-photon-number sector: sector N holds amplitudes of |n1, N - n1>.
class TwoModeVector {
public:
  explicit TwoModeVector(int n_max);

  /// mode1 (x) mode2, dropping components with n1 + n2 > n_max.
  static TwoModeVector product(const FockVector& mode1, const FockVector& mode2, int n_max);

  int n_max() const { return static_cast<int>(sectors_.size()) - 1; }
  cplx& at(int n1, int n2);
  cplx at(int n1, int n2) const;
  std::span<cplx> sector(int N) { return sectors_[static_cast<std::size_t>(N)]; }
  std::span<const cplx> sector(int N) const { return sectors_[static_cast<std::size_t>(N)]; }
  double norm_squared() const;

  double tail_mass = 0.0;

private:
  std::vector<std::vector<cplx>> sectors_;
};

class DensityMatrix {
public:
  DensityMatrix() = default;
  explicit DensityMatrix(Eigen::MatrixXcd entries, double tail_mass = 0.0)
      : entries_(std::move(entries)), tail_mass_(tail_mass) {}

  static DensityMatrix from_pure(const FockVector& psi);

  const Eigen::MatrixXcd& entries() const { return entries_; }
  int n_max() const { return static_cast<int>(entries_.rows()) - 1; }
  double tail_mass() const { return tail_mass_; }

  double trace() const { return entries_.trace().real(); }
  bool is_hermitian(double tol = 1e-12) const;
  double min_eigenvalue() const;

private:
  Eigen::MatrixXcd entries_;
  double tail_mass_ = 0.0;
};

/// SMSV with parameter y, amplitudes y^n sqrt((2n)!)/n! / sqrt(cosh s) on |2n>.
/// Throws TruncationError when the mass beyond cfg.n_max reaches cfg.tail_tol.
FockVector smsv_vector(double y, const TruncationConfig& cfg = {});

/// Exact beam-splitter unitary with a1^dag -> t a1^dag - r a2^dag and
/// a2^dag -> r a1^dag + t a2^dag, applied independently in every sector.
TwoModeVector beam_split(const TwoModeVector& state, const BeamSplitterParams& bs);

struct HeraldResult {
  FockVector state;          ///< normalized conditional state of mode 1 (zero if probability == 0)
  double probability = 0.0;  ///< outcome probability
};

/// input (x) |ancilla>, beam splitter, projection of mode 2 onto |k>.
HeraldResult herald_project(const FockVector& input, int ancilla, const BeamSplitterParams& bs,
                            int k);

struct MixedHeraldResult {
  DensityMatrix state;
  double probability = 0.0;
};

/// Diagonal of the binomial-loss POVM element for k registered photons:
/// Pi_k = sum_{n>=k} C(n,k) eta^k (1-eta)^(n-k) |n><n|.
std::vector<double> povm_element(int k, double eta, int n_max);

/// Same setup as herald_project, but mode 2 is measured by a detector with
/// efficiency eta and traced out.
MixedHeraldResult herald_povm(const FockVector& input, int ancilla, const BeamSplitterParams& bs,
                              int k, double eta);

struct Observables {
  double mean_n = 0.0;
  cplx mean_a{};
  cplx mean_a2{};
  double x1_var = 0.0;
  double x2_var = 0.0;
  std::vector<double> distribution;
};

/// Throws DomainError if the state is not normalized to 1e-9.
Observables observables(const FockVector& psi);
Observables observables(const DensityMatrix& rho);

/// |<a|b>|^2 over the common index range.
double fidelity(const FockVector& a, const FockVector& b);

/// Half the trace norm of a - b (matrices are zero-padded to a common size).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace sqgain
