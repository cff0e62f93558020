#pragma once

#include <Eigen/Dense>

#include "pulsechain/state.hpp"

namespace pulsechain {

/// Reduced state of two spins, basis order |00>, |01>, |10>, |11> with the
/// lower-numbered spin first.
class TwoQubitDensity {
 public:
  using Matrix = Eigen::Matrix4cd;

  TwoQubitDensity() : entries_(Matrix::Zero()) {}
  explicit TwoQubitDensity(const Matrix& entries) : entries_(entries) {}

  /// |psi><psi| for a two-spin pure state.
  static TwoQubitDensity from_pure(const Eigen::Vector4cd& psi);

  const Matrix& entries() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  /// Throws ValidationError if Hermiticity or unit trace is violated beyond `tol`.
  void validate(double tol = 1e-9) const;

 private:
  Matrix entries_;
};

/// Partial trace of |state><state| over every spin except i and j (1 <= i < j <= N).
TwoQubitDensity reduce_to_pair(const StateVector& state, int i, int j);

/// Wootters concurrence, max(0, l1 - l2 - l3 - l4).
double concurrence(const TwoQubitDensity& rho);

/// |<psi| s_y x s_y |psi*>| for a normalised two-spin pure state.
double concurrence_pure(const Eigen::Vector4cd& psi);

/// Tr(rho^2).
double purity(const TwoQubitDensity& rho);

/// |<reference|state>|^2.
double fidelity_pure(const StateVector& state, const StateVector& reference);

}  // namespace pulsechain
