#include "pulsechain/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pulsechain/errors.hpp"

namespace pulsechain {
namespace {

// s_y x s_y in the |00>,|01>,|10>,|11> basis: (a, b, c, d) -> (-d, c, b, -a).
Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

std::uint64_t insert_zero_bit(std::uint64_t x, int position) {
  const std::uint64_t low = x & ((std::uint64_t{1} << position) - 1);
  return ((x >> position) << (position + 1)) | low;
}

}  // namespace

TwoQubitDensity TwoQubitDensity::from_pure(const Eigen::Vector4cd& psi) {
  return TwoQubitDensity(psi * psi.adjoint());
}

void TwoQubitDensity::validate(double tol) const {
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= tol)) {
    throw ValidationError("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double trace_dev = std::abs(entries_.trace() - Complex{1.0, 0.0});
  if (!(trace_dev <= tol)) {
    throw ValidationError("density matrix trace differs from 1 by " + std::to_string(trace_dev));
  }
}

TwoQubitDensity reduce_to_pair(const StateVector& state, int i, int j) {
  const int n = state.n_spins();
  if (i < 1 || j > n || i >= j) {
    throw IndexError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") invalid for a " + std::to_string(n) + "-spin chain");
  }
  const int pos_i = bit_position(n, i);
  const int pos_j = bit_position(n, j);  // pos_j < pos_i
  const std::uint64_t rest_count = std::uint64_t{1} << (n - 2);

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  Eigen::Vector4cd v;
  for (std::uint64_t rest = 0; rest < rest_count; ++rest) {
    const std::uint64_t base = insert_zero_bit(insert_zero_bit(rest, pos_j), pos_i);
    for (int a = 0; a < 4; ++a) {
      const std::uint64_t idx = base | (std::uint64_t(a >> 1) << pos_i) |
                                (std::uint64_t(a & 1) << pos_j);
      v(a) = state[idx];
    }
    rho.noalias() += v * v.adjoint();
  }
  return TwoQubitDensity(rho);
}

double concurrence(const TwoQubitDensity& rho) {
  rho.validate();
  // Decompose rho = V V^dagger; the lambdas are the singular values of the
  // symmetric matrix V^T (s_y x s_y) V. This avoids square roots of the
  // round-off sized eigenvalues of rho * rho_tilde near pure states.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho.entries());
  Eigen::Vector4d weights = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd v = eig.eigenvectors() * weights.cast<Complex>().asDiagonal();
  const Eigen::Matrix4cd tau = v.transpose() * spin_flip() * v;
  const Eigen::Vector4d s = Eigen::JacobiSVD<Eigen::Matrix4cd>(tau).singularValues();
  return std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0);
}

double concurrence_pure(const Eigen::Vector4cd& psi) {
  return std::min(1.0, std::abs((psi.transpose() * spin_flip() * psi)(0, 0)));
}

double purity(const TwoQubitDensity& rho) {
  rho.validate();
  return (rho.entries() * rho.entries()).trace().real();
}

double fidelity_pure(const StateVector& state, const StateVector& reference) {
  return std::norm(inner_product(reference, state));
}

}  // namespace pulsechain
