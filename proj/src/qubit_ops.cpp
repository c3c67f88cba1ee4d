#include "dephasim/qubit_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace dephasim {

namespace {
const Complex kI{0.0, 1.0};
}

Matrix2c identity2() { return Matrix2c::Identity(); }

Matrix2c pauli_x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2c pauli_y() {
  Matrix2c m;
  m << 0, -kI, kI, 0;
  return m;
}

Matrix2c pauli_z() {
  // paper-basis convention: sigma_z |0> = -|0>, sigma_z |1> = +|1>
  Matrix2c m;
  m << -1, 0, 0, 1;
  return m;
}

Matrix2c hadamard() {
  Matrix2c m;
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

Matrix2c pointer_projector(int label) {
  if (label != 0 && label != 1) {
    throw std::invalid_argument("pointer label must be 0 or 1");
  }
  Matrix2c m = Matrix2c::Zero();
  m(label, label) = 1.0;
  return m;
}

Matrix2c pure_density(const SystemAmplitudes& sys) {
  Eigen::Vector2cd v;
  v << sys.alpha, sys.beta;
  return v * v.adjoint();
}

bool is_density_matrix(const Matrix2c& rho, double tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(0.5 * (rho + rho.adjoint()));
  return es.eigenvalues().minCoeff() >= -tol;
}

bool is_unitary(const Matrix2c& m, double tol) {
  return (m.adjoint() * m - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Complex expectation(const Matrix2c& observable, const Matrix2c& rho) {
  return (observable * rho).trace();
}

ControlChannel ControlChannel::identity() { return unitary("identity", identity2()); }

ControlChannel ControlChannel::spin_flip() { return unitary("flip", pauli_x()); }

ControlChannel ControlChannel::phase_flip() { return unitary("phase", pauli_z()); }

ControlChannel ControlChannel::unitary(std::string name, const Matrix2c& u) {
  if (!is_unitary(u)) {
    throw std::invalid_argument("control operator is not unitary");
  }
  return ControlChannel{std::move(name), {u}};
}

ControlChannel ControlChannel::from_kraus(std::string name, std::vector<Matrix2c> kraus) {
  if (kraus.empty()) {
    throw std::invalid_argument("channel needs at least one Kraus operator");
  }
  Matrix2c sum = Matrix2c::Zero();
  for (const Matrix2c& k : kraus) {
    if (!k.allFinite()) throw std::invalid_argument("Kraus operator has non-finite entries");
    sum += k.adjoint() * k;
  }
  if ((sum - Matrix2c::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("Kraus operators do not resolve the identity");
  }
  return ControlChannel{std::move(name), std::move(kraus)};
}

Matrix2c apply_channel(const ControlChannel& channel, const Matrix2c& rho) {
  Matrix2c out = Matrix2c::Zero();
  for (const Matrix2c& k : channel.kraus) {
    out += k * rho * k.adjoint();
  }
  return out;
}

void validate_projector_set(const std::vector<Matrix2c>& projectors, double tol) {
  if (projectors.empty()) {
    throw std::invalid_argument("projector set is empty");
  }
  Matrix2c sum = Matrix2c::Zero();
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const Matrix2c& p = projectors[i];
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("projector is not Hermitian");
    }
    if ((p * p - p).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("projector is not idempotent");
    }
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if ((p * projectors[j]).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("projectors are not mutually orthogonal");
      }
    }
    sum += p;
  }
  if ((sum - Matrix2c::Identity()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("projectors do not sum to the identity");
  }
}

std::vector<Matrix2c> pointer_projectors() {
  return {pointer_projector(0), pointer_projector(1)};
}

Matrix2c dephase(const Matrix2c& rho, const std::vector<Matrix2c>& projectors) {
  Matrix2c out = Matrix2c::Zero();
  for (const Matrix2c& p : projectors) {
    out += p * rho * p;
  }
  return out;
}

double dephasing_distance(const Matrix2c& rho, const std::vector<Matrix2c>& projectors) {
  const Matrix2c diff = rho - dephase(rho, projectors);
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(0.5 * (diff + diff.adjoint()));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace dephasim
