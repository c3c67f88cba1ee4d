// qubit_ops.hpp — fixed 2x2 operators, density-matrix checks and CPTP
// channels on the system qubit.
//
// Basis order is (|0>, |1>) with sigma_z = |1><1| - |0><0| = diag(-1, +1);
// |0> and |1> are the pointer states and branch label 0 carries the
// positive-time phase under the interaction.

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dephasim/model.hpp"

namespace dephasim {

using Matrix2c = Eigen::Matrix2cd;

Matrix2c identity2();
Matrix2c pauli_x();
Matrix2c pauli_y();
Matrix2c pauli_z();
Matrix2c hadamard();

// |label><label| on the system
Matrix2c pointer_projector(int label);

// density matrix of a pure system state
Matrix2c pure_density(const SystemAmplitudes& sys);

// sign of the sigma_z eigenvalue of |label>: -1 for |0>, +1 for |1>
inline double sigma_z_value(int label) { return label == 0 ? -1.0 : 1.0; }

// Hermitian, unit trace, positive semidefinite (within tol)
bool is_density_matrix(const Matrix2c& rho, double tol = 1e-12);

bool is_unitary(const Matrix2c& m, double tol = 1e-12);

// <O> = tr(O rho)
Complex expectation(const Matrix2c& observable, const Matrix2c& rho);

// Completely positive trace-preserving map given by a Kraus list.
struct ControlChannel {
  std::string name;
  std::vector<Matrix2c> kraus;

  static ControlChannel identity();
  static ControlChannel spin_flip();   // sigma_x conjugation
  static ControlChannel phase_flip();  // sigma_z conjugation
  static ControlChannel unitary(std::string name, const Matrix2c& u);
  // validates sum K^dag K = 1 within 1e-12
  static ControlChannel from_kraus(std::string name, std::vector<Matrix2c> kraus);
};

Matrix2c apply_channel(const ControlChannel& channel, const Matrix2c& rho);

// Complete orthogonal projector set {P_n}: Hermitian, idempotent, mutually
// orthogonal, summing to the identity. Throws when violated.
void validate_projector_set(const std::vector<Matrix2c>& projectors, double tol = 1e-10);

std::vector<Matrix2c> pointer_projectors();

// sum_n P_n rho P_n
Matrix2c dephase(const Matrix2c& rho, const std::vector<Matrix2c>& projectors);

// (1/2) || rho - dephase(rho) ||_1; for the pointer projectors on a qubit
// this equals |rho_01|.
double dephasing_distance(const Matrix2c& rho, const std::vector<Matrix2c>& projectors);

}  // namespace dephasim
