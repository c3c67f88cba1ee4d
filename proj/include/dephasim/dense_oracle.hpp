// dense_oracle.hpp — brute-force state-vector simulator.
//
// Keeps the full amplitude vector over (system) x (environment particles) and
// implements evolution, local system operators, partial traces, entropies and
// mutual information by direct linear algebra. Dichotomic particles are exact
// two-level subsystems; Lorentzian particles are discretized on a uniform
// position grid. Serves as the independent check of the branch-ledger engine.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "dephasim/model.hpp"
#include "dephasim/qubit_ops.hpp"

namespace dephasim {
namespace oracle {

// Uniform position grid over [-cutoff, cutoff] with `points` cells, sampled
// at cell midpoints (keeps the grid symmetric under q -> -q).
struct GridSpec {
  double cutoff = 0.0;
  int points = 0;

  static GridSpec of(double cutoff, int points);
};

// Convergence-backed default for Lorentzian particles: cutoff 1000 * gamma,
// 2^15 cells keeps single-particle characteristic functions within a few
// 1e-4 of the exact exponential over interaction times up to 5 / rate.
GridSpec default_grid(const EnvParticle& particle);

struct OracleState {
  ModelPtr params;
  std::vector<Eigen::Index> dims;        // (2, d_1, ..., d_N)
  std::vector<Eigen::VectorXd> qgrids;   // position eigenvalues per particle
  Eigen::VectorXd env_qsum;              // sum_j g_j q_j per environment index
  Eigen::VectorXcd amps;                 // length 2 * prod(d_j)

  Eigen::Index env_dim() const { return env_qsum.size(); }
};

// Product state: system amplitudes (x) per-particle initial states.
// Lorentzian particles require a grid (same spec for all of them); dichotomic
// particles ignore it.
OracleState build_initial(const SystemAmplitudes& sys, ModelPtr params,
                          std::optional<GridSpec> grid = {});

// Diagonal evolution; negative dt is allowed here (testing hook).
OracleState propagate(const OracleState& state, double dt);

// (M (x) 1_env); renormalization only on request, throws on annihilation
OracleState apply_system_op(const OracleState& state, const Matrix2c& m,
                            bool renormalize = false);

double norm(const OracleState& state);

Complex overlap(const OracleState& a, const OracleState& b);

// Partial trace keeping the given subsystems; index 0 is the system, index
// 1 + j is environment particle j. Kept axes are ordered ascending. The kept
// product dimension is capped at 2^14.
Eigen::MatrixXcd reduced(const OracleState& state, const std::vector<std::size_t>& keep);

std::vector<std::size_t> keep_system();
std::vector<std::size_t> keep_fragment(const Fragment& frag);
std::vector<std::size_t> keep_system_and(const Fragment& frag);

// -sum lambda ln lambda in nats; eigenvalues clipped to [0, 1], throws when
// the matrix fails positivity beyond 1e-8
double vn_entropy(const Eigen::MatrixXcd& rho);

// I(S:F) = S(rho_S) + S(rho_F) - S(rho_SF) in nats
double mutual_information(const OracleState& state, const Fragment& frag);

}  // namespace oracle
}  // namespace dephasim
