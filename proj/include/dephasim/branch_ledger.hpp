// branch_ledger.hpp — exact closed-form propagation of the global pure state.
//
// Under the pure-dephasing interaction the global state always stays a sum of
// branches a |z> (x) |chi(theta)>, where |chi(theta)> is the initial
// environment product state with every particle carrying the phase
// e^{i g q theta / 2}. A branch is therefore fully described by the triple
// (pointer label z, amplitude a, signed accumulated time theta): evolution
// moves theta with a label-dependent sign (+ for z = 0, - for z = 1), and a
// local system operator reshuffles labels and amplitudes while leaving theta
// untouched. All inner products reduce to the environment kernel:
//   <chi(theta_k) | chi(theta_l)> = kernel((theta_l - theta_k) / 2).
//
// Ledgers are immutable values; every operation returns a new ledger.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dephasim/model.hpp"
#include "dephasim/qubit_ops.hpp"

namespace dephasim {

struct Branch {
  int label = 0;      // pointer label z in {0, 1}
  Complex amp{0, 0};  // amplitude
  double theta = 0;   // signed accumulated interaction time
};

struct BranchLedger {
  ModelPtr params;
  std::vector<Branch> branches;  // sorted by (label, theta), merged, no exact zeros
  bool normalized = false;       // Gram norm known to be 1
};

// Result of splitting the evolved state against an environment fragment:
// per-label probabilities plus the Gram matrices of the conditional fragment
// and complement-fragment states.
struct BranchDecomposition {
  std::vector<int> labels;             // pointer labels present, ascending
  Eigen::VectorXd probabilities;       // per label, sums to 1
  Eigen::MatrixXcd fragment_gram;      // Hermitian PSD, unit diagonal
  Eigen::MatrixXcd complement_gram;
  // true when each label owns a single branch, i.e. the state has the
  // spectrum-broadcast branching form with pure conditional fragment states
  bool branching_form = true;
  // empty or full fragment: one of the Gram matrices is the all-ones matrix
  bool degenerate = false;
};

// Two branches (0, alpha, 0) and (1, beta, 0); zero-amplitude branches dropped.
BranchLedger initial_ledger(const SystemAmplitudes& sys, ModelPtr params);

// theta <- theta + dt on label 0, theta - dt on label 1. dt must be >= 0;
// reversal is obtained physically through a spin flip, not negative time.
BranchLedger evolve(const BranchLedger& ledger, double dt);

// Apply a 2x2 system operator: branch (z, a, theta) contributes
// (z', M(z', z) a, theta) for both z'. With renormalize the result is scaled
// to unit Gram norm (throws on an annihilated state); without it the
// normalized flag survives only for unitary M.
BranchLedger apply_operator(const BranchLedger& ledger, const Matrix2c& m,
                            bool renormalize = false);

// <ledger|ledger>; real and nonnegative
double gram_norm(const BranchLedger& ledger);

// <a|b>; ledgers may be unnormalized (history states are), but must share params
Complex global_overlap(const BranchLedger& a, const BranchLedger& b);

// tr over the environment; requires a normalized ledger
Matrix2c reduced_density(const BranchLedger& ledger);

// same contraction without any normalization check, for Kraus-branch sums
// and conditional (projected) states
Matrix2c reduced_density_unnormalized(const BranchLedger& ledger);

BranchDecomposition branch_decomposition(const BranchLedger& ledger, const Fragment& frag);

// Eigenvalues (descending) of the reduced state on the fragment alone and on
// system + fragment, straight from branch Gram data. Used for entropies and
// mutual information without ever building environment states.
Eigen::VectorXd fragment_spectrum(const BranchLedger& ledger, const Fragment& frag);
Eigen::VectorXd system_fragment_spectrum(const BranchLedger& ledger, const Fragment& frag);

}  // namespace dephasim
