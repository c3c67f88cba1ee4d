// classicality.hpp — the four classicality diagnostics (predictability sieve,
// Darwinism fragment report, decoherent-histories functional, Leggett-Garg K3)
// and the operational pointer-state certifier.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dephasim/branch_ledger.hpp"
#include "dephasim/qubit_ops.hpp"

namespace dephasim {
namespace classicality {

// ---------------------------------------------------------------- sieve

struct SieveTable {
  std::vector<double> times;
  std::vector<double> phis;
  Eigen::MatrixXd entropy;  // (times x phis), nats
};

// von Neumann entropy of the reduced state for initial states
// (cos phi, sin phi) over the time grid
SieveTable sieve(ModelPtr params, const std::vector<double>& phis,
                 const std::vector<double>& grid);

// ------------------------------------------------------------ darwinism

struct QdRow {
  std::size_t size = 0;        // fragment size (contiguous prefix)
  double rate = 0.0;           // fragment dephasing rate; NaN when undefined
  double overlap_abs = 0.0;    // |<phi_0|phi_1>_F|
  double overlap_model = 0.0;  // e^{-rate t} for Lorentzian fragments; NaN otherwise
  double mutual_info = 0.0;    // I(S:F), nats
};

// fragment overlap and mutual information per fragment size; sizes must be
// nontrivial (1 <= size <= n-1)
std::vector<QdRow> qd_report(ModelPtr params, const SystemAmplitudes& sys, double t,
                             const std::vector<std::size_t>& sizes);

// I(S:F) from branch Gram data alone, any ledger
double mutual_information_analytic(const BranchLedger& ledger, const Fragment& frag);

// ------------------------------------------------------------- histories

struct Insertion {
  double time = 0.0;
  Matrix2c op;
  std::string name;
};

// Projection times plus optional operator insertions. Insertions at a
// projection time act before that projection (they belong to the interval
// ending there).
struct HistorySpec {
  std::vector<double> times;         // strictly increasing, n >= 1
  std::vector<Insertion> insertions; // times within [0, times.back()]

  std::size_t n() const { return times.size(); }
  void validate() const;
};

// unnormalized history state for one label sequence z_1 ... z_n
BranchLedger history_ledger(ModelPtr params, const SystemAmplitudes& sys,
                            const HistorySpec& spec, const std::vector<int>& labels);

struct DecoherenceFunctional {
  std::vector<double> times;
  Eigen::MatrixXcd matrix;  // 2^n x 2^n; history index packs z_i into bit i-1

  double max_offdiagonal() const;
  double diagonal_sum() const;
};

// full decoherence functional over all label sequences; n <= 6
DecoherenceFunctional decoherence_functional(ModelPtr params, const SystemAmplitudes& sys,
                                             const HistorySpec& spec);

// ------------------------------------------------------------------ LGI

struct LgiReport {
  double c21 = 0.0;
  double c32 = 0.0;
  double c31 = 0.0;
  double k() const { return c21 + c32 - c31; }
};

// two-time sigma_z correlator from sequential projective measurements at
// t_early then t_late
double projective_correlator(ModelPtr params, const SystemAmplitudes& sys,
                             double t_early, double t_late);

// K3 = C21 + C32 - C31 for strictly ordered times
LgiReport lgi_k3(ModelPtr params, const SystemAmplitudes& sys, double t1, double t2,
                 double t3);

// -------------------------------------------------------------- certifier

struct CertifierConfig {
  double epsilon = 0.0;
  double tau = 0.0;
  std::vector<ControlChannel> controls;
  int max_ops = 1;
  std::vector<double> time_grid;  // control application times and probe times
  std::vector<std::pair<std::string, SystemAmplitudes>> initial_states;

  void validate() const;
};

struct CertifierWitness {
  std::vector<std::string> controls;
  std::vector<double> times;
  double probe_time = 0.0;
  std::string initial_state;
  double distance = 0.0;
};

struct CertifierVerdict {
  bool pass = true;
  double worst_distance = 0.0;
  std::optional<CertifierWitness> witness;  // present iff fail
  std::size_t skipped_sequences = 0;        // annihilated (zero-probability) sequences
};

// exact conditional reduced state after a control sequence, for re-running a
// witness; controls[i] fires at times[i], strictly increasing
Matrix2c controlled_density(ModelPtr params, const SystemAmplitudes& sys,
                            const std::vector<ControlChannel>& controls,
                            const std::vector<double>& times, double probe_time);

// Exhaustive search over control sequences (length <= max_ops) drawn from the
// control set, application times and probe times on the grid (probe >= t_n +
// tau), and the configured initial states. Worst case wins; ties resolve to
// the first witness in canonical order (fewest ops, earliest times).
CertifierVerdict certify(ModelPtr params, const std::vector<Matrix2c>& projectors,
                         const CertifierConfig& config);

}  // namespace classicality
}  // namespace dephasim
