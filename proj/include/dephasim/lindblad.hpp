// lindblad.hpp — Markovian dephasing propagation and the exact-vs-regression
// comparison for two-time correlators and mid-evolution interventions.
//
// The reduced dynamics obey d/dt rho = (rate/2)(sigma_z rho sigma_z - rho):
// populations are frozen and coherences decay as e^{-rate t}. The same
// one-parameter semigroup, extended to arbitrary 2x2 matrices, defines the
// quantum-regression prediction for multi-time quantities; the exact values
// come from the branch ledger.

#pragma once

#include "dephasim/branch_ledger.hpp"
#include "dephasim/qubit_ops.hpp"

#include <string>

namespace dephasim {
namespace lindblad {

// pure-dephasing generator, fixed by its rate
struct DephasingGenerator {
  double rate = 0.0;

  explicit DephasingGenerator(double rate);

  // e^{L t} on states and, by linearity, on arbitrary 2x2 matrices:
  // diagonal untouched, off-diagonal damped by e^{-rate t}
  Matrix2c propagate(const Matrix2c& m, double t) const;
};

// closed-form master-equation solution; t must be >= 0
Matrix2c dephasing_propagate(const Matrix2c& rho, double t, double rate);

// classical RK4 integration of the same generator, as an independent check
// of the closed form
Matrix2c gksl_integrate(const Matrix2c& rho, double rate, double t, int steps);

// <A(t) B(s)> on the exact global state, 0 <= s <= t
Complex exact_two_time(const Matrix2c& a, const Matrix2c& b, double t, double s,
                       const SystemAmplitudes& sys, ModelPtr params);

// tr{A e^{L(t-s)} B e^{L s} rho0}, the regression-theorem prediction
Complex regression_two_time(const Matrix2c& a, const Matrix2c& b, double t, double s,
                            const Matrix2c& rho0, double rate);

struct CorrelatorReport {
  Complex exact{0, 0};
  Complex regression{0, 0};
  double discrepancy = 0.0;
  std::string channel;
  std::string observable;
  double t_control = 0.0;
  double t_probe = 0.0;
};

// Exact expectation of `observable` at time t after applying `channel` at
// t_control, against the Markov prediction for the same protocol. Requires a
// Lorentzian environment (the Markov side needs the rate).
CorrelatorReport intervention_compare(const ControlChannel& channel, double t_control,
                                      const Matrix2c& observable, double t,
                                      const SystemAmplitudes& sys, ModelPtr params,
                                      std::string observable_name = "");

// exact reduced state at time t with a channel applied at t_control, summed
// over Kraus branches of the exact global evolution
Matrix2c exact_intervened_density(const ControlChannel& channel, double t_control,
                                  double t, const SystemAmplitudes& sys, ModelPtr params);

}  // namespace lindblad
}  // namespace dephasim
