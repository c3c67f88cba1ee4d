#include "dephasim/lindblad.hpp"

#include <cmath>
#include <stdexcept>

namespace dephasim {
namespace lindblad {

DephasingGenerator::DephasingGenerator(double r) : rate(r) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("dephasing rate must be nonnegative");
  }
}

Matrix2c DephasingGenerator::propagate(const Matrix2c& m, double t) const {
  const double damp = std::exp(-rate * t);
  Matrix2c out = m;
  out(0, 1) *= damp;
  out(1, 0) *= damp;
  return out;
}

Matrix2c dephasing_propagate(const Matrix2c& rho, double t, double rate) {
  if (t < 0.0 || !std::isfinite(t)) {
    throw std::invalid_argument("propagation time must be nonnegative");
  }
  return DephasingGenerator(rate).propagate(rho, t);
}

namespace {

// (rate/2) (sigma_z rho sigma_z - rho): kills nothing on the diagonal and
// pulls the off-diagonal towards zero
Matrix2c generator_rhs(const Matrix2c& rho, double rate) {
  Matrix2c out = Matrix2c::Zero();
  out(0, 1) = -rate * rho(0, 1);
  out(1, 0) = -rate * rho(1, 0);
  return out;
}

}  // namespace

Matrix2c gksl_integrate(const Matrix2c& rho, double rate, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("integrator needs at least one step");
  if (t < 0.0 || !std::isfinite(t)) {
    throw std::invalid_argument("propagation time must be nonnegative");
  }
  if (!(rate >= 0.0)) throw std::invalid_argument("dephasing rate must be nonnegative");
  const double dt = t / steps;
  Matrix2c y = rho;
  for (int i = 0; i < steps; ++i) {
    const Matrix2c k1 = generator_rhs(y, rate);
    const Matrix2c k2 = generator_rhs(y + 0.5 * dt * k1, rate);
    const Matrix2c k3 = generator_rhs(y + 0.5 * dt * k2, rate);
    const Matrix2c k4 = generator_rhs(y + dt * k3, rate);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

Complex exact_two_time(const Matrix2c& a, const Matrix2c& b, double t, double s,
                       const SystemAmplitudes& sys, ModelPtr params) {
  if (!(0.0 <= s && s <= t)) {
    throw std::invalid_argument("correlator times must satisfy 0 <= s <= t");
  }
  const BranchLedger start = initial_ledger(sys, std::move(params));
  // <A(t) B(s)> = <A^dag U_{t,0} Psi | U_{t,s} B U_{s,0} Psi>
  const BranchLedger right = evolve(apply_operator(evolve(start, s), b), t - s);
  const BranchLedger left = apply_operator(evolve(start, t), a.adjoint());
  return global_overlap(left, right);
}

Complex regression_two_time(const Matrix2c& a, const Matrix2c& b, double t, double s,
                            const Matrix2c& rho0, double rate) {
  if (!(0.0 <= s && s <= t)) {
    throw std::invalid_argument("correlator times must satisfy 0 <= s <= t");
  }
  if (!is_density_matrix(rho0, 1e-10)) {
    throw std::invalid_argument("rho0 is not a density matrix");
  }
  const DephasingGenerator gen(rate);
  const Matrix2c stage = gen.propagate(b * gen.propagate(rho0, s), t - s);
  return (a * stage).trace();
}

Matrix2c exact_intervened_density(const ControlChannel& channel, double t_control,
                                  double t, const SystemAmplitudes& sys, ModelPtr params) {
  if (!(0.0 <= t_control && t_control <= t)) {
    throw std::invalid_argument("intervention requires 0 <= t_control <= t");
  }
  const BranchLedger at_control = evolve(initial_ledger(sys, std::move(params)), t_control);
  // each Kraus branch evolves as its own pure state; the unnormalized reduced
  // states add up to the exact channel action on the global state
  Matrix2c rho = Matrix2c::Zero();
  for (const Matrix2c& k : channel.kraus) {
    const BranchLedger path = evolve(apply_operator(at_control, k), t - t_control);
    rho += reduced_density_unnormalized(path);
  }
  const double tr = rho.trace().real();
  if (tr < 1e-14) {
    throw std::runtime_error("annihilated state: channel removed all probability");
  }
  return rho / tr;
}

CorrelatorReport intervention_compare(const ControlChannel& channel, double t_control,
                                      const Matrix2c& observable, double t,
                                      const SystemAmplitudes& sys, ModelPtr params,
                                      std::string observable_name) {
  const double rate = total_rate(*params);

  CorrelatorReport report;
  report.channel = channel.name;
  report.observable = std::move(observable_name);
  report.t_control = t_control;
  report.t_probe = t;

  const Matrix2c exact_rho = exact_intervened_density(channel, t_control, t, sys, params);
  report.exact = expectation(observable, exact_rho);

  Matrix2c markov = dephasing_propagate(pure_density(sys), t_control, rate);
  markov = apply_channel(channel, markov);
  markov = dephasing_propagate(markov, t - t_control, rate);
  report.regression = expectation(observable, markov);

  report.discrepancy = std::abs(report.exact - report.regression);
  return report;
}

}  // namespace lindblad
}  // namespace dephasim
