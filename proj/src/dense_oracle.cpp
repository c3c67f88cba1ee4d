#include "dephasim/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dephasim {
namespace oracle {

namespace {

constexpr Eigen::Index kMaxTotalDim = Eigen::Index(1) << 22;
constexpr Eigen::Index kMaxKeepDim = Eigen::Index(1) << 14;

}  // namespace

GridSpec GridSpec::of(double cutoff, int points) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw std::invalid_argument("grid cutoff must be positive");
  }
  if (points < 2 || points % 2 != 0) {
    throw std::invalid_argument("grid needs an even number of points, at least 2");
  }
  return GridSpec{cutoff, points};
}

GridSpec default_grid(const EnvParticle& particle) {
  if (particle.kind != EnvKind::lorentzian) {
    throw std::invalid_argument("grids apply to Lorentzian particles only");
  }
  return GridSpec::of(1000.0 * particle.gamma, 1 << 15);
}

OracleState build_initial(const SystemAmplitudes& sys, ModelPtr params,
                          std::optional<GridSpec> grid) {
  if (!params) throw std::invalid_argument("missing model parameters");
  SystemAmplitudes::of(sys.alpha, sys.beta);

  OracleState state;
  state.params = params;
  state.dims.push_back(2);

  std::vector<Eigen::VectorXcd> factors;
  for (const EnvParticle& p : params->particles) {
    if (p.kind == EnvKind::dichotomic) {
      Eigen::VectorXd q(2);
      q << 1.0, -1.0;
      Eigen::VectorXcd chi(2);
      chi << std::sqrt(p.p_plus), std::sqrt(1.0 - p.p_plus);
      state.dims.push_back(2);
      state.qgrids.push_back(q);
      factors.push_back(chi);
      continue;
    }
    if (!grid) {
      throw std::invalid_argument("Lorentzian particle requires a position grid");
    }
    const int d = grid->points;
    const double step = 2.0 * grid->cutoff / d;
    Eigen::VectorXd q(d);
    Eigen::VectorXcd chi(d);
    for (int i = 0; i < d; ++i) {
      q(i) = -grid->cutoff + (i + 0.5) * step;
      chi(i) = std::sqrt(p.gamma / M_PI) / Complex(q(i), p.gamma);
    }
    chi /= chi.norm();
    state.dims.push_back(d);
    state.qgrids.push_back(q);
    factors.push_back(chi);
  }

  Eigen::Index env_dim = 1;
  for (std::size_t j = 1; j < state.dims.size(); ++j) {
    if (env_dim > kMaxTotalDim / state.dims[j]) {
      throw std::invalid_argument("oracle state too large for a dense representation");
    }
    env_dim *= state.dims[j];
  }

  // environment product amplitudes and the coupled-position sums, built by
  // extending one particle at a time
  Eigen::VectorXcd env = Eigen::VectorXcd::Ones(1);
  Eigen::VectorXd qsum = Eigen::VectorXd::Zero(1);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const Eigen::Index dj = factors[j].size();
    Eigen::VectorXcd env_next(env.size() * dj);
    Eigen::VectorXd qsum_next(env.size() * dj);
    const double g = params->particles[j].g;
    for (Eigen::Index a = 0; a < env.size(); ++a) {
      for (Eigen::Index i = 0; i < dj; ++i) {
        env_next(a * dj + i) = env(a) * factors[j](i);
        qsum_next(a * dj + i) = qsum(a) + g * state.qgrids[j](i);
      }
    }
    env = std::move(env_next);
    qsum = std::move(qsum_next);
  }

  state.env_qsum = std::move(qsum);
  state.amps.resize(2 * env.size());
  state.amps.segment(0, env.size()) = sys.alpha * env;
  state.amps.segment(env.size(), env.size()) = sys.beta * env;
  state.amps /= state.amps.norm();
  return state;
}

OracleState propagate(const OracleState& state, double dt) {
  if (!std::isfinite(dt)) throw std::invalid_argument("time step must be finite");
  OracleState out = state;
  const Eigen::Index e = state.env_dim();
  // H |z, q> = (sz(z)/2) sum_j g_j q_j |z, q>, sz(0) = -1, sz(1) = +1
  for (int z = 0; z < 2; ++z) {
    const double s = sigma_z_value(z);
    const Eigen::VectorXcd phase =
        (state.env_qsum.array().cast<Complex>() * Complex(0.0, -0.5 * s * dt)).exp();
    out.amps.segment(z * e, e).array() *= phase.array();
  }
  return out;
}

OracleState apply_system_op(const OracleState& state, const Matrix2c& m, bool renormalize) {
  if (!m.allFinite()) throw std::invalid_argument("operator has non-finite entries");
  OracleState out = state;
  const Eigen::Index e = state.env_dim();
  const Eigen::VectorXcd row0 = state.amps.segment(0, e);
  const Eigen::VectorXcd row1 = state.amps.segment(e, e);
  out.amps.segment(0, e) = m(0, 0) * row0 + m(0, 1) * row1;
  out.amps.segment(e, e) = m(1, 0) * row0 + m(1, 1) * row1;
  if (renormalize) {
    const double nrm = out.amps.norm();
    if (nrm < 1e-7) {  // norm^2 < ~1e-14
      throw std::runtime_error("annihilated state: projection onto a zero-probability history");
    }
    out.amps /= nrm;
  }
  return out;
}

double norm(const OracleState& state) { return state.amps.norm(); }

Complex overlap(const OracleState& a, const OracleState& b) {
  if (a.params != b.params && !same_model(*a.params, *b.params)) {
    throw std::invalid_argument("oracle states carry different model parameters");
  }
  if (a.dims != b.dims) {
    throw std::invalid_argument("oracle states live on different grids");
  }
  return a.amps.dot(b.amps);
}

Eigen::MatrixXcd reduced(const OracleState& state, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("keep set contains a duplicate subsystem");
  }
  if (kept.back() >= state.dims.size()) {
    throw std::invalid_argument("keep set references an unknown subsystem");
  }

  Eigen::Index keep_dim = 1;
  for (std::size_t s : kept) keep_dim *= state.dims[s];
  if (keep_dim > kMaxKeepDim) {
    throw std::invalid_argument("reduction too large; kept dimension exceeds 2^14");
  }
  const Eigen::Index trace_dim = state.amps.size() / keep_dim;

  // strides of each subsystem in the flat row-major index
  const std::size_t ns = state.dims.size();
  std::vector<Eigen::Index> stride(ns);
  Eigen::Index acc = 1;
  for (std::size_t s = ns; s-- > 0;) {
    stride[s] = acc;
    acc *= state.dims[s];
  }

  std::vector<bool> is_kept(ns, false);
  for (std::size_t s : kept) is_kept[s] = true;

  // gather into a (keep_dim x trace_dim) matrix, then contract
  Eigen::MatrixXcd m(keep_dim, trace_dim);
  for (Eigen::Index flat = 0; flat < state.amps.size(); ++flat) {
    Eigen::Index kidx = 0, tidx = 0;
    for (std::size_t s = 0; s < ns; ++s) {
      const Eigen::Index component = (flat / stride[s]) % state.dims[s];
      if (is_kept[s]) {
        kidx = kidx * state.dims[s] + component;
      } else {
        tidx = tidx * state.dims[s] + component;
      }
    }
    m(kidx, tidx) = state.amps(flat);
  }
  return m * m.adjoint();
}

std::vector<std::size_t> keep_system() { return {0}; }

std::vector<std::size_t> keep_fragment(const Fragment& frag) {
  std::vector<std::size_t> keep;
  keep.reserve(frag.size());
  for (std::size_t j : frag.indices()) keep.push_back(1 + j);
  return keep;
}

std::vector<std::size_t> keep_system_and(const Fragment& frag) {
  std::vector<std::size_t> keep = keep_fragment(frag);
  keep.insert(keep.begin(), 0);
  return keep;
}

double vn_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()));
  const Eigen::VectorXd& vals = es.eigenvalues();
  if (vals.minCoeff() < -1e-8) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    const double lam = std::clamp(vals(i), 0.0, 1.0);
    if (lam > 0.0) s -= lam * std::log(lam);
  }
  return s;
}

double mutual_information(const OracleState& state, const Fragment& frag) {
  const double s_sys = vn_entropy(reduced(state, keep_system()));
  const double s_frag = vn_entropy(reduced(state, keep_fragment(frag)));
  const double s_both = vn_entropy(reduced(state, keep_system_and(frag)));
  return s_sys + s_frag - s_both;
}

}  // namespace oracle
}  // namespace dephasim
