#include "dephasim/classicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dephasim/dense_oracle.hpp"

namespace dephasim {
namespace classicality {

namespace {
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------- sieve

SieveTable sieve(ModelPtr params, const std::vector<double>& phis,
                 const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || (i > 0 && grid[i] <= grid[i - 1])) {
      throw std::invalid_argument("time grid must be nonnegative and increasing");
    }
  }
  SieveTable table;
  table.times = grid;
  table.phis = phis;
  table.entropy.resize(static_cast<Eigen::Index>(grid.size()),
                       static_cast<Eigen::Index>(phis.size()));
  for (std::size_t c = 0; c < phis.size(); ++c) {
    const BranchLedger start = initial_ledger(SystemAmplitudes::from_angle(phis[c]), params);
    for (std::size_t r = 0; r < grid.size(); ++r) {
      const Matrix2c rho = reduced_density(evolve(start, grid[r]));
      table.entropy(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          oracle::vn_entropy(rho);
    }
  }
  return table;
}

// ------------------------------------------------------------ darwinism

double mutual_information_analytic(const BranchLedger& ledger, const Fragment& frag) {
  const auto entropy_of = [](const Eigen::VectorXd& spectrum) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
      const double lam = std::clamp(spectrum(i), 0.0, 1.0);
      if (lam > 0.0) s -= lam * std::log(lam);
    }
    return s;
  };
  const double s_sys = oracle::vn_entropy(reduced_density(ledger));
  const double s_frag = entropy_of(fragment_spectrum(ledger, frag));
  const double s_both = entropy_of(system_fragment_spectrum(ledger, frag));
  return s_sys + s_frag - s_both;
}

std::vector<QdRow> qd_report(ModelPtr params, const SystemAmplitudes& sys, double t,
                             const std::vector<std::size_t>& sizes) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  const std::size_t n = params->n();
  for (std::size_t size : sizes) {
    if (size == 0 || size >= n) {
      throw std::invalid_argument("fragment sizes must be nontrivial (1 <= size <= n-1)");
    }
  }
  const BranchLedger ledger = evolve(initial_ledger(sys, params), t);

  std::vector<QdRow> rows;
  rows.reserve(sizes.size());
  for (std::size_t size : sizes) {
    const Fragment frag = Fragment::prefix(size, n);
    QdRow row;
    row.size = size;
    try {
      row.rate = fragment_rate(*params, frag);
      row.overlap_model = std::exp(-row.rate * t);
    } catch (const std::invalid_argument&) {
      row.rate = kNaN;
      row.overlap_model = kNaN;
    }
    const BranchDecomposition decomp = branch_decomposition(ledger, frag);
    row.overlap_abs = decomp.labels.size() == 2 ? std::abs(decomp.fragment_gram(0, 1)) : kNaN;
    row.mutual_info = mutual_information_analytic(ledger, frag);
    rows.push_back(row);
  }
  return rows;
}

// ------------------------------------------------------------- histories

void HistorySpec::validate() const {
  if (times.empty()) throw std::invalid_argument("history needs at least one time");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] <= times[i - 1])) {
      throw std::invalid_argument("history times must be nonnegative and strictly increasing");
    }
  }
  for (const Insertion& ins : insertions) {
    if (ins.time < 0.0 || ins.time > times.back()) {
      throw std::invalid_argument("insertion time outside [0, t_n]");
    }
    if (!ins.op.allFinite()) {
      throw std::invalid_argument("insertion operator has non-finite entries");
    }
  }
}

namespace {

struct HistoryEvent {
  double time;
  int order;  // insertions (0) fire before projections (1) at equal times
  Matrix2c op;
};

std::vector<HistoryEvent> history_events(const HistorySpec& spec,
                                         const std::vector<int>& labels) {
  std::vector<HistoryEvent> events;
  events.reserve(spec.times.size() + spec.insertions.size());
  for (std::size_t i = 0; i < spec.times.size(); ++i) {
    events.push_back(HistoryEvent{spec.times[i], 1, pointer_projector(labels[i])});
  }
  for (const Insertion& ins : spec.insertions) {
    events.push_back(HistoryEvent{ins.time, 0, ins.op});
  }
  std::stable_sort(events.begin(), events.end(), [](const HistoryEvent& a, const HistoryEvent& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.order < b.order;
  });
  return events;
}

}  // namespace

BranchLedger history_ledger(ModelPtr params, const SystemAmplitudes& sys,
                            const HistorySpec& spec, const std::vector<int>& labels) {
  spec.validate();
  if (labels.size() != spec.times.size()) {
    throw std::invalid_argument("one label per projection time required");
  }
  BranchLedger ledger = initial_ledger(sys, std::move(params));
  double now = 0.0;
  for (const HistoryEvent& ev : history_events(spec, labels)) {
    ledger = evolve(ledger, ev.time - now);
    ledger = apply_operator(ledger, ev.op, false);
    now = ev.time;
  }
  return ledger;
}

double DecoherenceFunctional::max_offdiagonal() const {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (r != c) worst = std::max(worst, std::abs(matrix(r, c)));
    }
  }
  return worst;
}

double DecoherenceFunctional::diagonal_sum() const { return matrix.diagonal().real().sum(); }

DecoherenceFunctional decoherence_functional(ModelPtr params, const SystemAmplitudes& sys,
                                             const HistorySpec& spec) {
  spec.validate();
  const std::size_t n = spec.n();
  if (n > 6) throw std::invalid_argument("at most 6 projection times supported");
  const std::size_t count = std::size_t(1) << n;

  std::vector<BranchLedger> ledgers;
  ledgers.reserve(count);
  for (std::size_t h = 0; h < count; ++h) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = int((h >> i) & 1u);
    ledgers.push_back(history_ledger(params, sys, spec, labels));
  }

  DecoherenceFunctional functional;
  functional.times = spec.times;
  functional.matrix.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t c = 0; c < count; ++c) {
      functional.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          global_overlap(ledgers[c], ledgers[r]);
    }
  }
  return functional;
}

// ------------------------------------------------------------------ LGI

double projective_correlator(ModelPtr params, const SystemAmplitudes& sys,
                             double t_early, double t_late) {
  if (!(0.0 <= t_early && t_early < t_late)) {
    throw std::invalid_argument("correlator requires 0 <= t_early < t_late");
  }
  const BranchLedger start = initial_ledger(sys, std::move(params));
  double corr = 0.0;
  for (int z1 = 0; z1 < 2; ++z1) {
    const BranchLedger first =
        apply_operator(evolve(start, t_early), pointer_projector(z1), false);
    for (int z2 = 0; z2 < 2; ++z2) {
      const BranchLedger second =
          apply_operator(evolve(first, t_late - t_early), pointer_projector(z2), false);
      const double joint = gram_norm(second);
      corr += sigma_z_value(z1) * sigma_z_value(z2) * joint;
    }
  }
  return corr;
}

LgiReport lgi_k3(ModelPtr params, const SystemAmplitudes& sys, double t1, double t2,
                 double t3) {
  if (!(0.0 <= t1 && t1 < t2 && t2 < t3)) {
    throw std::invalid_argument("K3 requires strictly ordered times");
  }
  LgiReport report;
  report.c21 = projective_correlator(params, sys, t1, t2);
  report.c32 = projective_correlator(params, sys, t2, t3);
  report.c31 = projective_correlator(params, sys, t1, t3);
  return report;
}

// -------------------------------------------------------------- certifier

void CertifierConfig::validate() const {
  if (!(epsilon >= 0.0) || !(tau >= 0.0)) {
    throw std::invalid_argument("epsilon and tau must be nonnegative");
  }
  if (controls.empty()) throw std::invalid_argument("control set is empty");
  if (max_ops < 1) throw std::invalid_argument("max_ops must be at least 1");
  if (time_grid.empty()) throw std::invalid_argument("time grid is empty");
  for (std::size_t i = 0; i < time_grid.size(); ++i) {
    if (time_grid[i] <= 0.0 || (i > 0 && time_grid[i] <= time_grid[i - 1])) {
      throw std::invalid_argument("time grid must be positive and strictly increasing");
    }
  }
  if (initial_states.empty()) throw std::invalid_argument("initial-state set is empty");
}

Matrix2c controlled_density(ModelPtr params, const SystemAmplitudes& sys,
                            const std::vector<ControlChannel>& controls,
                            const std::vector<double>& times, double probe_time) {
  if (controls.size() != times.size()) {
    throw std::invalid_argument("one application time per control required");
  }
  std::vector<BranchLedger> paths{initial_ledger(sys, std::move(params))};
  double now = 0.0;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (times[i] < now) throw std::invalid_argument("control times must be nondecreasing");
    std::vector<BranchLedger> next;
    next.reserve(paths.size() * controls[i].kraus.size());
    for (const BranchLedger& path : paths) {
      const BranchLedger stepped = evolve(path, times[i] - now);
      for (const Matrix2c& k : controls[i].kraus) {
        next.push_back(apply_operator(stepped, k, false));
      }
    }
    paths = std::move(next);
    now = times[i];
  }
  if (probe_time < now) throw std::invalid_argument("probe before the last control");
  Matrix2c rho = Matrix2c::Zero();
  for (const BranchLedger& path : paths) {
    rho += reduced_density_unnormalized(evolve(path, probe_time - now));
  }
  const double tr = rho.trace().real();
  if (tr < 1e-14) {
    throw std::runtime_error("annihilated state: control sequence has zero probability");
  }
  return rho / tr;
}

CertifierVerdict certify(ModelPtr params, const std::vector<Matrix2c>& projectors,
                         const CertifierConfig& config) {
  validate_projector_set(projectors);
  config.validate();

  const std::vector<double>& grid = config.time_grid;
  const std::size_t g = grid.size();

  CertifierVerdict verdict;
  CertifierWitness best;
  bool have_best = false;

  std::vector<std::size_t> time_idx;
  std::vector<std::size_t> ctrl_idx;

  // strictly increasing index tuples of length n over the grid
  const auto next_combination = [g](std::vector<std::size_t>& idx) {
    const std::size_t n = idx.size();
    for (std::size_t i = n; i-- > 0;) {
      if (idx[i] + (n - i) < g) {
        ++idx[i];
        for (std::size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  // odometer over control-set indices
  const auto next_selection = [&](std::vector<std::size_t>& idx) {
    for (std::size_t i = idx.size(); i-- > 0;) {
      if (++idx[i] < config.controls.size()) return true;
      idx[i] = 0;
    }
    return false;
  };

  for (const auto& [state_name, sys] : config.initial_states) {
    for (int n = 1; n <= config.max_ops; ++n) {
      if (static_cast<std::size_t>(n) > g) break;
      time_idx.resize(n);
      for (int i = 0; i < n; ++i) time_idx[i] = static_cast<std::size_t>(i);
      do {
        std::vector<double> times(n);
        for (int i = 0; i < n; ++i) times[i] = grid[time_idx[i]];
        ctrl_idx.assign(n, 0);
        do {
          std::vector<ControlChannel> sequence;
          sequence.reserve(n);
          for (int i = 0; i < n; ++i) sequence.push_back(config.controls[ctrl_idx[i]]);
          const double earliest_probe = times.back() + config.tau;
          for (std::size_t p = 0; p < g; ++p) {
            if (grid[p] < earliest_probe - 1e-12) continue;
            Matrix2c rho;
            try {
              rho = controlled_density(params, sys, sequence, times, grid[p]);
            } catch (const std::runtime_error&) {
              ++verdict.skipped_sequences;
              continue;
            }
            const double dist = dephasing_distance(rho, projectors);
            if (!have_best || dist > best.distance) {
              best.controls.clear();
              for (const ControlChannel& c : sequence) best.controls.push_back(c.name);
              best.times = times;
              best.probe_time = grid[p];
              best.initial_state = state_name;
              best.distance = dist;
              have_best = true;
            }
          }
        } while (next_selection(ctrl_idx));
      } while (next_combination(time_idx));
    }
  }

  verdict.worst_distance = have_best ? best.distance : 0.0;
  verdict.pass = verdict.worst_distance <= config.epsilon;
  if (!verdict.pass) verdict.witness = best;
  return verdict;
}

}  // namespace classicality
}  // namespace dephasim
