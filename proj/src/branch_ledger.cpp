#include "dephasim/branch_ledger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dephasim {

namespace {

// merge tolerance on theta; echo sequences on uniform grids produce exactly
// representable sums, so this only has to absorb rounding noise
bool theta_close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// sort by (label, theta), merge coincident branches, drop exact zeros
void canonicalize(std::vector<Branch>& branches) {
  std::sort(branches.begin(), branches.end(), [](const Branch& x, const Branch& y) {
    if (x.label != y.label) return x.label < y.label;
    return x.theta < y.theta;
  });
  std::vector<Branch> merged;
  merged.reserve(branches.size());
  for (const Branch& b : branches) {
    if (!merged.empty() && merged.back().label == b.label &&
        theta_close(merged.back().theta, b.theta)) {
      merged.back().amp += b.amp;
    } else {
      merged.push_back(b);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Branch& b) {
                                return b.amp.real() == 0.0 && b.amp.imag() == 0.0;
                              }),
               merged.end());
  branches = std::move(merged);
}

void require_same_params(const BranchLedger& a, const BranchLedger& b) {
  if (a.params == b.params) return;
  if (!a.params || !b.params || !same_model(*a.params, *b.params)) {
    throw std::invalid_argument("ledgers carry different model parameters");
  }
}

double theta_step(int label, double dt) { return label == 0 ? dt : -dt; }

}  // namespace

BranchLedger initial_ledger(const SystemAmplitudes& sys, ModelPtr params) {
  if (!params) throw std::invalid_argument("missing model parameters");
  // validates normalization
  SystemAmplitudes::of(sys.alpha, sys.beta);
  BranchLedger ledger;
  ledger.params = std::move(params);
  ledger.branches = {Branch{0, sys.alpha, 0.0}, Branch{1, sys.beta, 0.0}};
  canonicalize(ledger.branches);
  ledger.normalized = true;
  return ledger;
}

BranchLedger evolve(const BranchLedger& ledger, double dt) {
  if (dt < 0.0 || !std::isfinite(dt)) {
    throw std::invalid_argument("time step must be nonnegative");
  }
  BranchLedger out = ledger;
  for (Branch& b : out.branches) {
    b.theta += theta_step(b.label, dt);
  }
  canonicalize(out.branches);
  return out;
}

BranchLedger apply_operator(const BranchLedger& ledger, const Matrix2c& m, bool renormalize) {
  if (!m.allFinite()) {
    throw std::invalid_argument("operator has non-finite entries");
  }
  BranchLedger out;
  out.params = ledger.params;
  out.branches.reserve(2 * ledger.branches.size());
  for (const Branch& b : ledger.branches) {
    for (int to = 0; to < 2; ++to) {
      const Complex c = m(to, b.label);
      if (c.real() == 0.0 && c.imag() == 0.0) continue;
      out.branches.push_back(Branch{to, c * b.amp, b.theta});
    }
  }
  canonicalize(out.branches);
  if (renormalize) {
    const double norm = gram_norm(out);
    if (norm < 1e-14) {
      throw std::runtime_error("annihilated state: projection onto a zero-probability history");
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (Branch& b : out.branches) b.amp *= scale;
    out.normalized = true;
  } else {
    out.normalized = ledger.normalized && is_unitary(m);
  }
  return out;
}

double gram_norm(const BranchLedger& ledger) {
  return global_overlap(ledger, ledger).real();
}

Complex global_overlap(const BranchLedger& a, const BranchLedger& b) {
  require_same_params(a, b);
  Complex sum{0.0, 0.0};
  for (const Branch& ka : a.branches) {
    for (const Branch& kb : b.branches) {
      if (ka.label != kb.label) continue;
      sum += std::conj(ka.amp) * kb.amp * kernel_full(*a.params, (kb.theta - ka.theta) / 2.0);
    }
  }
  return sum;
}

namespace {

Matrix2c contract_density(const BranchLedger& ledger) {
  const ModelParams& params = *ledger.params;
  Matrix2c rho = Matrix2c::Zero();
  for (const Branch& k : ledger.branches) {
    for (const Branch& l : ledger.branches) {
      rho(k.label, l.label) +=
          k.amp * std::conj(l.amp) * kernel_full(params, (k.theta - l.theta) / 2.0);
    }
  }
  // the contraction is Hermitian by construction; tidy up rounding noise
  rho(0, 0) = Complex(rho(0, 0).real(), 0.0);
  rho(1, 1) = Complex(rho(1, 1).real(), 0.0);
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

}  // namespace

Matrix2c reduced_density(const BranchLedger& ledger) {
  if (!ledger.normalized) {
    throw std::invalid_argument("reduced state requires a normalized ledger");
  }
  return contract_density(ledger);
}

Matrix2c reduced_density_unnormalized(const BranchLedger& ledger) {
  return contract_density(ledger);
}

namespace {

// branches of one pointer label
struct LabelGroup {
  int label;
  std::vector<Branch> branches;
};

std::vector<LabelGroup> group_by_label(const BranchLedger& ledger) {
  std::vector<LabelGroup> groups;
  for (const Branch& b : ledger.branches) {
    if (groups.empty() || groups.back().label != b.label) {
      groups.push_back(LabelGroup{b.label, {}});
    }
    groups.back().branches.push_back(b);
  }
  return groups;
}

// <component_z | component_z'> with the kernel restricted to frag
Complex group_overlap(const ModelParams& params, const Fragment& frag,
                      const LabelGroup& gz, const LabelGroup& gz2) {
  Complex sum{0.0, 0.0};
  for (const Branch& k : gz.branches) {
    for (const Branch& l : gz2.branches) {
      sum += std::conj(k.amp) * l.amp * kernel(params, frag, (l.theta - k.theta) / 2.0);
    }
  }
  return sum;
}

Eigen::MatrixXcd label_gram(const ModelParams& params, const Fragment& frag,
                            const std::vector<LabelGroup>& groups, bool branching_form) {
  const Eigen::Index m = static_cast<Eigen::Index>(groups.size());
  Eigen::MatrixXcd gram(m, m);
  if (branching_form) {
    // pure conditional states: overlap of the single-branch fragment factors
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        const double ti = groups[i].branches.front().theta;
        const double tj = groups[j].branches.front().theta;
        gram(i, j) = kernel(params, frag, (tj - ti) / 2.0);
      }
    }
    return gram;
  }
  // several branches share a label: normalize the interference sums instead
  Eigen::VectorXd norms(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    norms(i) = group_overlap(params, frag, groups[i], groups[i]).real();
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (norms(i) < 1e-14 || norms(j) < 1e-14) {
        gram(i, j) = (i == j) ? 1.0 : 0.0;
        continue;
      }
      gram(i, j) = group_overlap(params, frag, groups[i], groups[j]) /
                   std::sqrt(norms(i) * norms(j));
    }
  }
  return gram;
}

}  // namespace

BranchDecomposition branch_decomposition(const BranchLedger& ledger, const Fragment& frag) {
  if (!ledger.normalized) {
    throw std::invalid_argument("branch decomposition requires a normalized ledger");
  }
  if (frag.env_size() != ledger.params->n()) {
    throw std::invalid_argument("fragment does not belong to this environment");
  }
  const auto groups = group_by_label(ledger);
  if (groups.empty()) {
    throw std::invalid_argument("ledger has no branches");
  }

  BranchDecomposition out;
  out.branching_form = std::all_of(groups.begin(), groups.end(),
                                   [](const LabelGroup& g) { return g.branches.size() == 1; });
  out.degenerate = frag.is_empty() || frag.is_full();

  const Fragment whole = Fragment::full(frag.env_size());
  const Eigen::Index m = static_cast<Eigen::Index>(groups.size());
  out.probabilities.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.labels.push_back(groups[i].label);
    out.probabilities(i) =
        group_overlap(*ledger.params, whole, groups[i], groups[i]).real();
  }
  out.fragment_gram = label_gram(*ledger.params, frag, groups, out.branching_form);
  out.complement_gram = label_gram(*ledger.params, frag.complement(), groups, out.branching_form);
  return out;
}

namespace {

// Eigenvalues of an operator sum_kl C_kl |v_k><v_l| expressed through the
// basis Gram matrix S_kl = <v_k|v_l>: they coincide with the eigenvalues of
// S^{1/2} C S^{1/2}, which is Hermitian for Hermitian C.
Eigen::VectorXd coefficient_gram_spectrum(const Eigen::MatrixXcd& coeff,
                                          const Eigen::MatrixXcd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(gram);
  const Eigen::VectorXd clipped = gs.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXcd root =
      gs.eigenvectors() * clipped.cwiseSqrt().asDiagonal() * gs.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(root * coeff * root);
  Eigen::VectorXd vals = es.eigenvalues();
  std::sort(vals.data(), vals.data() + vals.size(), std::greater<double>());
  return vals;
}

}  // namespace

Eigen::VectorXd fragment_spectrum(const BranchLedger& ledger, const Fragment& frag) {
  if (frag.env_size() != ledger.params->n()) {
    throw std::invalid_argument("fragment does not belong to this environment");
  }
  const ModelParams& params = *ledger.params;
  const Fragment rest = frag.complement();
  const Eigen::Index n = static_cast<Eigen::Index>(ledger.branches.size());
  Eigen::MatrixXcd coeff(n, n), gram(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const Branch& bk = ledger.branches[k];
      const Branch& bl = ledger.branches[l];
      const double half = (bk.theta - bl.theta) / 2.0;
      coeff(k, l) = (bk.label == bl.label)
                        ? bk.amp * std::conj(bl.amp) * kernel(params, rest, half)
                        : Complex(0.0, 0.0);
      gram(k, l) = kernel(params, frag, -half);
    }
  }
  return coefficient_gram_spectrum(coeff, gram);
}

Eigen::VectorXd system_fragment_spectrum(const BranchLedger& ledger, const Fragment& frag) {
  if (frag.env_size() != ledger.params->n()) {
    throw std::invalid_argument("fragment does not belong to this environment");
  }
  const ModelParams& params = *ledger.params;
  const Fragment rest = frag.complement();
  const Eigen::Index n = static_cast<Eigen::Index>(ledger.branches.size());
  Eigen::MatrixXcd coeff(n, n), gram(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const Branch& bk = ledger.branches[k];
      const Branch& bl = ledger.branches[l];
      const double half = (bk.theta - bl.theta) / 2.0;
      coeff(k, l) = bk.amp * std::conj(bl.amp) * kernel(params, rest, half);
      gram(k, l) = (bk.label == bl.label) ? kernel(params, frag, -half) : Complex(0.0, 0.0);
    }
  }
  return coefficient_gram_spectrum(coeff, gram);
}

}  // namespace dephasim
