// model.hpp — environment particle parameters, dephasing rates, and the
// environment characteristic-function kernel.
//
// Every reduced quantity of the model (coherences, branch overlaps,
// decoherence functionals) depends on an environment particle only through
// its characteristic function kappa_j(u) = <exp(i g_j q_j u)> taken in the
// particle's initial state. No position-space state is ever materialized;
// the kernel below is the single point where the environment physics enters.

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace dephasim {

using Complex = std::complex<double>;

enum class EnvKind { lorentzian, dichotomic };

// One environment particle, coupled to the system with strength g.
//   Lorentzian: position wave function with a Lorentzian probability density
//               of scale gamma, giving kappa(u) = exp(-gamma |g u|).
//   Dichotomic: two-level particle with q-eigenvalues +1/-1 populated with
//               (p_plus, 1-p_plus), giving
//               kappa(u) = p_plus e^{i g u} + (1-p_plus) e^{-i g u}.
struct EnvParticle {
  double g = 1.0;
  EnvKind kind = EnvKind::lorentzian;
  double gamma = 1.0;   // Lorentzian scale, used when kind == lorentzian
  double p_plus = 0.5;  // population of q = +1, used when kind == dichotomic

  static EnvParticle lorentzian(double g, double gamma);
  static EnvParticle dichotomic(double g, double p_plus);
};

// Ordered, immutable particle list. Particle order is the identity of the
// environment index set {0, ..., n-1}.
struct ModelParams {
  std::vector<EnvParticle> particles;

  std::size_t n() const { return particles.size(); }
  bool all_lorentzian() const;
  bool all_dichotomic() const;
};

// Ledgers and oracle states share the parameters; they are immutable once
// constructed, so a shared const pointer is the natural handle.
using ModelPtr = std::shared_ptr<const ModelParams>;

ModelPtr make_model(std::vector<EnvParticle> particles);
ModelPtr uniform_lorentzian(std::size_t n, double g, double gamma);
ModelPtr uniform_dichotomic(std::size_t n, double g, double p_plus);

bool same_model(const ModelParams& a, const ModelParams& b);

// Subset of environment indices (0-based), kept sorted and duplicate-free.
class Fragment {
 public:
  Fragment() = default;

  static Fragment of(std::vector<std::size_t> indices, std::size_t env_size);
  static Fragment prefix(std::size_t count, std::size_t env_size);
  static Fragment full(std::size_t env_size);
  static Fragment empty(std::size_t env_size);

  Fragment complement() const;

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t env_size() const { return env_size_; }
  bool is_empty() const { return indices_.empty(); }
  bool is_full() const { return indices_.size() == env_size_; }

 private:
  std::vector<std::size_t> indices_;
  std::size_t env_size_ = 0;
};

// kappa_j(u) for a single particle; defined for any real coupling g.
Complex kernel_factor(const EnvParticle& particle, double u);

// Product of kappa_j(u) over the fragment. Satisfies kernel(F, 0) = 1,
// kernel(F, -u) = conj(kernel(F, u)) and |kernel(F, u)| <= 1.
Complex kernel(const ModelParams& params, const Fragment& frag, double u);

// kernel over the full environment
Complex kernel_full(const ModelParams& params, double u);

// Dephasing rate of a fragment, sum of g_j * gamma_j. Defined only when
// every particle in the fragment is Lorentzian with positive coupling;
// throws otherwise.
double fragment_rate(const ModelParams& params, const Fragment& frag);

// fragment_rate of the full environment
double total_rate(const ModelParams& params);

// Pure system state alpha|0> + beta|1> in the pointer basis.
struct SystemAmplitudes {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  // validates |alpha|^2 + |beta|^2 = 1 within 1e-12
  static SystemAmplitudes of(Complex alpha, Complex beta);
  // (cos phi, sin phi), the rotated-pointer family
  static SystemAmplitudes from_angle(double phi);
  static SystemAmplitudes pointer(int label);
  static SystemAmplitudes plus();
  static SystemAmplitudes plus_i();
};

}  // namespace dephasim
