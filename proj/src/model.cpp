#include "dephasim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dephasim {

namespace {

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

EnvParticle EnvParticle::lorentzian(double g, double gamma) {
  check_finite(g, "coupling g");
  check_finite(gamma, "Lorentzian scale gamma");
  if (gamma <= 0.0) {
    throw std::invalid_argument("Lorentzian scale gamma must be positive");
  }
  EnvParticle p;
  p.g = g;
  p.kind = EnvKind::lorentzian;
  p.gamma = gamma;
  return p;
}

EnvParticle EnvParticle::dichotomic(double g, double p_plus) {
  check_finite(g, "coupling g");
  check_finite(p_plus, "population p_plus");
  if (p_plus < 0.0 || p_plus > 1.0) {
    throw std::invalid_argument("population p_plus must lie in [0, 1]");
  }
  EnvParticle p;
  p.g = g;
  p.kind = EnvKind::dichotomic;
  p.p_plus = p_plus;
  return p;
}

bool ModelParams::all_lorentzian() const {
  return std::all_of(particles.begin(), particles.end(),
                     [](const EnvParticle& p) { return p.kind == EnvKind::lorentzian; });
}

bool ModelParams::all_dichotomic() const {
  return std::all_of(particles.begin(), particles.end(),
                     [](const EnvParticle& p) { return p.kind == EnvKind::dichotomic; });
}

ModelPtr make_model(std::vector<EnvParticle> particles) {
  if (particles.empty()) {
    throw std::invalid_argument("environment needs at least one particle");
  }
  auto m = std::make_shared<ModelParams>();
  m->particles = std::move(particles);
  return m;
}

ModelPtr uniform_lorentzian(std::size_t n, double g, double gamma) {
  return make_model(std::vector<EnvParticle>(n, EnvParticle::lorentzian(g, gamma)));
}

ModelPtr uniform_dichotomic(std::size_t n, double g, double p_plus) {
  return make_model(std::vector<EnvParticle>(n, EnvParticle::dichotomic(g, p_plus)));
}

bool same_model(const ModelParams& a, const ModelParams& b) {
  if (&a == &b) return true;
  if (a.n() != b.n()) return false;
  for (std::size_t j = 0; j < a.n(); ++j) {
    const EnvParticle& pa = a.particles[j];
    const EnvParticle& pb = b.particles[j];
    if (pa.kind != pb.kind || pa.g != pb.g) return false;
    if (pa.kind == EnvKind::lorentzian && pa.gamma != pb.gamma) return false;
    if (pa.kind == EnvKind::dichotomic && pa.p_plus != pb.p_plus) return false;
  }
  return true;
}

Fragment Fragment::of(std::vector<std::size_t> indices, std::size_t env_size) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw std::invalid_argument("fragment contains a duplicate particle index");
  }
  if (!indices.empty() && indices.back() >= env_size) {
    throw std::invalid_argument("fragment index outside the environment");
  }
  Fragment f;
  f.indices_ = std::move(indices);
  f.env_size_ = env_size;
  return f;
}

Fragment Fragment::prefix(std::size_t count, std::size_t env_size) {
  if (count > env_size) {
    throw std::invalid_argument("fragment prefix larger than the environment");
  }
  std::vector<std::size_t> idx(count);
  for (std::size_t j = 0; j < count; ++j) idx[j] = j;
  return of(std::move(idx), env_size);
}

Fragment Fragment::full(std::size_t env_size) { return prefix(env_size, env_size); }

Fragment Fragment::empty(std::size_t env_size) { return prefix(0, env_size); }

Fragment Fragment::complement() const {
  std::vector<std::size_t> rest;
  rest.reserve(env_size_ - indices_.size());
  std::size_t pos = 0;
  for (std::size_t j = 0; j < env_size_; ++j) {
    if (pos < indices_.size() && indices_[pos] == j) {
      ++pos;
    } else {
      rest.push_back(j);
    }
  }
  return of(std::move(rest), env_size_);
}

Complex kernel_factor(const EnvParticle& particle, double u) {
  if (particle.kind == EnvKind::lorentzian) {
    // characteristic function of the Lorentzian density, valid for any real g
    return Complex(std::exp(-particle.gamma * std::abs(particle.g * u)), 0.0);
  }
  const Complex plus = std::exp(Complex(0.0, particle.g * u));
  return particle.p_plus * plus + (1.0 - particle.p_plus) * std::conj(plus);
}

Complex kernel(const ModelParams& params, const Fragment& frag, double u) {
  if (frag.env_size() != params.n()) {
    throw std::invalid_argument("fragment does not belong to this environment");
  }
  Complex out{1.0, 0.0};
  for (std::size_t j : frag.indices()) {
    out *= kernel_factor(params.particles[j], u);
  }
  return out;
}

Complex kernel_full(const ModelParams& params, double u) {
  Complex out{1.0, 0.0};
  for (const EnvParticle& p : params.particles) {
    out *= kernel_factor(p, u);
  }
  return out;
}

double fragment_rate(const ModelParams& params, const Fragment& frag) {
  if (frag.env_size() != params.n()) {
    throw std::invalid_argument("fragment does not belong to this environment");
  }
  double rate = 0.0;
  for (std::size_t j : frag.indices()) {
    const EnvParticle& p = params.particles[j];
    if (p.kind != EnvKind::lorentzian) {
      throw std::invalid_argument("rate undefined for non-Lorentzian particle");
    }
    if (p.g <= 0.0) {
      throw std::invalid_argument("rate undefined for non-positive coupling");
    }
    rate += p.g * p.gamma;
  }
  return rate;
}

double total_rate(const ModelParams& params) {
  return fragment_rate(params, Fragment::full(params.n()));
}

SystemAmplitudes SystemAmplitudes::of(Complex alpha, Complex beta) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("system amplitudes must be normalized");
  }
  return SystemAmplitudes{alpha, beta};
}

SystemAmplitudes SystemAmplitudes::from_angle(double phi) {
  return SystemAmplitudes{Complex(std::cos(phi), 0.0), Complex(std::sin(phi), 0.0)};
}

SystemAmplitudes SystemAmplitudes::pointer(int label) {
  if (label != 0 && label != 1) {
    throw std::invalid_argument("pointer label must be 0 or 1");
  }
  return label == 0 ? SystemAmplitudes{1.0, 0.0} : SystemAmplitudes{0.0, 1.0};
}

SystemAmplitudes SystemAmplitudes::plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return SystemAmplitudes{Complex(r, 0.0), Complex(r, 0.0)};
}

SystemAmplitudes SystemAmplitudes::plus_i() {
  const double r = 1.0 / std::sqrt(2.0);
  return SystemAmplitudes{Complex(r, 0.0), Complex(0.0, r)};
}

}  // namespace dephasim
