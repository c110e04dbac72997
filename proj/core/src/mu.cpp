#include "mukit/mu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mukit/error.hpp"
#include "mukit/spectral.hpp"

namespace mukit {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr int kPhaseScanPoints = 24;
constexpr double kPhaseTol = 1e-9;
constexpr double kLogBracket = 10.0;
constexpr double kLogLimit = 100.0;
constexpr double kLogTol = 1e-10;

void check_dims(const Matrix& m, const BlockStructure& b) {
  m.validate();
  if (m.size() != b.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix has dimension " + std::to_string(m.size()) +
                                                   " but structure covers " + std::to_string(b.n()));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Golden-section minimization of a unimodal function on [lo, hi].
template <typename F>
std::pair<double, double> golden_minimize(F&& f, double lo, double hi, double tol) {
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

double rho_with(const Matrix& m, const UnitaryMember& u) { return spectral_radius(m * u.matrix); }

// Everything a single ascent start carries.
struct AscentState {
  UnitaryMember u;
  double value;
  int iterations = 0;
  bool converged = false;
};

// Projected gradient ascent with step halving. Returns when no step of
// length >= 1e-12 improves the objective, when the relative gain drops below
// `tol`, or when the iteration budget runs out.
void gradient_ascent(const Matrix& m, const BlockStructure& b, AscentState& s, const MuOptions& opts) {
  double step = 0.5;
  while (s.iterations < opts.max_iters) {
    ++s.iterations;
    const Matrix g = rho_gradient(m, s.u, b);
    const double gnorm = frobenius_norm(g);
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) return;
    bool accepted = false;
    double t = step;
    while (t >= 1e-12) {
      Matrix trial = s.u.matrix + g * Complex(t / gnorm);
      UnitaryMember candidate = project_unitary(trial, b);
      const double value = rho_with(m, candidate);
      if (value > s.value) {
        const double gain = value - s.value;
        s.u = std::move(candidate);
        s.value = value;
        accepted = true;
        step = std::min(2.0 * t, 2.0);
        if (gain <= opts.tol * std::max(s.value, std::numeric_limits<double>::min())) return;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) return;
  }
}

UnitaryMember with_phase(const BlockStructure& b, const UnitaryMember& u, std::size_t block, double phase) {
  auto params = u.parameters;
  params[block] = phase;
  return make_unitary_member(b, std::move(params));
}

// One cyclic sweep of per-block phase maximization (all-scalar structures).
void phase_sweep(const Matrix& m, const BlockStructure& b, AscentState& s) {
  const double h = kTwoPi / kPhaseScanPoints;
  for (std::size_t k = 0; k < b.num_blocks(); ++k) {
    const double base = std::get<double>(s.u.parameters[k]);
    auto eval = [&](double phase) { return rho_with(m, with_phase(b, s.u, k, phase)); };
    int best_j = 0;
    double best = s.value;
    for (int j = 1; j < kPhaseScanPoints; ++j) {
      const double v = eval(base + h * j);
      if (v > best) {
        best = v;
        best_j = j;
      }
    }
    const double centre = base + h * best_j;
    const auto [phase, neg] = golden_minimize([&](double p) { return -eval(p); }, centre - h, centre + h, kPhaseTol);
    double chosen = best_j == 0 ? base : centre;
    if (-neg > best) {
      best = -neg;
      chosen = phase;
    }
    if (best > s.value) {
      s.u = with_phase(b, s.u, k, std::remainder(chosen, kTwoPi));
      s.value = rho_with(m, s.u);
    }
  }
}

AscentState ascend(const Matrix& m, const BlockStructure& b, UnitaryMember start, const MuOptions& opts) {
  AscentState s{std::move(start), 0.0};
  s.value = rho_with(m, s.u);
  const bool scalar = b.all_scalar();
  while (s.iterations < opts.max_iters) {
    const double before = s.value;
    gradient_ascent(m, b, s, opts);
    if (scalar) {
      ++s.iterations;
      phase_sweep(m, b, s);
    }
    if (s.value - before <= opts.tol * std::max(s.value, std::numeric_limits<double>::min())) {
      s.converged = true;
      break;
    }
  }
  return s;
}

}  // namespace

void MuOptions::validate() const {
  if (restarts < 1 || max_iters < 1 || grid < 1) {
    throw Error(ErrorCode::kInput, "mu options: restarts, max_iters and grid must be positive");
  }
  if (!(tol > 0.0) || !(tol < 1.0)) throw Error(ErrorCode::kInput, "mu options: tol must lie in (0, 1)");
}

Matrix rho_gradient(const Matrix& m, const UnitaryMember& u, const BlockStructure& b) {
  const std::size_t n = m.size();
  Matrix g(n);
  const Matrix a = m * u.matrix;
  const auto pair = dominant_eigenpair(a);
  const double mod = std::abs(pair.value);
  if (mod == 0.0) return g;
  Complex yx{};
  for (std::size_t i = 0; i < n; ++i) yx += std::conj(pair.left[i]) * pair.right[i];
  if (yx == Complex{}) return g;
  // d|lambda| = Re(c * y^H M dU x), so the gradient is conj(c) (M^H y) x^H.
  const Complex c = std::conj(pair.value) / (mod * yx);
  const auto mhy = m.adjoint() * std::span<const Complex>(pair.left);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bi = b.block_of(i);
    const bool scalar = b.block(bi).kind == BlockKind::kRepeatedScalar;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.block_of(j) != bi || (scalar && i != j)) continue;
      g(i, j) = std::conj(c) * mhy[i] * std::conj(pair.right[j]);
    }
  }
  // Repeated scalar blocks: project onto multiples of the identity.
  for (std::size_t k = 0; k < b.num_blocks(); ++k) {
    if (b.block(k).kind != BlockKind::kRepeatedScalar) continue;
    const std::size_t lo = b.offset(k);
    const std::size_t size = b.block(k).size;
    Complex mean{};
    for (std::size_t i = lo; i < lo + size; ++i) mean += g(i, i);
    mean /= static_cast<double>(size);
    for (std::size_t i = lo; i < lo + size; ++i) g(i, i) = mean;
  }
  return g;
}

LowerBound mu_lower(const Matrix& m, const BlockStructure& b, const MuOptions& opts) {
  check_dims(m, b);
  opts.validate();
  LowerBound best;
  bool have = false;
  for (int r = 0; r < opts.restarts; ++r) {
    UnitaryMember start = r == 0 ? identity_member(b)
                                 : sample_unitary(b, splitmix64(opts.seed + static_cast<std::uint64_t>(r)));
    AscentState s = ascend(m, b, std::move(start), opts);
    best.iterations += s.iterations;
    if (!have || s.value > best.value) {
      best.value = s.value;
      best.witness = std::move(s.u);
      best.converged = s.converged;
      have = true;
    }
  }
  return best;
}

Matrix apply_log_scaling(const Matrix& m, const BlockStructure& b, std::span<const double> x) {
  const std::size_t n = m.size();
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = x[b.block_of(i)];
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i, j) * std::exp(e[i] - e[j]);
  return out;
}

UpperBound mu_upper(const Matrix& m, const BlockStructure& b, const MuOptions& opts) {
  check_dims(m, b);
  opts.validate();
  const std::size_t nb = b.num_blocks();
  std::vector<double> x(nb, 0.0);
  auto g = [&](std::span<const double> point) { return spectral_norm(apply_log_scaling(m, b, point)); };

  UpperBound out;
  double value = g(x);
  if (nb == 1 || value == 0.0) {
    out.value = value;
    out.witness.d.assign(nb, 1.0);
    out.converged = true;
    return out;
  }

  // Line minimization of t -> g(origin + t dir), expanding the bracket while
  // the minimizer sits on its boundary.
  auto line_search = [&](const std::vector<double>& origin, const std::vector<double>& dir, double lo,
                         double hi) {
    std::vector<double> p(nb);
    auto along = [&](double t) {
      for (std::size_t k = 0; k < nb; ++k) p[k] = origin[k] + t * dir[k];
      return g(p);
    };
    double width = hi - lo;
    auto [t, v] = golden_minimize(along, lo, hi, kLogTol);
    while (true) {
      const bool at_hi = hi - t < 1e-6 * width;
      const bool at_lo = t - lo < 1e-6 * width;
      if (!at_hi && !at_lo) break;
      double next_lo = at_hi ? hi : lo - 2.0 * kLogBracket;
      double next_hi = at_hi ? hi + 2.0 * kLogBracket : lo;
      bool inside = true;
      for (std::size_t k = 0; k < nb; ++k) {
        if (std::abs(origin[k] + next_lo * dir[k]) > kLogLimit || std::abs(origin[k] + next_hi * dir[k]) > kLogLimit)
          inside = false;
      }
      if (!inside) break;
      auto [t2, v2] = golden_minimize(along, next_lo, next_hi, kLogTol);
      if (!(v2 < v)) break;
      t = t2;
      v = v2;
      lo = next_lo;
      hi = next_hi;
      width = hi - lo;
    }
    return std::pair{t, v};
  };

  while (out.iterations < opts.max_iters) {
    ++out.iterations;
    const double before = value;
    const std::vector<double> sweep_start = x;
    for (std::size_t k = 0; k + 1 < nb; ++k) {
      std::vector<double> dir(nb, 0.0);
      dir[k] = 1.0;
      const auto [t, v] = line_search(x, dir, -kLogBracket, kLogBracket);
      if (v < value) {
        x[k] += t;
        value = v;
      }
    }
    std::vector<double> displacement(nb);
    double dnorm = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      displacement[k] = x[k] - sweep_start[k];
      dnorm += displacement[k] * displacement[k];
    }
    if (dnorm > 0.0 && nb > 2) {
      const auto [t, v] = line_search(x, displacement, -1.0, 2.0);
      if (v < value) {
        for (std::size_t k = 0; k < nb; ++k) x[k] += t * displacement[k];
        value = v;
      }
    }
    if (before - value <= opts.tol * value) {
      out.converged = true;
      break;
    }
  }
  out.value = value;
  out.witness.d.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) out.witness.d[k] = std::exp(x[k]);
  return out;
}

Matrix destabilizing_perturbation(const Matrix& m, const UnitaryMember& u) {
  m.validate();
  if (u.matrix.size() != m.size()) throw Error(ErrorCode::kDimensionMismatch, "witness size mismatch");
  const Complex lambda = eigenvalues(m * u.matrix).front();
  if (std::abs(lambda) == 0.0) {
    throw Error(ErrorCode::kNoPerturbation, "rho(M U) = 0: no destabilizing perturbation from this witness");
  }
  return u.matrix * (-1.0 / lambda);
}

OracleResult mu_bruteforce(const Matrix& m, const BlockStructure& b, const MuOptions& opts) {
  check_dims(m, b);
  opts.validate();
  if (!b.all_scalar()) throw Error(ErrorCode::kUnsupported, "brute-force oracle needs a purely scalar structure");
  const std::size_t nb = b.num_blocks();
  if (nb > 4) throw Error(ErrorCode::kComplexity, "brute-force oracle is limited to 4 scalar blocks");

  OracleResult out;
  out.grid = nb == 4 ? std::min(opts.grid, 64) : opts.grid;
  out.grid_step = kTwoPi / out.grid;
  const std::size_t free = nb - 1;
  if (free == 0) {
    out.value = spectral_radius(m);
    return out;
  }

  std::vector<double> phases(nb, 0.0);
  std::vector<double> expanded(m.size());
  Matrix mu_scaled(m.size());
  auto eval = [&](const std::vector<double>& ph) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Complex z = std::polar(1.0, ph[b.block_of(i)]);
      for (std::size_t r = 0; r < m.size(); ++r) mu_scaled(r, i) = m(r, i) * z;
    }
    return spectral_radius(mu_scaled);
  };

  // Odometer over `points` offsets per free angle around `centre`.
  auto scan = [&](const std::vector<double>& centre, int points, double spacing, int first_offset) {
    std::vector<int> idx(free, 0);
    std::vector<double> best_ph = centre;
    double best = -1.0;
    while (true) {
      for (std::size_t k = 0; k < free; ++k) phases[k + 1] = centre[k + 1] + spacing * (first_offset + idx[k]);
      const double v = eval(phases);
      if (v > best) {
        best = v;
        best_ph = phases;
      }
      std::size_t k = 0;
      while (k < free && ++idx[k] == points) idx[k++] = 0;
      if (k == free) break;
    }
    return std::pair{best_ph, best};
  };

  auto [best_ph, best] = scan(std::vector<double>(nb, 0.0), out.grid, out.grid_step, 0);
  double spacing = out.grid_step;
  for (int round = 0; round < 2; ++round) {
    spacing /= 10.0;
    auto [ph, v] = scan(best_ph, 21, spacing, -10);
    out.last_gain = std::max(0.0, v - best);
    if (v > best) {
      best = v;
      best_ph = ph;
    }
  }
  out.refined_step = spacing;
  out.value = best;
  return out;
}

MuReport compute_mu(const Matrix& m, const BlockStructure& b, const MuOptions& opts) {
  MuReport report;
  auto lower = mu_lower(m, b, opts);
  auto upper = mu_upper(m, b, opts);
  report.lower = lower.value;
  // Both are floating-point evaluations of the same mu; rounding can leave the
  // upper bound a few ulps below the lower one. Raising it keeps it valid.
  report.upper = std::max(upper.value, lower.value);
  report.lower_converged = lower.converged;
  report.upper_converged = upper.converged;
  report.lower_iterations = lower.iterations;
  report.upper_iterations = upper.iterations;
  report.u_witness = std::move(lower.witness);
  report.d_witness = std::move(upper.witness);
  const double sigma = spectral_norm(m);
  report.mu_near_zero = sigma == 0.0 || report.upper < 1e-3 * sigma;
  if (!report.mu_near_zero && report.lower > 0.0) {
    report.perturbation = destabilizing_perturbation(m, report.u_witness);
  }
  return report;
}

}  // namespace mukit
