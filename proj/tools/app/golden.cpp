#include "golden.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "mukit/block_structure.hpp"
#include "mukit/constructors.hpp"
#include "mukit/error.hpp"
#include "mukit/spectral.hpp"

namespace mukit::cli {
namespace {

using std::numbers::pi;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string num(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.10g%+.10gi", z.real(), z.imag());
  return buf;
}

class Recorder {
 public:
  explicit Recorder(std::string criterion) : criterion_(std::move(criterion)) {}

  // |actual - expected| <= tol
  void near(std::string name, double expected, double actual, double tol, std::string note = {}) {
    push(std::move(name), num(expected), num(actual), tol, std::abs(actual - expected) <= tol, std::move(note));
  }

  void near(std::string name, Complex expected, Complex actual, double tol, std::string note = {}) {
    push(std::move(name), num(expected), num(actual), tol, std::abs(actual - expected) <= tol, std::move(note));
  }

  // actual <= tol, reported against an expected value of 0
  void small(std::string name, double actual, double tol, std::string note = {}) {
    push(std::move(name), "0", num(actual), tol, actual <= tol, std::move(note));
  }

  void holds(std::string name, std::string expected, std::string actual, bool pass, std::string note = {}) {
    push(std::move(name), std::move(expected), std::move(actual), 0.0, pass, std::move(note));
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  void push(std::string name, std::string expected, std::string actual, double tol, bool pass, std::string note) {
    checks_.push_back({criterion_, std::move(name), std::move(expected), std::move(actual), tol, pass, std::move(note)});
  }

  std::string criterion_;
  std::vector<Check> checks_;
};

double max_sum_deviation(const std::vector<Complex>& sums, Complex target) {
  double worst = 0.0;
  for (const auto& s : sums) worst = std::max(worst, std::abs(s - target));
  return worst;
}

// Random partition of n into scalar and full blocks.
BlockStructure random_structure(std::size_t n, std::mt19937_64& rng) {
  std::vector<BlockSpec> blocks;
  std::size_t used = 0;
  while (used < n) {
    std::uniform_int_distribution<std::size_t> size_dist(1, std::min<std::size_t>(3, n - used));
    const std::size_t size = size_dist(rng);
    const bool full = std::bernoulli_distribution(0.4)(rng);
    blocks.push_back({full ? BlockKind::kFull : BlockKind::kRepeatedScalar, size});
    used += size;
  }
  return BlockStructure(std::move(blocks));
}

// Circulant spec of size n (n >= 2); parameters from `rng`.
CirculantSpec random_spec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  std::uniform_real_distribution<double> sym(-2.0, 2.0);
  CirculantSpec spec;
  spec.parity = n % 2 == 0 ? Parity::kEven : Parity::kOdd;
  const std::size_t k = n / 2;
  spec.a = pos(rng);
  spec.b = sym(rng);
  if (spec.parity == Parity::kOdd) spec.alpha1 = pos(rng);
  spec.alphas.resize(k - 1);
  for (auto& v : spec.alphas) v = pos(rng);
  return spec;
}

// Largest distance in a greedy nearest-neighbour matching of two multisets.
double multiset_distance(const std::vector<Complex>& a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& z : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&z](Complex p, Complex q) { return std::abs(p - z) < std::abs(q - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

std::string count_note(std::size_t bad, std::size_t total, const char* what) {
  return std::to_string(bad) + " of " + std::to_string(total) + " " + what;
}

std::vector<Check> g1() {
  Recorder r("G1");
  OmegaCertificate cert;
  cert.n = 3;
  cert.delta = 0.1;
  cert.theta = {pi / 2, -pi / 2, pi / 3};
  cert.gamma = {0.0, 0.0, 0.0};
  cert.m = 1;
  cert.ds_terms = {{1.0, Matrix{{0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}}}};
  const OmegaInstance inst = omega_build(cert);
  const Matrix a = example_a();
  r.small("A entrywise reconstruction", max_abs_diff(inst.matrix, a), 1e-12);
  const double sigma = spectral_norm(a);
  r.near("sigma_max(A)", 0.1, sigma, 1e-9);
  r.near("dominant eigenvalue of A", Complex(0.0488352, 0.0447302), eigenvalues(a).front(), 1e-5);
  const double rho = spectral_radius(a);
  r.holds("rho(A) < sigma_max(A) - 0.01", "< " + num(sigma - 0.01), num(rho), rho < sigma - 0.01);
  return r.take();
}

std::vector<Check> g2(const GoldenOptions& opts) {
  Recorder r("G2");
  const Matrix a = example_a();
  const BlockStructure b = parse_structure("r:1,r:1,r:1", 3);
  for (unsigned m : {1u, 2u}) {
    const Matrix am = a.power(m);
    const double target = std::pow(0.1, m);
    const auto lo = mu_lower(am, b, opts.mu);
    const auto up = mu_upper(am, b, opts.mu);
    const std::string tag = "m=" + std::to_string(m);
    const std::string note = m == 1 ? "" : "phases of W_theta differ, so 0.1^m is only an upper bound for m >= 2";
    r.near("mu_lower(A^m) " + tag, target, lo.value, 1e-5, note);
    r.near("mu_upper(A^m) " + tag, target, up.value, 1e-5, note);
  }
  return r.take();
}

std::vector<Check> g3(const GoldenOptions& opts) {
  Recorder r("G3");
  Matrix co = circulant_odd(1.0 / 20, -std::sqrt(3.0) / 20, 0.9, {}).matrix;
  r.small("C^o entrywise vs printed matrix", max_abs_diff(co, example_co()), 1e-12);
  co(0, 0) += opts.co_entry_offset;
  const auto sv = singular_values(co);
  const double want[] = {1.0, 1.0, 0.7};
  for (std::size_t i = 0; i < 3; ++i) r.near("singular value " + std::to_string(i + 1), want[i], sv[i], 1e-9);
  r.small("row sums - 1", max_sum_deviation(co.row_sums(), 1.0), 1e-12);
  r.small("column sums - 1", max_sum_deviation(co.col_sums(), 1.0), 1e-12);
  const BlockStructure b = parse_structure("r:1,r:1,r:1", 3);
  r.near("mu_lower(C^o)", 1.0, mu_lower(co, b, opts.mu).value, 1e-5);
  r.near("mu_upper(C^o)", 1.0, mu_upper(co, b, opts.mu).value, 1e-5);
  return r.take();
}

std::vector<Check> g4() {
  Recorder r("G4");
  const std::vector<double> third{1.0 / 3};
  const Matrix ce = circulant_even(1.0, -0.5, third).matrix;
  r.small("C^e entrywise vs printed matrix", max_abs_diff(ce, example_ce()), 1e-12);
  r.near("sigma_max(C^e)", 8.0 / 3, spectral_norm(ce), 1e-9);
  const std::vector<double> three{3.0};
  const auto e = circulant_even(1.0, 2.0, three);
  r.small("E entrywise vs printed matrix", max_abs_diff(e.matrix, example_e()), 1e-12);
  r.small("E row sums - 8", max_sum_deviation(e.matrix.row_sums(), 8.0), 1e-12);
  r.near("sigma_max(E)", 16.0, spectral_norm(e.matrix), 1e-9);
  r.holds("E flagged as outside the norm condition", "warning", e.warning ? "warning" : "none", e.warning.has_value());
  return r.take();
}

std::vector<Check> g5() {
  Recorder r("G5");
  const std::vector<double> third{1.0 / 3};
  const Matrix ds{{0.25, 0.0, 0.375, 0.375},
                  {0.25, 0.0, 0.375, 0.375},
                  {0.25, 0.5, 5.0 / 32, 3.0 / 32},
                  {0.25, 0.5, 3.0 / 32, 5.0 / 32}};
  const Matrix s = circulant_even(1.0, -0.5, third).matrix + ds;
  r.small("S entrywise vs printed matrix", max_abs_diff(s, example_s()), 1e-12);
  r.small("row sums - 11/3", max_sum_deviation(s.row_sums(), 11.0 / 3), 1e-12);
  r.small("column sums - 11/3", max_sum_deviation(s.col_sums(), 11.0 / 3), 1e-12);
  r.near("sigma_max(S)", 11.0 / 3, spectral_norm(s), 1e-9);
  const double residual = max_abs_diff(s.adjoint() * s, s * s.adjoint());
  r.holds("normality residual > 1e-3", "> 0.001", num(residual), residual > 1e-3);
  return r.take();
}

std::vector<Check> g6() {
  Recorder r("G6");
  const Matrix d = checkerboard(5);
  r.small("checkerboard entrywise vs printed matrix", max_abs_diff(d, example_checkerboard()), 0.0);
  r.near("sigma_max(D)", 5.0, spectral_norm(d), 1e-9);
  r.near("frobenius(D)", 5.0, frobenius_norm(d), 1e-9);
  const std::string note = "(-1)^{i+j} rows and columns sum to +1 and -1 alternately";
  r.small("row sums - 1", max_sum_deviation(d.row_sums(), 1.0), 1e-12, note);
  r.small("column sums - 1", max_sum_deviation(d.col_sums(), 1.0), 1e-12, note);
  return r.take();
}

std::vector<Check> g7(const GoldenOptions& opts) {
  Recorder r("G7");
  constexpr std::size_t kCases = 200;
  std::mt19937_64 rng(7001);
  std::size_t sandwich_bad = 0;
  std::size_t norm_bad = 0;
  std::size_t det_bad = 0;
  double worst_sandwich = 0.0;
  double worst_norm = 0.0;
  double worst_det = 0.0;
  for (std::size_t c = 0; c < kCases; ++c) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const Matrix m = random_matrix(n, rng());
    const BlockStructure b = random_structure(n, rng);
    const auto spec = spectral_summary(m);
    const MuReport mu = compute_mu(m, b, opts.mu);
    const double violation = std::max({spec.rho - mu.lower, mu.lower - mu.upper, mu.upper - spec.sigma_max, 0.0});
    worst_sandwich = std::max(worst_sandwich, violation);
    if (spec.rho - 1e-6 > mu.lower || mu.lower > mu.upper || mu.upper > spec.sigma_max + 1e-6) ++sandwich_bad;
    if (!mu.perturbation) {
      ++norm_bad;
      continue;
    }
    const double norm_err = std::abs(spectral_norm(*mu.perturbation) * mu.lower - 1.0);
    worst_norm = std::max(worst_norm, norm_err);
    if (norm_err > 1e-8) ++norm_bad;
    const double det = std::abs(determinant(Matrix::identity(n) + m * *mu.perturbation));
    const double det_rel = det / std::pow(std::max(1.0, spec.sigma_max), static_cast<double>(n));
    worst_det = std::max(worst_det, det_rel);
    if (det_rel > 1e-6) ++det_bad;
  }
  r.small("rho <= lower <= upper <= sigma_max (worst violation)", worst_sandwich, 1e-6,
          count_note(sandwich_bad, kCases, "cases violate"));
  r.small("|sigma_max(Delta) * lower - 1| (worst)", worst_norm, 1e-8, count_note(norm_bad, kCases, "cases violate"));
  r.small("|det(I + M Delta)| / max(1, sigma)^n (worst)", worst_det, 1e-6, count_note(det_bad, kCases, "cases violate"));
  if (sandwich_bad + norm_bad + det_bad > 0) {
    r.holds("all cases pass", "0 failures", std::to_string(sandwich_bad + norm_bad + det_bad), false);
  }
  return r.take();
}

std::vector<Check> g8(const GoldenOptions& opts) {
  Recorder r("G8");
  constexpr std::size_t kCases = 25;
  const BlockStructure b = scalar_structure(3);
  MuOptions fine = opts.mu;
  fine.grid = opts.grid;
  MuOptions coarse = opts.mu;
  coarse.grid = std::max(1, opts.grid / 2);
  double worst_lower = 0.0;
  double worst_self = 0.0;
  std::size_t lower_bad = 0;
  std::size_t self_bad = 0;
  for (std::size_t c = 0; c < kCases; ++c) {
    const Matrix m = random_matrix(3, 8000 + c);
    const double oracle = mu_bruteforce(m, b, fine).value;
    const double half = mu_bruteforce(m, b, coarse).value;
    const double lower = mu_lower(m, b, opts.mu).value;
    worst_lower = std::max(worst_lower, std::abs(lower - oracle));
    worst_self = std::max(worst_self, std::abs(half - oracle));
    if (std::abs(lower - oracle) > 5e-3) ++lower_bad;
    if (std::abs(half - oracle) > 1e-3) ++self_bad;
  }
  r.small("|mu_lower - oracle(grid " + std::to_string(fine.grid) + ")| (worst)", worst_lower, 5e-3,
          count_note(lower_bad, kCases, "cases exceed"));
  r.small("|oracle(grid " + std::to_string(coarse.grid) + ") - oracle(grid " + std::to_string(fine.grid) +
              ")| (worst)",
          worst_self, 1e-3, count_note(self_bad, kCases, "cases exceed"));
  return r.take();
}

std::vector<Check> g9(const GoldenOptions& opts) {
  Recorder r("G9");
  constexpr std::size_t kCases = 100;
  std::mt19937_64 rng(9001);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  double worst_sums = 0.0;
  double worst_norm = 0.0;
  double worst_mu = 0.0;
  std::size_t sums_bad = 0;
  std::size_t norm_bad = 0;
  std::size_t mu_bad = 0;
  std::size_t circulant_terms = 0;
  for (std::size_t c = 0; c < kCases; ++c) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
    std::vector<DoublyStochasticTerm> ds;
    std::vector<CirculantTerm> cir;
    const std::size_t nds = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    std::size_t ncir = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    if (nds + ncir == 0) ncir = 1;
    for (std::size_t t = 0; t < nds; ++t) {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      ds.push_back({weight(rng), birkhoff(n, k, rng())});
    }
    for (std::size_t t = 0; t < ncir; ++t) {
      for (int attempt = 0; attempt < 200; ++attempt) {
        CirculantSpec spec = random_spec(n, rng);
        if (spec.parity == Parity::kEven && spec.a < std::abs(spec.b)) continue;
        if (!spec.norm_equals_row_sum()) continue;
        cir.push_back({weight(rng), std::move(spec)});
        ++circulant_terms;
        break;
      }
    }
    if (ds.empty() && cir.empty()) ds.push_back({1.0, birkhoff(n, 2, rng())});

    const ConeCombination x = cone_combo(ds, cir);
    const double rs = x.row_sum;
    const double sums = std::max(max_sum_deviation(x.x.row_sums(), rs), max_sum_deviation(x.x.col_sums(), rs));
    worst_sums = std::max(worst_sums, sums);
    if (sums > 1e-10 * std::max(1.0, rs)) ++sums_bad;
    const double norm_err = std::abs(spectral_norm(x.x) - rs);
    worst_norm = std::max(worst_norm, norm_err);
    if (norm_err > 1e-8) ++norm_bad;

    const BlockStructure b = random_structure(n, rng);
    for (unsigned m : {1u, 2u}) {
      const Matrix xm = x.x.power(m);
      const double target = std::pow(rs, static_cast<double>(m));
      const double lo = mu_lower(xm, b, opts.mu).value;
      const double up = mu_upper(xm, b, opts.mu).value;
      const double err = std::max(std::abs(lo - target), std::abs(up - target));
      worst_mu = std::max(worst_mu, err);
      if (err > 1e-5) ++mu_bad;
    }
  }
  r.small("row and column sums - r (worst)", worst_sums, 1e-10,
          count_note(sums_bad, kCases, "cases exceed 1e-10 max(1, r)") + ", " +
              std::to_string(circulant_terms) + " circulant terms");
  r.small("|sigma_max(X) - r| (worst)", worst_norm, 1e-8, count_note(norm_bad, kCases, "cases exceed"));
  r.small("|mu bounds of X^m - r^m|, m in {1, 2} (worst)", worst_mu, 1e-5,
          count_note(mu_bad, 2 * kCases, "evaluations exceed"));
  return r.take();
}

std::vector<Check> g10() {
  Recorder r("G10");
  constexpr std::size_t kCases = 50;
  std::mt19937_64 rng(10001);
  double worst_eigs = 0.0;
  double worst_odd = 0.0;
  double worst_even = 0.0;
  std::size_t eigs_bad = 0;
  std::size_t odd_bad = 0;
  std::size_t odd_total = 0;
  std::size_t even_bad = 0;
  std::size_t even_total = 0;
  for (std::size_t c = 0; c < kCases; ++c) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 16)(rng);
    const CirculantSpec spec = random_spec(n, rng);
    const auto row = spec.first_row();
    const Matrix m = circulant(row);
    const double dist = multiset_distance(circulant_eigs(row), eigenvalues(m));
    worst_eigs = std::max(worst_eigs, dist);
    if (dist > 1e-9) ++eigs_bad;
    const double err = std::abs(spectral_norm(m) - spec.row_sum());
    if (spec.parity == Parity::kOdd) {
      ++odd_total;
      worst_odd = std::max(worst_odd, err);
      if (err > 1e-9) ++odd_bad;
    } else if (spec.a >= std::abs(spec.b)) {
      ++even_total;
      worst_even = std::max(worst_even, err);
      if (err > 1e-9) ++even_bad;
    }
  }
  r.small("circulant_eigs vs dense eigenvalues (worst)", worst_eigs, 1e-9,
          count_note(eigs_bad, kCases, "specs exceed"));
  r.small("odd: |sigma_max - delta_o| (worst)", worst_odd, 1e-9, count_note(odd_bad, odd_total, "odd specs exceed"));
  r.small("even, a >= |b|: |sigma_max - delta_e| (worst)", worst_even, 1e-9,
          count_note(even_bad, even_total, "even specs exceed"));
  return r.take();
}

}  // namespace

Matrix example_a() {
  const Complex i{0.0, 1.0};
  const Complex w = Complex(1.0, std::sqrt(3.0)) / 40.0;
  return Matrix{{i / 20.0, 0.0, i / 20.0}, {-i / 20.0, -i / 20.0, 0.0}, {0.0, w, w}};
}

Matrix example_co() {
  const Complex lo = Complex(0.5, -std::sqrt(3.0) / 2) / 10.0;
  const Complex hi = Complex(0.5, std::sqrt(3.0) / 2) / 10.0;
  return Matrix{{lo, hi, 0.9}, {0.9, lo, hi}, {hi, 0.9, lo}};
}

Matrix example_ce() {
  const Complex p{1.0, -0.5}, q{1.0, 0.5}, s{1.0 / 3, -1.0 / 6}, t{1.0 / 3, 1.0 / 6};
  return Matrix{{p, q, s, t}, {t, p, q, s}, {s, t, p, q}, {q, s, t, p}};
}

Matrix example_e() {
  const Complex p{1, 2}, q{1, -2}, s{3, 6}, t{3, -6};
  return Matrix{{p, q, s, t}, {t, p, q, s}, {s, t, p, q}, {q, s, t, p}};
}

Matrix example_s() {
  return Matrix{{{5.0 / 4, -0.5}, {1.0, 0.5}, {17.0 / 24, -1.0 / 6}, {17.0 / 24, 1.0 / 6}},
                {{7.0 / 12, 1.0 / 6}, {1.0, -0.5}, {11.0 / 8, 0.5}, {17.0 / 24, -1.0 / 6}},
                {{7.0 / 12, -1.0 / 6}, {5.0 / 6, 1.0 / 6}, {37.0 / 32, -0.5}, {35.0 / 32, 0.5}},
                {{5.0 / 4, 0.5}, {5.0 / 6, -1.0 / 6}, {41.0 / 96, 1.0 / 6}, {37.0 / 32, -0.5}}};
}

Matrix example_checkerboard() {
  return Matrix{{1, -1, 1, -1, 1}, {-1, 1, -1, 1, -1}, {1, -1, 1, -1, 1}, {-1, 1, -1, 1, -1}, {1, -1, 1, -1, 1}};
}

std::vector<Check> run_criterion(int criterion, const GoldenOptions& opts) {
  switch (criterion) {
    case 1: return g1();
    case 2: return g2(opts);
    case 3: return g3(opts);
    case 4: return g4();
    case 5: return g5();
    case 6: return g6();
    case 7: return g7(opts);
    case 8: return g8(opts);
    case 9: return g9(opts);
    case 10: return g10();
    default: throw Error(ErrorCode::kInput, "criteria are numbered 1 to 10");
  }
}

std::vector<Check> run_golden(const GoldenOptions& opts) {
  std::vector<Check> all;
  for (int g = 1; g <= 10; ++g) {
    auto part = run_criterion(g, opts);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return all;
}

std::vector<CriterionSummary> summarize(const std::vector<Check>& checks) {
  std::vector<CriterionSummary> out;
  for (const auto& c : checks) {
    auto it = std::find_if(out.begin(), out.end(), [&c](const auto& s) { return s.criterion == c.criterion; });
    if (it == out.end()) it = out.insert(out.end(), {c.criterion, 0, 0});
    ++it->checks;
    if (!c.pass) ++it->failed;
  }
  return out;
}

std::string format_check(const Check& c) {
  std::string line = (c.pass ? "PASS " : "FAIL ") + c.criterion + "  " + c.name + "  expected " + c.expected +
                     "  actual " + c.actual;
  if (c.tolerance > 0.0) line += "  tol " + num(c.tolerance);
  if (!c.note.empty()) line += "  (" + c.note + ")";
  return line;
}

}  // namespace mukit::cli
