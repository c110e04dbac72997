#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mukit/constructors.hpp"
#include "mukit/error.hpp"
#include "mukit/mu.hpp"
#include "mukit/spectral.hpp"
#include "mukit/stochastic.hpp"
#include "support.hpp"

namespace mukit {
namespace {

using std::numbers::pi;
using test::kI;

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInput;
}

OmegaCertificate certificate_for_a() {
  OmegaCertificate cert;
  cert.n = 3;
  cert.delta = 0.1;
  cert.theta = {pi / 2, -pi / 2, pi / 3};
  cert.gamma = {0.0, 0.0, 0.0};
  cert.ds_terms = {{1.0, test::half_core()}};
  return cert;
}

// Random matrix with every row summing to c.
Matrix with_row_sum(std::size_t n, Complex c, std::uint64_t seed) {
  Matrix m = test::gaussian(n, seed);
  const auto rs = m.row_sums();
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) += c - rs[i];
  return m;
}

TEST(Profile, MatrixA) {
  const auto p = profile(test::matrix_a());
  ASSERT_EQ(p.row_sums.size(), 3u);
  EXPECT_NEAR(std::abs(p.row_sums[0] - kI / 10.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.row_sums[1] + kI / 10.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.row_sums[2] - Complex(1.0 / 20, std::sqrt(3.0) / 20)), 0.0, 1e-15);
  EXPECT_TRUE(p.equimodular_rows);
  EXPECT_FALSE(p.constant_row.has_value());
  EXPECT_NEAR(p.sigma, 0.1, 1e-14);
  EXPECT_NEAR(p.row_phases[0], pi / 2, 1e-12);
  EXPECT_NEAR(p.row_phases[1], -pi / 2, 1e-12);
  EXPECT_NEAR(p.row_phases[2], pi / 3, 1e-12);
}

TEST(Profile, DoublyStochasticAndE) {
  const auto d = profile(test::half_core());
  ASSERT_TRUE(d.constant_row && d.constant_col);
  EXPECT_NEAR(std::abs(*d.constant_row - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(*d.constant_col - 1.0), 0.0, 1e-15);

  const auto e = profile(test::matrix_e());
  ASSERT_TRUE(e.constant_row && e.constant_col);
  EXPECT_NEAR(std::abs(*e.constant_row - 8.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(*e.constant_col - 8.0), 0.0, 1e-12);
  EXPECT_NEAR(e.sigma, 16.0, 1e-11);
  EXPECT_FALSE(e.equimodular_rows);
  EXPECT_FALSE(e.equimodular_cols);
}

TEST(Profile, TotalsAgreeAndZeroPhases) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix m = test::gaussian(5, seed);
    const auto p = profile(m);
    Complex rows{}, cols{};
    for (const auto& z : p.row_sums) rows += z;
    for (const auto& z : p.col_sums) cols += z;
    EXPECT_NEAR(std::abs(rows - cols), 0.0, 1e-10 * p.scale);
  }
  const auto z = profile(Matrix::zero(3));
  EXPECT_TRUE(z.equimodular_rows);
  EXPECT_EQ(z.row_phases, std::vector<double>(3, 0.0));
}

TEST(CheckRowBound, Examples) {
  EXPECT_NEAR(check_row_bound(test::matrix_ce()), 0.0, 1e-12);
  EXPECT_EQ(check_row_bound(Matrix::zero(4)), 0.0);
  // Rows of the checkerboard sum to +1 and -1 alternately.
  EXPECT_EQ(code_of([] { check_row_bound(test::matrix_checkerboard5()); }), ErrorCode::kPrecondition);
}

TEST(CheckRowBound, ModulusNeverExceedsNorm) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Complex c{3 * g(rng), 3 * g(rng)};
    const Matrix m = with_row_sum(2 + seed % 6, c, seed);
    const auto p = profile(m);
    EXPECT_GE(check_row_bound(m), -1e-9 * p.scale) << "seed " << seed;
  }
}

TEST(CheckExtremalDoubly, Examples) {
  const auto co = check_extremal_doubly(test::matrix_co());
  EXPECT_TRUE(co.pass);
  EXPECT_LE(co.residual, 1e-14);
  const auto s = check_extremal_doubly(test::matrix_s());
  EXPECT_TRUE(s.pass);
  EXPECT_LE(test::max_dev(test::matrix_s().col_sums(), 11.0 / 3), 1e-12);
  EXPECT_TRUE(check_extremal_doubly(Matrix::zero(3)).pass);
  EXPECT_EQ(code_of([] { check_extremal_doubly(test::matrix_e()); }), ErrorCode::kPrecondition);
}

TEST(CheckExtremalDoubly, ExtremalRowSumForcesColumnSums) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 3 + seed % 4;
    std::vector<DoublyStochasticTerm> ds{{0.5 + seed % 3, birkhoff(n, 1 + seed % 3, seed)}};
    const Matrix x = cone_combo(ds, {}).x * std::polar(1.0, 0.37 * static_cast<double>(seed));
    const auto p = profile(x);
    ASSERT_TRUE(p.constant_row.has_value());
    ASSERT_NEAR(std::abs(*p.constant_row), p.sigma, 1e-8);
    const auto check = check_extremal_doubly(x);
    EXPECT_TRUE(check.pass);
    EXPECT_LE(test::max_dev(p.col_sums, *p.constant_row), 1e-6 * p.scale);
  }
}

TEST(MuExactPower, Examples) {
  const auto b3 = scalar_structure(3);
  EXPECT_NEAR(mu_exact_power(test::matrix_co(), 1, b3), 1.0, 1e-12);
  EXPECT_NEAR(mu_exact_power(test::matrix_co(), 3, b3), 1.0, 1e-12);
  EXPECT_NEAR(mu_exact_power(test::matrix_ce(), 2, scalar_structure(4)), 64.0 / 9, 1e-11);
  EXPECT_EQ(mu_exact_power(Matrix::zero(3), 4, b3), 0.0);
  EXPECT_EQ(code_of([&] { mu_exact_power(test::matrix_a(), 1, b3); }), ErrorCode::kNotInClass);
  EXPECT_EQ(code_of([&] { mu_exact_power(test::matrix_e(), 1, scalar_structure(4)); }), ErrorCode::kNotInClass);
  EXPECT_EQ(code_of([&] { mu_exact_power(test::matrix_co(), 1, scalar_structure(4)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(MuExactPower, NumericBoundsAgreeOnClassMembers) {
  const char* structures[] = {"r:1,r:1,r:1,r:1", "r:2,f:2", "f:4", "r:4", "f:1,r:1,f:2"};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<DoublyStochasticTerm> ds{{1.0 + 0.1 * seed, birkhoff(4, 2, seed)}};
    std::vector<CirculantTerm> cir{{0.5, {Parity::kEven, 1.0, -0.5, 0.0, {1.0 / 3}}}};
    const Matrix x = cone_combo(ds, cir).x * std::polar(1.0, 0.9 * static_cast<double>(seed));
    const auto b = parse_structure(structures[seed % 5], 4);
    for (unsigned m : {1u, 2u, 3u}) {
      const double exact = mu_exact_power(x, m, b);
      const Matrix xm = x.power(m);
      EXPECT_NEAR(mu_lower(xm, b).value, exact, 1e-5 * std::max(1.0, exact)) << "seed " << seed << " m " << m;
      EXPECT_NEAR(mu_upper(xm, b).value, exact, 1e-5 * std::max(1.0, exact)) << "seed " << seed << " m " << m;
    }
    EXPECT_NEAR(mu_upper(x, b).value, spectral_norm(x), 1e-8);
  }
}

TEST(MuExactEquimodular, Examples) {
  const auto b3 = scalar_structure(3);
  EXPECT_NEAR(mu_exact_equimodular(test::matrix_a(), 1, b3), 0.1, 1e-13);
  EXPECT_NEAR(mu_exact_equimodular(test::matrix_a(), 2, b3), 0.01, 1e-14);
  EXPECT_EQ(code_of([] { mu_exact_equimodular(test::matrix_a(), 1, parse_structure("r:3", 3)); }),
            ErrorCode::kHypothesis);
  EXPECT_EQ(code_of([] { mu_exact_equimodular(test::gaussian(3, 1), 1, scalar_structure(3)); }),
            ErrorCode::kNotInClass);
}

TEST(MuExactEquimodular, PowersNeedScalarPhases) {
  const Matrix a = test::matrix_a();
  EXPECT_TRUE(equimodular_power_exact(a, 1));
  EXPECT_FALSE(equimodular_power_exact(a, 2));
  // The closed form 0.01 overshoots mu(A^2).
  const Matrix a2 = a.power(2);
  const double up = mu_upper(a2, scalar_structure(3)).value;
  EXPECT_LT(up, 0.01 - 1e-3);

  // With equal phases the closed form holds for every power.
  const Matrix rotated = test::half_core() * std::polar(0.1, 0.8);
  EXPECT_TRUE(equimodular_power_exact(rotated, 3));
  EXPECT_NEAR(mu_upper(rotated.power(3), scalar_structure(3)).value, 1e-3, 1e-12);
}

TEST(MuExactEquimodular, FirstPowerEqualsNorm) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ph(-pi, pi);
    std::vector<double> theta(4);
    for (auto& t : theta) t = ph(rng);
    const Matrix a = Matrix::phase_diagonal(theta) * birkhoff(4, 3, seed) * Complex(2.5);
    const auto b = parse_structure(seed % 2 ? "r:1,r:1,f:2" : "f:2,r:1,r:1", 4);
    EXPECT_NEAR(mu_exact_equimodular(a, 1, b), spectral_norm(a), 1e-10);
    EXPECT_NEAR(mu_lower(a, b).value, 2.5, 1e-5 * 2.5);
    EXPECT_NEAR(mu_upper(a, b).value, 2.5, 1e-8);
  }
}

TEST(DecomposeEquimodular, MatrixA) {
  const auto f = decompose_equimodular(test::matrix_a(), FactorSide::kRow);
  EXPECT_NEAR(f.sigma, 0.1, 1e-14);
  const Matrix w = Matrix::phase_diagonal(std::vector<double>{pi / 2, -pi / 2, pi / 3});
  EXPECT_LE(max_abs_diff(f.w, w), 1e-12);
  EXPECT_LE(max_abs_diff(f.d_core, test::half_core()), 1e-12);
  EXPECT_LE(max_abs_diff(f.reassemble(), test::matrix_a()), 1e-12);
  EXPECT_EQ(code_of([] { decompose_equimodular(test::matrix_a(), FactorSide::kColumn); }), ErrorCode::kNotInClass);
}

TEST(DecomposeEquimodular, RoundTripBothSides) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ph(-pi, pi);
    std::vector<double> theta(5);
    for (auto& t : theta) t = ph(rng);
    const Matrix w = Matrix::phase_diagonal(theta);
    const Matrix d = birkhoff(5, 3, 40 + seed);
    for (FactorSide side : {FactorSide::kRow, FactorSide::kColumn}) {
      const Matrix a = (side == FactorSide::kRow ? w * d : d * w) * Complex(1.7);
      const auto f = decompose_equimodular(a, side);
      EXPECT_NEAR(f.sigma, 1.7, 1e-12);
      EXPECT_LE(max_abs_diff(f.w, w), 1e-12);
      EXPECT_LE(max_abs_diff(f.d_core, d), 1e-12);
      EXPECT_LE(max_abs_diff(f.reassemble(), a), 1e-10 * 1.7);
      EXPECT_TRUE(entry_bound_check(f.d_core).pass);
    }
  }
}

TEST(DecomposeEquimodular, ScaledIdentityAndZero) {
  const auto f = decompose_equimodular(Matrix::identity(3) * Complex(4.0), FactorSide::kRow);
  EXPECT_NEAR(f.sigma, 4.0, 1e-14);
  EXPECT_LE(max_abs_diff(f.w, Matrix::identity(3)), 1e-15);
  EXPECT_LE(max_abs_diff(f.d_core, Matrix::identity(3)), 1e-15);
  const auto z = decompose_equimodular(Matrix::zero(3), FactorSide::kColumn);
  EXPECT_EQ(z.sigma, 0.0);
  EXPECT_EQ(z.w, Matrix::identity(3));
  EXPECT_EQ(z.d_core, Matrix::zero(3));
}

TEST(EntryBoundCheck, Examples) {
  const auto co = entry_bound_check(test::matrix_co());
  EXPECT_TRUE(co.pass);
  EXPECT_NEAR(co.max_modulus, 0.9, 1e-15);
  EXPECT_TRUE(entry_bound_check(Matrix::identity(4)).pass);
  EXPECT_EQ(code_of([] { entry_bound_check(test::matrix_checkerboard5()); }), ErrorCode::kPrecondition);
  EXPECT_EQ(code_of([] { entry_bound_check(test::matrix_ce()); }), ErrorCode::kPrecondition);
}

TEST(MuExactClass, Examples) {
  EXPECT_NEAR(mu_exact_class(certificate_for_a(), scalar_structure(3)), 0.1, 1e-14);

  OmegaCertificate co;
  co.n = 3;
  co.delta = 2.5;
  co.theta = {0.3, 1.1, -2.0};
  co.gamma = {0.0, 0.0, 0.0};
  co.m = 4;
  co.cir_terms = {{1.0, {Parity::kOdd, 1.0 / 20, -std::sqrt(3.0) / 20, 0.9, {}}}};
  EXPECT_NEAR(mu_exact_class(co, scalar_structure(3)), 2.5, 1e-12);

  OmegaCertificate id;
  id.n = 3;
  id.delta = 1.0;
  id.theta = id.gamma = {0.0, 0.0, 0.0};
  id.m = 5;
  id.ds_terms = {{1.0, Matrix::identity(3)}};
  EXPECT_NEAR(mu_exact_class(id, parse_structure("r:3", 3)), 1.0, 1e-15);

  EXPECT_EQ(code_of([] { mu_exact_class(certificate_for_a(), parse_structure("r:3", 3)); }), ErrorCode::kHypothesis);
  EXPECT_EQ(code_of([] { mu_exact_class(certificate_for_a(), scalar_structure(4)); }), ErrorCode::kDimensionMismatch);
}

TEST(MuExactClass, ExactWhenPhasesCancel) {
  // theta + gamma constant makes (W_theta X W_gamma)^m a unitary similarity of
  // a phase times X^m, so delta r^m is mu.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ph(-pi, pi);
    OmegaCertificate cert;
    cert.n = 3;
    cert.delta = 2.0;
    cert.m = 2;
    cert.theta.resize(3);
    cert.gamma.resize(3);
    const double shift = ph(rng);
    for (std::size_t i = 0; i < 3; ++i) {
      cert.theta[i] = ph(rng);
      cert.gamma[i] = shift - cert.theta[i];
    }
    cert.cir_terms = {{1.0, {Parity::kOdd, 1.0 / 20, -std::sqrt(3.0) / 20, 0.9, {}}}};
    EXPECT_TRUE(cert.exact_mu_guaranteed());
    const auto inst = omega_build(cert);
    const auto b = scalar_structure(3);
    EXPECT_NEAR(mu_exact_class(inst.certificate, b), 2.0, 1e-12);
    EXPECT_NEAR(mu_lower(inst.matrix, b).value, 2.0, 1e-5);
    EXPECT_NEAR(mu_upper(inst.matrix, b).value, 2.0, 1e-5);
  }
}

TEST(MuExactClass, UpperBoundOnlyForGeneralPhases) {
  // delta = 2, m = 2, X = C^o, random theta: the closed form 2 is an upper
  // bound and the numeric mu sits strictly below it.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ph(-pi, pi);
  OmegaCertificate cert;
  cert.n = 3;
  cert.delta = 2.0;
  cert.m = 2;
  cert.theta = {ph(rng), ph(rng), ph(rng)};
  cert.gamma = {0.0, 0.0, 0.0};
  cert.cir_terms = {{1.0, {Parity::kOdd, 1.0 / 20, -std::sqrt(3.0) / 20, 0.9, {}}}};
  EXPECT_FALSE(cert.exact_mu_guaranteed());
  const auto inst = omega_build(cert);
  const auto b = scalar_structure(3);
  EXPECT_LE(spectral_norm(inst.matrix), 2.0 + 1e-12);
  const double lo = mu_lower(inst.matrix, b).value;
  const double up = mu_upper(inst.matrix, b).value;
  EXPECT_NEAR(lo, up, 1e-6);
  EXPECT_LT(up, 2.0 - 1e-3);
  EXPECT_NEAR(lo, mu_bruteforce(inst.matrix, b).value, 1e-6);
}

}  // namespace
}  // namespace mukit
