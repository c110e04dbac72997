#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include "app/matrix_io.hpp"
#include "app/report.hpp"
#include "mukit/error.hpp"
#include "support.hpp"

namespace mukit::cli {
namespace {

using std::numbers::pi;

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInput;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mukit_test_io_" + name);
}

TEST(MatrixText, RoundTripIsBitExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Matrix m = test::gaussian(1 + seed % 6, seed);
    m(0, 0) = Complex(1.0 / 3, -std::numeric_limits<double>::denorm_min());
    const Matrix back = parse_matrix(format_matrix(m));
    EXPECT_EQ(back, m);
  }
}

TEST(MatrixText, OneRowPerLine) {
  const std::string text = format_matrix(Matrix{{1.0, Complex(0.0, 2.0)}, {3.0, 4.0}});
  EXPECT_NE(text.find("\"n\": 2"), std::string::npos) << text;
  EXPECT_NE(text.find("[[1, 0], [0, 2]]"), std::string::npos) << text;
}

TEST(MatrixText, AcceptsCompactJson) {
  const Matrix m = parse_matrix(R"({"n":2,"entries":[[[1,0],[0,-1]],[[0.5,0],[2,3]]]})");
  EXPECT_EQ(m, (Matrix{{1.0, Complex(0.0, -1.0)}, {0.5, Complex(2.0, 3.0)}}));
}

TEST(MatrixText, RejectsMalformed) {
  const char* bad[] = {
      "",
      "not json",
      R"({"entries":[[[1,0]]]})",
      R"({"n":2,"entries":[[[1,0],[0,0]],[[1,0]]]})",
      R"({"n":1,"entries":[[[1,0,0]]]})",
      R"({"n":1,"entries":[[["a",0]]]})",
      R"({"n":0,"entries":[]})",
      R"({"n":2,"entries":[[[1,0]]]})",
      R"({"n":1,"entries":[[[1e999,0]]]})",
      R"({"n":1,"entries":[[[NaN,0]]]})",
  };
  for (const char* text : bad) EXPECT_EQ(code_of([&] { parse_matrix(text); }), ErrorCode::kInput) << text;
}

TEST(MatrixText, FormatRejectsNonFinite) {
  Matrix m(1);
  m(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_EQ(code_of([&] { format_matrix(m); }), ErrorCode::kInput);
}

TEST(MatrixFile, WriteThenRead) {
  const auto path = temp_file("m.json");
  const Matrix m = test::matrix_co();
  write_matrix_file(path, m);
  EXPECT_EQ(read_matrix_file(path), m);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { read_matrix_file(path); }), ErrorCode::kInput);
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Certificate, RoundTrip) {
  OmegaCertificate cert;
  cert.n = 3;
  cert.delta = 0.7;
  cert.theta = {pi / 2, -pi / 2, pi / 3};
  cert.gamma = {0.1, 0.2, 0.3};
  cert.m = 3;
  cert.ds_terms = {{1.5, test::half_core()}};
  cert.cir_terms = {{0.25, {Parity::kOdd, 0.05, -0.1, 0.9, {}}}};
  cert.r = 1.0;
  const OmegaCertificate back = certificate_from_json(nlohmann::json::parse(certificate_to_json(cert).dump()));
  EXPECT_EQ(back.n, cert.n);
  EXPECT_EQ(back.delta, cert.delta);
  EXPECT_EQ(back.theta, cert.theta);
  EXPECT_EQ(back.gamma, cert.gamma);
  EXPECT_EQ(back.m, cert.m);
  ASSERT_EQ(back.ds_terms.size(), 1u);
  EXPECT_EQ(back.ds_terms[0].weight, 1.5);
  EXPECT_EQ(back.ds_terms[0].matrix, test::half_core());
  ASSERT_EQ(back.cir_terms.size(), 1u);
  EXPECT_EQ(back.cir_terms[0].spec.parity, Parity::kOdd);
  EXPECT_EQ(back.cir_terms[0].spec.b, -0.1);
  EXPECT_EQ(back.cir_terms[0].spec.alpha1, 0.9);
}

TEST(Certificate, ConeDescriptionNeedsOnlyTerms) {
  const auto j = nlohmann::json::parse(R"({"cir_terms":[{"weight":1,"parity":"even","a":1,"b":-0.5,"alphas":[0.5]}]})");
  const auto cert = certificate_from_json(j);
  ASSERT_EQ(cert.cir_terms.size(), 1u);
  EXPECT_EQ(cert.cir_terms[0].spec.alphas, std::vector<double>{0.5});
  EXPECT_EQ(code_of([] { certificate_from_json(nlohmann::json::parse(R"({"cir_terms":[{"parity":"sideways"}]})")); }),
            ErrorCode::kInput);
}

TEST(Report, JsonRoundTripIsEqual) {
  MuOptions opts;
  const auto report = analyze(test::matrix_a(), {"r:1,r:1,r:1", "r:3", "f:1,f:2"}, 1, opts);
  ASSERT_EQ(report.structures.size(), 3u);
  ASSERT_TRUE(report.structures[0].exact.has_value());
  EXPECT_NEAR(report.structures[0].exact->value, 0.1, 1e-14);
  EXPECT_TRUE(report.structures[0].exact->guaranteed);
  EXPECT_FALSE(report.structures[1].exact.has_value());
  EXPECT_TRUE(report.flags.sandwich_ok);
  EXPECT_TRUE(report.flags.certificates_ok);

  const auto text = report_to_json(report).dump(2);
  EXPECT_EQ(report_from_json(nlohmann::json::parse(text)), report);
}

TEST(Report, PowerTwoExactValueIsFlaggedInconsistent) {
  const auto report = analyze(test::matrix_a(), {"r:1,r:1,r:1"}, 2, MuOptions{});
  const auto& s = report.structures.at(0);
  ASSERT_TRUE(s.exact.has_value());
  EXPECT_FALSE(s.exact->guaranteed);
  EXPECT_FALSE(s.exact->consistent);
  EXPECT_NEAR(s.upper, 0.00522, 1e-4);
  EXPECT_FALSE(report.flags.certificates_ok);
  EXPECT_EQ(report_from_json(report_to_json(report)), report);
}

TEST(Report, DigestDependsOnEveryBit) {
  Matrix m = test::matrix_co();
  const auto d0 = digest(m);
  EXPECT_EQ(d0.n, 3u);
  m(2, 1) = std::nextafter(std::real(m(2, 1)), 2.0);
  EXPECT_NE(digest(m).checksum, d0.checksum);
}

TEST(Report, MalformedJsonIsInputError) {
  EXPECT_EQ(code_of([] { report_from_json(nlohmann::json::parse(R"({"m":1})")); }), ErrorCode::kInput);
}

}  // namespace
}  // namespace mukit::cli
