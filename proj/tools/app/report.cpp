#include "report.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "matrix_io.hpp"
#include "mukit/error.hpp"

namespace mukit::cli {
namespace {

constexpr double kConsistencyTol = 1e-5;
constexpr double kSandwichTol = 1e-6;

nlohmann::json complex_list(const std::vector<Complex>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

std::vector<Complex> complex_list_from(const nlohmann::json& j) {
  std::vector<Complex> out;
  for (const auto& z : j) out.push_back(complex_from_json(z));
  return out;
}

nlohmann::json optional_complex(const std::optional<Complex>& z) {
  return z ? complex_to_json(*z) : nlohmann::json(nullptr);
}

std::optional<Complex> optional_complex_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return complex_from_json(j);
}

}  // namespace

InputDigest digest(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  Complex sum{};
  for (const auto& z : m.entries()) {
    mix(z.real());
    mix(z.imag());
    sum += z;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return {m.size(), buf, sum};
}

AnalysisReport analyze(const Matrix& a, const std::vector<std::string>& structures, unsigned m,
                       const MuOptions& opts) {
  a.validate();
  if (m < 1) throw Error(ErrorCode::kInput, "--m must be >= 1");
  AnalysisReport report;
  report.input = digest(a);
  report.m = m;
  report.seed = opts.seed;
  report.tol = opts.tol;

  const auto p = profile(a, kExtremalTol);
  report.profile = {p.row_sums,         p.col_sums,         p.constant_row, p.constant_col, p.sigma,
                    p.equimodular_rows, p.equimodular_cols, p.row_phases,   p.col_phases};

  const Matrix am = a.power(m);
  const auto spec = spectral_summary(am);
  report.spectral = {spec.sigma_max, spec.rho, spec.singular_values, spec.frobenius};
  const double scale = tolerance_scale(am);

  for (const auto& text : structures) {
    const BlockStructure b = parse_structure(text, a.size());
    const MuReport mu = compute_mu(am, b, opts);
    StructureResult s;
    s.structure = b.to_string();
    s.lower = mu.lower;
    s.upper = mu.upper;
    s.lower_converged = mu.lower_converged;
    s.upper_converged = mu.upper_converged;
    s.lower_iterations = mu.lower_iterations;
    s.upper_iterations = mu.upper_iterations;
    s.mu_near_zero = mu.mu_near_zero;
    s.u_witness = mu.u_witness.matrix;
    s.d_witness = mu.d_witness.d;
    s.perturbation = mu.perturbation;
    if (mu.perturbation) {
      s.perturbation_norm = spectral_norm(*mu.perturbation);
      s.det_residual = std::abs(determinant(Matrix::identity(a.size()) + am * *mu.perturbation));
    }

    try {
      ExactMu exact;
      exact.value = mu_exact_equimodular(a, m, b);
      exact.guaranteed = equimodular_power_exact(a, m);
      exact.deviation = std::max(std::abs(exact.value - s.lower), std::abs(exact.value - s.upper));
      exact.consistent = exact.deviation <= kConsistencyTol;
      s.exact = exact;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotInClass && e.code() != ErrorCode::kHypothesis) throw;
    }

    report.flags.converged = report.flags.converged && s.lower_converged && s.upper_converged;
    report.flags.sandwich_ok = report.flags.sandwich_ok && spec.rho - kSandwichTol * scale <= s.lower &&
                               s.lower <= s.upper + kSandwichTol * scale &&
                               s.upper <= spec.sigma_max + kSandwichTol * scale;
    if (s.exact) report.flags.certificates_ok = report.flags.certificates_ok && s.exact->consistent;
    report.structures.push_back(std::move(s));
  }
  return report;
}

nlohmann::json report_to_json(const AnalysisReport& r) {
  nlohmann::json structures = nlohmann::json::array();
  for (const auto& s : r.structures) {
    nlohmann::json exact = nullptr;
    if (s.exact) {
      exact = {{"value", s.exact->value},
               {"guaranteed", s.exact->guaranteed},
               {"consistent", s.exact->consistent},
               {"deviation", s.exact->deviation}};
    }
    structures.push_back({{"structure", s.structure},
                          {"lower", s.lower},
                          {"upper", s.upper},
                          {"lower_converged", s.lower_converged},
                          {"upper_converged", s.upper_converged},
                          {"lower_iterations", s.lower_iterations},
                          {"upper_iterations", s.upper_iterations},
                          {"mu_near_zero", s.mu_near_zero},
                          {"u_witness", matrix_to_json(s.u_witness)},
                          {"d_witness", s.d_witness},
                          {"perturbation", s.perturbation ? matrix_to_json(*s.perturbation) : nlohmann::json(nullptr)},
                          {"perturbation_norm", s.perturbation_norm},
                          {"det_residual", s.det_residual},
                          {"exact", exact}});
  }
  const auto& p = r.profile;
  return {
      {"input", {{"n", r.input.n}, {"checksum", r.input.checksum}, {"entry_sum", complex_to_json(r.input.entry_sum)}}},
      {"m", r.m},
      {"seed", r.seed},
      {"tol", r.tol},
      {"profile",
       {{"row_sums", complex_list(p.row_sums)},
        {"col_sums", complex_list(p.col_sums)},
        {"constant_row", optional_complex(p.constant_row)},
        {"constant_col", optional_complex(p.constant_col)},
        {"sigma", p.sigma},
        {"equimodular_rows", p.equimodular_rows},
        {"equimodular_cols", p.equimodular_cols},
        {"row_phases", p.row_phases},
        {"col_phases", p.col_phases}}},
      {"spectral",
       {{"sigma_max", r.spectral.sigma_max},
        {"rho", r.spectral.rho},
        {"singular_values", r.spectral.singular_values},
        {"frobenius", r.spectral.frobenius}}},
      {"structures", structures},
      {"flags",
       {{"converged", r.flags.converged},
        {"sandwich_ok", r.flags.sandwich_ok},
        {"certificates_ok", r.flags.certificates_ok}}},
  };
}

AnalysisReport report_from_json(const nlohmann::json& j) {
  try {
    AnalysisReport r;
    const auto& in = j.at("input");
    r.input = {in.at("n").get<std::size_t>(), in.at("checksum").get<std::string>(),
               complex_from_json(in.at("entry_sum"))};
    r.m = j.at("m").get<unsigned>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tol = j.at("tol").get<double>();
    const auto& p = j.at("profile");
    r.profile.row_sums = complex_list_from(p.at("row_sums"));
    r.profile.col_sums = complex_list_from(p.at("col_sums"));
    r.profile.constant_row = optional_complex_from(p.at("constant_row"));
    r.profile.constant_col = optional_complex_from(p.at("constant_col"));
    r.profile.sigma = p.at("sigma").get<double>();
    r.profile.equimodular_rows = p.at("equimodular_rows").get<bool>();
    r.profile.equimodular_cols = p.at("equimodular_cols").get<bool>();
    r.profile.row_phases = p.at("row_phases").get<std::vector<double>>();
    r.profile.col_phases = p.at("col_phases").get<std::vector<double>>();
    const auto& sp = j.at("spectral");
    r.spectral = {sp.at("sigma_max").get<double>(), sp.at("rho").get<double>(),
                  sp.at("singular_values").get<std::vector<double>>(), sp.at("frobenius").get<double>()};
    for (const auto& sj : j.at("structures")) {
      StructureResult s;
      s.structure = sj.at("structure").get<std::string>();
      s.lower = sj.at("lower").get<double>();
      s.upper = sj.at("upper").get<double>();
      s.lower_converged = sj.at("lower_converged").get<bool>();
      s.upper_converged = sj.at("upper_converged").get<bool>();
      s.lower_iterations = sj.at("lower_iterations").get<int>();
      s.upper_iterations = sj.at("upper_iterations").get<int>();
      s.mu_near_zero = sj.at("mu_near_zero").get<bool>();
      s.u_witness = matrix_from_json(sj.at("u_witness"));
      s.d_witness = sj.at("d_witness").get<std::vector<double>>();
      if (!sj.at("perturbation").is_null()) s.perturbation = matrix_from_json(sj.at("perturbation"));
      s.perturbation_norm = sj.at("perturbation_norm").get<double>();
      s.det_residual = sj.at("det_residual").get<double>();
      if (const auto& e = sj.at("exact"); !e.is_null()) {
        s.exact = ExactMu{e.at("value").get<double>(), e.at("guaranteed").get<bool>(), e.at("consistent").get<bool>(),
                          e.at("deviation").get<double>()};
      }
      r.structures.push_back(std::move(s));
    }
    const auto& f = j.at("flags");
    r.flags = {f.at("converged").get<bool>(), f.at("sandwich_ok").get<bool>(), f.at("certificates_ok").get<bool>()};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInput, std::string("malformed report: ") + e.what());
  }
}

}  // namespace mukit::cli
