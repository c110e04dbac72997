#include "matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mukit/error.hpp"

namespace mukit::cli {
namespace {

double finite_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::kInput, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::kInput, std::string(what) + " must be finite");
  return v;
}

std::vector<double> number_list(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::kInput, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(finite_number(v, what));
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_matrix(const Matrix& m) {
  if (!m.all_finite()) throw Error(ErrorCode::kInput, "cannot write a matrix with non-finite entries");
  std::ostringstream out;
  out << "{\n  \"n\": " << m.size() << ",\n  \"entries\": [\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << "    [";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j > 0) out << ", ";
      out << '[' << format_double(m(i, j).real()) << ", " << format_double(m(i, j).imag()) << ']';
    }
    out << (i + 1 < m.size() ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kInput, "complex entries are [re, im] pairs");
  return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.size()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
    throw Error(ErrorCode::kInput, "matrix object needs \"n\" and \"entries\"");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw Error(ErrorCode::kInput, "\"n\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(j["n"].get<long long>());
  const auto& rows = j["entries"];
  if (!rows.is_array() || rows.size() != n) throw Error(ErrorCode::kInput, "\"entries\" must hold n rows");
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw Error(ErrorCode::kInput, "ragged matrix: row " + std::to_string(i) + " does not have n entries");
    }
    for (std::size_t k = 0; k < n; ++k) m(i, k) = complex_from_json(rows[i][k]);
  }
  m.validate();
  return m;
}

Matrix parse_matrix(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInput, std::string("matrix file is not valid JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInput, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInput, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kInput, "failed writing " + path.string());
}

Matrix read_matrix_file(const std::filesystem::path& path) { return parse_matrix(read_text_file(path)); }

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  write_text_file(path, format_matrix(m));
}

nlohmann::json certificate_to_json(const OmegaCertificate& cert) {
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& t : cert.ds_terms) ds.push_back({{"weight", t.weight}, {"matrix", matrix_to_json(t.matrix)}});
  nlohmann::json cir = nlohmann::json::array();
  for (const auto& t : cert.cir_terms) {
    cir.push_back({{"weight", t.weight},
                   {"parity", t.spec.parity == Parity::kEven ? "even" : "odd"},
                   {"a", t.spec.a},
                   {"b", t.spec.b},
                   {"alpha1", t.spec.alpha1},
                   {"alphas", t.spec.alphas}});
  }
  return {{"n", cert.n},         {"delta", cert.delta}, {"theta", cert.theta}, {"gamma", cert.gamma},
          {"m", cert.m},         {"ds_terms", ds},      {"cir_terms", cir},    {"r", cert.r}};
}

OmegaCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInput, "certificate must be a JSON object");
  OmegaCertificate cert;
  if (j.contains("ds_terms")) {
    for (const auto& t : j.at("ds_terms")) {
      cert.ds_terms.push_back({finite_number(t.at("weight"), "weight"), matrix_from_json(t.at("matrix"))});
    }
  }
  if (j.contains("cir_terms")) {
    for (const auto& t : j.at("cir_terms")) {
      CirculantSpec spec;
      const std::string parity = t.at("parity").get<std::string>();
      if (parity != "even" && parity != "odd") throw Error(ErrorCode::kInput, "parity must be even or odd");
      spec.parity = parity == "even" ? Parity::kEven : Parity::kOdd;
      spec.a = finite_number(t.at("a"), "a");
      spec.b = finite_number(t.at("b"), "b");
      if (t.contains("alpha1")) spec.alpha1 = finite_number(t.at("alpha1"), "alpha1");
      if (t.contains("alphas")) spec.alphas = number_list(t.at("alphas"), "alphas");
      cert.cir_terms.push_back({finite_number(t.at("weight"), "weight"), std::move(spec)});
    }
  }
  if (cert.ds_terms.empty() && cert.cir_terms.empty()) {
    throw Error(ErrorCode::kInput, "certificate needs at least one term");
  }
  cert.n = cert.ds_terms.empty() ? cert.cir_terms.front().spec.size() : cert.ds_terms.front().matrix.size();
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw Error(ErrorCode::kInput, "\"n\" must be an integer");
    cert.n = j["n"].get<std::size_t>();
  }
  if (j.contains("delta")) cert.delta = finite_number(j["delta"], "delta");
  cert.theta = j.contains("theta") ? number_list(j["theta"], "theta") : std::vector<double>(cert.n, 0.0);
  cert.gamma = j.contains("gamma") ? number_list(j["gamma"], "gamma") : std::vector<double>(cert.n, 0.0);
  if (j.contains("m")) {
    if (!j["m"].is_number_integer() || j["m"].get<long long>() < 1) {
      throw Error(ErrorCode::kInput, "\"m\" must be a positive integer");
    }
    cert.m = j["m"].get<unsigned>();
  }
  return cert;
}

}  // namespace mukit::cli
