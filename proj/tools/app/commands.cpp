#include "commands.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <ostream>

#include <nlohmann/json.hpp>

#include "golden.hpp"
#include "matrix_io.hpp"
#include "mukit/constructors.hpp"
#include "mukit/error.hpp"
#include "mukit/spectral.hpp"
#include "report.hpp"

namespace mukit::cli {
namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return kExitDimension;
    case ErrorCode::kNumerical: return kExitNonConvergence;
    case ErrorCode::kUnsupported:
    case ErrorCode::kComplexity: return kExitUnsupported;
    default: return kExitInput;
  }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error (input): " << e.what() << '\n';
    return kExitInput;
  }
}

nlohmann::json optional_number(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

struct Built {
  explicit Built(Matrix m) : matrix(std::move(m)) {}

  Matrix matrix;
  std::optional<double> expected_row_sum;
  std::optional<double> expected_norm;
  std::optional<double> expected_mu;
  std::optional<bool> expected_mu_exact;
  std::optional<std::string> warning;
  nlohmann::json extra = nlohmann::json::object();
};

Built from_circulant(const CirculantSpec& spec) {
  spec.validate();
  const CirculantResult res = build_circulant(spec, false);
  Built out(res.matrix);
  out.expected_row_sum = res.row_sum;
  if (spec.norm_equals_row_sum()) out.expected_norm = res.row_sum;
  out.warning = res.warning;
  return out;
}

OmegaCertificate read_certificate(const BuildArgs& args) {
  if (!args.cert) throw Error(ErrorCode::kInput, "family '" + args.family + "' needs --cert <file>");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(*args.cert));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInput, std::string("certificate is not valid JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

Built build_family(const BuildArgs& args) {
  const auto& f = args.family;
  if (f == "circulant-even" || f == "circulant-odd") {
    CirculantSpec spec;
    spec.parity = f == "circulant-even" ? Parity::kEven : Parity::kOdd;
    spec.a = args.a;
    spec.b = args.b;
    spec.alpha1 = args.alpha1;
    spec.alphas = args.alphas;
    return from_circulant(spec);
  }
  if (f == "birkhoff") {
    if (args.n < 1 || args.k < 1) throw Error(ErrorCode::kInput, "birkhoff needs --n >= 1 and --k >= 1");
    Built out(birkhoff(args.n, args.k, args.seed));
    out.expected_row_sum = 1.0;
    out.expected_norm = 1.0;
    out.expected_mu = 1.0;
    out.expected_mu_exact = true;
    return out;
  }
  if (f == "checkerboard") {
    Built out(checkerboard(args.n));
    out.expected_norm = static_cast<double>(args.n);
    return out;
  }
  if (f == "cone") {
    const OmegaCertificate cert = read_certificate(args);
    const ConeCombination x = cone_combo(cert.ds_terms, cert.cir_terms);
    Built out(x.x);
    out.expected_row_sum = x.row_sum;
    out.expected_norm = x.row_sum;
    out.expected_mu = x.row_sum;
    out.expected_mu_exact = true;
    return out;
  }
  if (f == "omega") {
    const OmegaInstance inst = omega_build(read_certificate(args));
    Built out(inst.matrix);
    out.expected_mu = inst.certificate.expected_mu();
    out.expected_mu_exact = inst.certificate.exact_mu_guaranteed();
    if (inst.certificate.m == 1) out.expected_norm = inst.certificate.expected_mu();
    if (!*out.expected_mu_exact) out.warning = "delta r^m is an upper bound on mu here; it is exact only for m = 1 or when theta + gamma is constant";
    out.extra["certificate"] = certificate_to_json(inst.certificate);
    return out;
  }
  if (f == "random") {
    if (args.n < 1) throw Error(ErrorCode::kInput, "random needs --n >= 1");
    return Built(random_matrix(args.n, args.seed));
  }
  throw Error(ErrorCode::kInput, "unknown family '" + f + "'");
}

}  // namespace

MuOptions options_from_env() {
  MuOptions opts;
  if (const char* env = std::getenv("MUKIT_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    errno = 0;
    const double tol = std::strtod(env, &end);
    if (errno != 0 || *end != '\0' || !std::isfinite(tol) || tol <= 0.0) {
      throw Error(ErrorCode::kInput, std::string("MUKIT_TOL must be a positive number, got '") + env + "'");
    }
    opts.tol = tol;
  }
  return opts;
}

std::vector<std::string> build_families() {
  return {"circulant-even", "circulant-odd", "birkhoff", "checkerboard", "cone", "omega", "random"};
}

std::filesystem::path meta_path(const std::filesystem::path& matrix_path) {
  return std::filesystem::path(matrix_path.string() + ".meta.json");
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    MuOptions opts = options_from_env();
    opts.seed = args.seed;
    const Matrix a = read_matrix_file(args.matrix);
    if (args.structures.empty()) throw Error(ErrorCode::kInput, "at least one --structure is required");
    const AnalysisReport report = analyze(a, args.structures, args.m, opts);
    const std::string text = report_to_json(report).dump(2) + "\n";
    if (args.out) {
      write_text_file(*args.out, text);
    } else {
      out << text;
    }
    for (const auto& s : report.structures) {
      err << s.structure << ": lower " << format_double(s.lower) << "  upper " << format_double(s.upper);
      if (s.exact) err << "  exact " << format_double(s.exact->value) << (s.exact->consistent ? " (agrees)" : " (disagrees)");
      err << '\n';
    }
    if (!report.flags.converged) {
      err << "warning: optimizer did not converge; report written with flags\n";
      return int{kExitNonConvergence};
    }
    return int{kExitOk};
  });
}

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.out.empty()) throw Error(ErrorCode::kInput, "--out is required");
    const Built built = build_family(args);
    write_matrix_file(args.out, built.matrix);
    nlohmann::json meta = {
        {"family", args.family},
        {"n", built.matrix.size()},
        {"expected_row_sum", optional_number(built.expected_row_sum)},
        {"expected_norm", optional_number(built.expected_norm)},
        {"computed_norm", spectral_norm(built.matrix)},
        {"expected_mu", optional_number(built.expected_mu)},
        {"expected_mu_exact", built.expected_mu_exact ? nlohmann::json(*built.expected_mu_exact) : nlohmann::json(nullptr)},
        {"warning", built.warning ? nlohmann::json(*built.warning) : nlohmann::json(nullptr)},
    };
    meta.update(built.extra);
    write_text_file(meta_path(args.out), meta.dump(2) + "\n");
    out << "wrote " << args.out.string() << " (n = " << built.matrix.size() << ")\n";
    if (built.warning) err << "warning: " << *built.warning << '\n';
    return int{kExitOk};
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    GoldenOptions opts;
    opts.mu = options_from_env();
    opts.grid = args.grid;
    opts.co_entry_offset = args.co_offset;
    if (opts.grid < 2) throw Error(ErrorCode::kInput, "--grid must be >= 2");
    std::vector<Check> checks;
    if (args.only.empty()) {
      checks = run_golden(opts);
    } else {
      for (int g : args.only) {
        auto part = run_criterion(g, opts);
        checks.insert(checks.end(), part.begin(), part.end());
      }
    }
    for (const auto& c : checks) out << format_check(c) << '\n';
    bool all = true;
    out << '\n';
    for (const auto& s : summarize(checks)) {
      out << (s.pass() ? "PASS " : "FAIL ") << s.criterion << "  " << (s.checks - s.failed) << '/' << s.checks
          << " checks\n";
      all = all && s.pass();
    }
    return int{all ? kExitOk : kExitFailed};
  });
}

int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    MuOptions opts = options_from_env();
    opts.grid = args.grid;
    const Matrix m = read_matrix_file(args.matrix);
    const BlockStructure b = parse_structure(args.structure, m.size());
    const OracleResult r = mu_bruteforce(m, b, opts);
    out << "value " << format_double(r.value) << '\n'
        << "grid " << r.grid << " points per angle, step " << format_double(r.grid_step) << '\n'
        << "refined step " << format_double(r.refined_step) << ", last refinement gain "
        << format_double(r.last_gain) << '\n';
    return int{kExitOk};
  });
}

}  // namespace mukit::cli
