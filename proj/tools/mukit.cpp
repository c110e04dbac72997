#include <iostream>

#include <CLI11.hpp>

#include "app/commands.hpp"

int main(int argc, char** argv) {
  using namespace mukit::cli;

  CLI::App app{"mukit: structured singular value bounds and certified matrix families"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Bound mu of A^m for one or more block structures");
  an->add_option("matrix", analyze.matrix, "Matrix file")->required();
  an->add_option("--structure", analyze.structures, "Block structure, e.g. r:1,r:1,f:2 (repeatable)")->required();
  an->add_option("--m", analyze.m, "Power of the matrix")->check(CLI::PositiveNumber);
  an->add_option("--seed", analyze.seed, "Seed for the multistart optimizer");
  an->add_option("--out", analyze.out, "Report file (stdout when omitted)");

  BuildArgs build;
  auto* bu = app.add_subcommand("build", "Write a matrix from one of the certified families");
  bu->add_option("family", build.family, "Family")->required()->check(CLI::IsMember(build_families()));
  bu->add_option("--a", build.a, "Circulant a");
  bu->add_option("--b", build.b, "Circulant b");
  bu->add_option("--alpha1", build.alpha1, "Odd circulant trailing weight");
  bu->add_option("--alphas", build.alphas, "Circulant weights alpha_2..alpha_k")->delimiter(',');
  bu->add_option("--n", build.n, "Dimension");
  bu->add_option("--k", build.k, "Number of permutations (birkhoff)");
  bu->add_option("--seed", build.seed, "Seed");
  bu->add_option("--cert", build.cert, "Certificate JSON (cone, omega)");
  bu->add_option("--out", build.out, "Output matrix file")->required();

  VerifyArgs verify;
  auto* ve = app.add_subcommand("verify", "Run the worked-example and property suite");
  ve->add_option("--grid", verify.grid, "Oracle grid for the agreement checks");
  ve->add_option("--co-offset", verify.co_offset, "Perturb C^o(0,0) by this amount");
  ve->add_option("--only", verify.only, "Run only these criteria (1-10)")->delimiter(',');

  OracleArgs oracle;
  auto* orc = app.add_subcommand("oracle", "Brute-force mu for scalar structures with up to four blocks");
  orc->add_option("matrix", oracle.matrix, "Matrix file")->required();
  orc->add_option("--structure", oracle.structure, "Block structure")->required();
  orc->add_option("--grid", oracle.grid, "Points per angle")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  if (*an) return cmd_analyze(analyze, std::cout, std::cerr);
  if (*bu) return cmd_build(build, std::cout, std::cerr);
  if (*ve) return cmd_verify(verify, std::cout, std::cerr);
  return cmd_oracle(oracle, std::cout, std::cerr);
}
