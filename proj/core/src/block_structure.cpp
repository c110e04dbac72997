#include "mukit/block_structure.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "mukit/error.hpp"
#include "mukit/spectral.hpp"

namespace mukit {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BlockSpec parse_token(std::string_view token) {
  token = trim(token);
  if (token.size() < 3 || token[1] != ':') {
    throw Error(ErrorCode::kInput, "malformed structure token '" + std::string(token) + "'");
  }
  BlockKind kind;
  switch (token[0]) {
    case 'r': kind = BlockKind::kRepeatedScalar; break;
    case 'f': kind = BlockKind::kFull; break;
    default:
      throw Error(ErrorCode::kInput, "unknown block kind in '" + std::string(token) + "'");
  }
  const auto digits = token.substr(2);
  std::size_t size = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), size);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || size == 0) {
    throw Error(ErrorCode::kInput, "invalid block size in '" + std::string(token) + "'");
  }
  return {kind, size};
}

void place_block(Matrix& out, const Matrix& sub, std::size_t offset) {
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (std::size_t j = 0; j < sub.size(); ++j) out(offset + i, offset + j) = sub(i, j);
}

}  // namespace

BlockStructure::BlockStructure(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorCode::kInput, "block structure needs at least one block");
  offsets_.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    if (b.size == 0) throw Error(ErrorCode::kInput, "block size must be >= 1");
    offsets_.push_back(n_);
    n_ += b.size;
  }
}

bool BlockStructure::all_scalar() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const BlockSpec& b) { return b.kind == BlockKind::kRepeatedScalar; });
}

std::size_t BlockStructure::num_repeated_scalar() const noexcept {
  return static_cast<std::size_t>(std::count_if(blocks_.begin(), blocks_.end(), [](const BlockSpec& b) {
    return b.kind == BlockKind::kRepeatedScalar;
  }));
}

std::size_t BlockStructure::num_full() const noexcept {
  return blocks_.size() - num_repeated_scalar();
}

std::size_t BlockStructure::block_of(std::size_t index) const {
  if (index >= n_) throw Error(ErrorCode::kDimensionMismatch, "index outside structure");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

std::string BlockStructure::to_string() const {
  std::string out;
  for (const auto& b : blocks_) {
    if (!out.empty()) out += ',';
    out += b.kind == BlockKind::kRepeatedScalar ? "r:" : "f:";
    out += std::to_string(b.size);
  }
  return out;
}

BlockStructure parse_structure(std::string_view spec, std::size_t n) {
  if (trim(spec).empty()) throw Error(ErrorCode::kInput, "empty structure spec");
  std::vector<BlockSpec> blocks;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto end = comma == std::string_view::npos ? spec.size() : comma;
    blocks.push_back(parse_token(spec.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  BlockStructure out(std::move(blocks));
  if (out.n() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "structure '" + std::string(spec) + "' has size " +
                                                   std::to_string(out.n()) + ", expected " +
                                                   std::to_string(n));
  }
  return out;
}

BlockStructure scalar_structure(std::size_t n) {
  return BlockStructure(std::vector<BlockSpec>(n, BlockSpec{BlockKind::kRepeatedScalar, 1}));
}

UnitaryMember make_unitary_member(const BlockStructure& b,
                                  std::vector<BlockParameter> parameters) {
  if (parameters.size() != b.num_blocks()) {
    throw Error(ErrorCode::kDimensionMismatch, "one parameter per block required");
  }
  Matrix out(b.n());
  for (std::size_t k = 0; k < b.num_blocks(); ++k) {
    const auto& spec = b.block(k);
    const std::size_t off = b.offset(k);
    if (spec.kind == BlockKind::kRepeatedScalar) {
      const double* phase = std::get_if<double>(&parameters[k]);
      if (phase == nullptr) throw Error(ErrorCode::kInput, "scalar block needs a phase");
      const Complex z = std::polar(1.0, *phase);
      for (std::size_t i = 0; i < spec.size; ++i) out(off + i, off + i) = z;
    } else {
      const Matrix* u = std::get_if<Matrix>(&parameters[k]);
      if (u == nullptr || u->size() != spec.size) {
        throw Error(ErrorCode::kInput, "full block needs a unitary of matching size");
      }
      place_block(out, *u, off);
    }
  }
  return {std::move(out), std::move(parameters)};
}

UnitaryMember identity_member(const BlockStructure& b) {
  std::vector<BlockParameter> params;
  params.reserve(b.num_blocks());
  for (const auto& spec : b.blocks()) {
    if (spec.kind == BlockKind::kRepeatedScalar) {
      params.emplace_back(0.0);
    } else {
      params.emplace_back(Matrix::identity(spec.size));
    }
  }
  return make_unitary_member(b, std::move(params));
}

UnitaryMember sample_unitary(const BlockStructure& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<BlockParameter> params;
  params.reserve(b.num_blocks());
  for (const auto& spec : b.blocks()) {
    if (spec.kind == BlockKind::kRepeatedScalar) {
      params.emplace_back(angle(rng));
    } else {
      Matrix g(spec.size);
      for (auto& z : g.entries()) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z = Complex(re, im);
      }
      params.emplace_back(orthonormalize_columns(g));
    }
  }
  return make_unitary_member(b, std::move(params));
}

UnitaryMember project_unitary(const Matrix& x, const BlockStructure& b) {
  if (x.size() != b.n()) throw Error(ErrorCode::kDimensionMismatch, "projection size mismatch");
  std::vector<BlockParameter> params;
  params.reserve(b.num_blocks());
  for (std::size_t k = 0; k < b.num_blocks(); ++k) {
    const Matrix sub = extract_block(x, b, k);
    if (b.block(k).kind == BlockKind::kRepeatedScalar) {
      Complex trace{};
      for (std::size_t i = 0; i < sub.size(); ++i) trace += sub(i, i);
      params.emplace_back(trace == Complex{} ? 0.0 : std::arg(trace));
    } else {
      params.emplace_back(polar_factor(sub));
    }
  }
  return make_unitary_member(b, std::move(params));
}

Matrix scaling_matrix(const ScalingMember& d, const BlockStructure& b) {
  if (d.d.size() != b.num_blocks()) {
    throw Error(ErrorCode::kDimensionMismatch, "one scaling per block required");
  }
  Matrix out(b.n());
  for (std::size_t k = 0; k < b.num_blocks(); ++k) {
    if (!(d.d[k] > 0.0) || !std::isfinite(d.d[k])) {
      throw Error(ErrorCode::kInput, "scalings must be positive and finite");
    }
    for (std::size_t i = 0; i < b.block(k).size; ++i) {
      const std::size_t idx = b.offset(k) + i;
      out(idx, idx) = d.d[k];
    }
  }
  return out;
}

bool contains_diagonal(const BlockStructure& b, std::span<const double> phases) {
  if (phases.size() != b.n()) throw Error(ErrorCode::kDimensionMismatch, "one phase per index required");
  for (std::size_t k = 0; k < b.num_blocks(); ++k) {
    if (b.block(k).kind == BlockKind::kFull) continue;
    const double lead = phases[b.offset(k)];
    for (std::size_t i = 1; i < b.block(k).size; ++i) {
      const double gap = std::remainder(phases[b.offset(k) + i] - lead, kTwoPi);
      if (std::abs(gap) > 1e-10) return false;
    }
  }
  return true;
}

double pattern_violation(const Matrix& x, const BlockStructure& b) {
  if (x.size() != b.n()) throw Error(ErrorCode::kDimensionMismatch, "pattern size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t bi = b.block_of(i);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const std::size_t bj = b.block_of(j);
      const bool scalar = b.block(bi).kind == BlockKind::kRepeatedScalar;
      if (bi != bj || (scalar && i != j)) {
        worst = std::max(worst, std::abs(x(i, j)));
      } else if (scalar) {
        const std::size_t lead = b.offset(bi);
        worst = std::max(worst, std::abs(x(i, i) - x(lead, lead)));
      }
    }
  }
  return worst;
}

Matrix extract_block(const Matrix& x, const BlockStructure& b, std::size_t block) {
  const std::size_t size = b.block(block).size;
  const std::size_t off = b.offset(block);
  Matrix sub(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) sub(i, j) = x(off + i, off + j);
  return sub;
}

}  // namespace mukit
