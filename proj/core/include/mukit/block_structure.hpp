#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mukit/matrix.hpp"

namespace mukit {

enum class BlockKind { kRepeatedScalar, kFull };

struct BlockSpec {
  BlockKind kind;
  std::size_t size;

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

/// Ordered perturbation blocks. Block positions are significant: repeated
/// scalar and full blocks may be interleaved in any order.
class BlockStructure {
 public:
  explicit BlockStructure(std::vector<BlockSpec> blocks);

  const std::vector<BlockSpec>& blocks() const noexcept { return blocks_; }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  std::size_t n() const noexcept { return n_; }
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }
  const BlockSpec& block(std::size_t i) const { return blocks_.at(i); }

  bool all_scalar() const noexcept;
  std::size_t num_repeated_scalar() const noexcept;
  std::size_t num_full() const noexcept;

  /// Index of the block containing row/column `index`.
  std::size_t block_of(std::size_t index) const;

  /// Round-trips through `parse_structure`.
  std::string to_string() const;

  friend bool operator==(const BlockStructure& a, const BlockStructure& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<BlockSpec> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t n_ = 0;
};

/// Parses comma separated tokens `r:<k>` (repeated scalar of size k) and
/// `f:<m>` (full block of size m). Sizes must sum to `n`.
BlockStructure parse_structure(std::string_view spec, std::size_t n);

/// One full-diagonal structure of n scalar blocks ("r:1,...,r:1").
BlockStructure scalar_structure(std::size_t n);

/// Per block: a phase for repeated scalar blocks, a unitary for full blocks.
using BlockParameter = std::variant<double, Matrix>;

struct UnitaryMember {
  Matrix matrix;
  std::vector<BlockParameter> parameters;
};

struct ScalingMember {
  std::vector<double> d;  // one per block, last entry pinned to 1
};

UnitaryMember make_unitary_member(const BlockStructure& b,
                                  std::vector<BlockParameter> parameters);
UnitaryMember identity_member(const BlockStructure& b);

/// Deterministic in `seed`: e^{i theta} I for scalar blocks with theta
/// uniform on [0, 2pi), Gram-Schmidt of a complex Gaussian for full blocks.
UnitaryMember sample_unitary(const BlockStructure& b, std::uint64_t seed);

/// Nearest-member retraction: polar factor per full block, phase of the
/// trace per scalar block. Entries off the block pattern are ignored.
UnitaryMember project_unitary(const Matrix& x, const BlockStructure& b);

Matrix scaling_matrix(const ScalingMember& d, const BlockStructure& b);

/// True iff diag(e^{i phases}) belongs to `b`.
bool contains_diagonal(const BlockStructure& b, std::span<const double> phases);

/// Largest modulus of an entry that violates the block pattern of `b`,
/// including spread of the diagonal inside repeated-scalar blocks.
double pattern_violation(const Matrix& x, const BlockStructure& b);

/// Copies the `block` subblock of `x`.
Matrix extract_block(const Matrix& x, const BlockStructure& b, std::size_t block);

}  // namespace mukit
