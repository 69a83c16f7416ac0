#pragma once

// Block-tridiagonal storage for operators with nearest-neighbour element coupling.

#include <cstddef>
#include <span>
#include <vector>

namespace rosenau {

/// Square matrix of n_blocks x n_blocks blocks, each block_size x block_size,
/// with only the diagonal, sub- and super-diagonal blocks stored. Blocks are
/// row-major. Block row r stores lower (r, r-1), diag (r, r) and upper (r, r+1);
/// lower of row 0 and upper of the last row exist but are always zero.
class BlockTridiagonalMatrix {
public:
  BlockTridiagonalMatrix() = default;
  BlockTridiagonalMatrix(std::size_t n_blocks, std::size_t block_size);

  std::size_t n_blocks() const noexcept { return n_blocks_; }
  std::size_t block_size() const noexcept { return block_size_; }
  std::size_t n_rows() const noexcept { return n_blocks_ * block_size_; }

  std::span<double> lower(std::size_t r) noexcept { return block(lower_, r); }
  std::span<double> diag(std::size_t r) noexcept { return block(diag_, r); }
  std::span<double> upper(std::size_t r) noexcept { return block(upper_, r); }
  std::span<const double> lower(std::size_t r) const noexcept { return block(lower_, r); }
  std::span<const double> diag(std::size_t r) const noexcept { return block(diag_, r); }
  std::span<const double> upper(std::size_t r) const noexcept { return block(upper_, r); }

  /// Entry (i, j); zero outside the stored band.
  double operator()(std::size_t i, std::size_t j) const;
  /// Adds v to entry (i, j). Throws std::out_of_range outside the band.
  void add(std::size_t i, std::size_t j, double v);

  std::vector<double> apply(std::span<const double> x) const;

  /// this += alpha * other
  BlockTridiagonalMatrix& axpy(double alpha, const BlockTridiagonalMatrix& other);

  double max_abs() const noexcept;
  /// max |A_ij - A_ji| over the band.
  double max_asymmetry() const;

  /// Dense row-major copy, for tests and small diagnostics.
  std::vector<double> to_dense() const;

  static BlockTridiagonalMatrix identity(std::size_t n_blocks, std::size_t block_size);

private:
  std::span<double> block(std::vector<double>& store, std::size_t r) noexcept {
    return std::span<double>(store).subspan(r * block_area(), block_area());
  }
  std::span<const double> block(const std::vector<double>& store, std::size_t r) const noexcept {
    return std::span<const double>(store).subspan(r * block_area(), block_area());
  }
  std::size_t block_area() const noexcept { return block_size_ * block_size_; }
  double* locate(std::size_t i, std::size_t j);

  std::size_t n_blocks_ = 0;
  std::size_t block_size_ = 0;
  std::vector<double> lower_;
  std::vector<double> diag_;
  std::vector<double> upper_;
};

/// u . (A v)
double bilinear_value(const BlockTridiagonalMatrix& a, std::span<const double> u,
                      std::span<const double> v);

} // namespace rosenau
