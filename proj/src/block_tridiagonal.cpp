#include "rosenau/block_tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rosenau {

BlockTridiagonalMatrix::BlockTridiagonalMatrix(std::size_t n_blocks, std::size_t block_size)
    : n_blocks_(n_blocks),
      block_size_(block_size),
      lower_(n_blocks * block_size * block_size, 0.0),
      diag_(n_blocks * block_size * block_size, 0.0),
      upper_(n_blocks * block_size * block_size, 0.0) {
  if (n_blocks == 0 || block_size == 0) {
    throw std::invalid_argument("BlockTridiagonalMatrix: empty dimensions");
  }
}

BlockTridiagonalMatrix BlockTridiagonalMatrix::identity(std::size_t n_blocks,
                                                        std::size_t block_size) {
  BlockTridiagonalMatrix m(n_blocks, block_size);
  for (std::size_t r = 0; r < n_blocks; ++r) {
    auto d = m.diag(r);
    for (std::size_t i = 0; i < block_size; ++i) {
      d[i * block_size + i] = 1.0;
    }
  }
  return m;
}

double* BlockTridiagonalMatrix::locate(std::size_t i, std::size_t j) {
  if (i >= n_rows() || j >= n_rows()) {
    throw std::out_of_range("BlockTridiagonalMatrix: index out of range");
  }
  const std::size_t br = i / block_size_;
  const std::size_t bc = j / block_size_;
  const std::size_t offset = (i % block_size_) * block_size_ + (j % block_size_);
  if (bc == br) {
    return &diag(br)[offset];
  }
  if (bc + 1 == br) {
    return &lower(br)[offset];
  }
  if (br + 1 == bc) {
    return &upper(br)[offset];
  }
  return nullptr;
}

double BlockTridiagonalMatrix::operator()(std::size_t i, std::size_t j) const {
  const double* p = const_cast<BlockTridiagonalMatrix*>(this)->locate(i, j);
  return p ? *p : 0.0;
}

void BlockTridiagonalMatrix::add(std::size_t i, std::size_t j, double v) {
  double* p = locate(i, j);
  if (!p) {
    throw std::out_of_range("BlockTridiagonalMatrix: entry outside the block band");
  }
  *p += v;
}

std::vector<double> BlockTridiagonalMatrix::apply(std::span<const double> x) const {
  if (x.size() != n_rows()) {
    throw std::invalid_argument("BlockTridiagonalMatrix::apply: dimension mismatch");
  }
  const std::size_t b = block_size_;
  std::vector<double> y(n_rows(), 0.0);
  for (std::size_t r = 0; r < n_blocks_; ++r) {
    const auto d = diag(r);
    const auto lo = lower(r);
    const auto up = upper(r);
    for (std::size_t i = 0; i < b; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < b; ++j) {
        sum += d[i * b + j] * x[r * b + j];
      }
      if (r > 0) {
        for (std::size_t j = 0; j < b; ++j) {
          sum += lo[i * b + j] * x[(r - 1) * b + j];
        }
      }
      if (r + 1 < n_blocks_) {
        for (std::size_t j = 0; j < b; ++j) {
          sum += up[i * b + j] * x[(r + 1) * b + j];
        }
      }
      y[r * b + i] = sum;
    }
  }
  return y;
}

BlockTridiagonalMatrix& BlockTridiagonalMatrix::axpy(double alpha,
                                                     const BlockTridiagonalMatrix& other) {
  if (other.n_blocks_ != n_blocks_ || other.block_size_ != block_size_) {
    throw std::invalid_argument("BlockTridiagonalMatrix::axpy: shape mismatch");
  }
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    lower_[i] += alpha * other.lower_[i];
    diag_[i] += alpha * other.diag_[i];
    upper_[i] += alpha * other.upper_[i];
  }
  return *this;
}

double BlockTridiagonalMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    m = std::max({m, std::abs(lower_[i]), std::abs(diag_[i]), std::abs(upper_[i])});
  }
  return m;
}

double BlockTridiagonalMatrix::max_asymmetry() const {
  const std::size_t b = block_size_;
  double m = 0.0;
  for (std::size_t r = 0; r < n_blocks_; ++r) {
    const auto d = diag(r);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        m = std::max(m, std::abs(d[i * b + j] - d[j * b + i]));
      }
    }
    if (r + 1 < n_blocks_) {
      const auto up = upper(r);
      const auto lo = lower(r + 1);
      for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
          m = std::max(m, std::abs(up[i * b + j] - lo[j * b + i]));
        }
      }
    }
  }
  return m;
}

std::vector<double> BlockTridiagonalMatrix::to_dense() const {
  const std::size_t n = n_rows();
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dense[i * n + j] = (*this)(i, j);
    }
  }
  return dense;
}

double bilinear_value(const BlockTridiagonalMatrix& a, std::span<const double> u,
                      std::span<const double> v) {
  if (u.size() != a.n_rows() || v.size() != a.n_rows()) {
    throw std::invalid_argument("bilinear_value: dimension mismatch");
  }
  const std::vector<double> av = a.apply(v);
  double sum = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    sum += u[i] * av[i];
  }
  return sum;
}

} // namespace rosenau
