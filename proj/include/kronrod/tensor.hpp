#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kronrod/types.hpp"

namespace kronrod {

/// Dense N-way complex array, first index varying fastest in memory.
///
/// Modes are numbered from 0. For shape [L_0, ..., L_{N-1}] the flat offset
/// of (l_0, ..., l_{N-1}) is l_0 + L_0 * (l_1 + L_1 * (l_2 + ...)).
class DenseTensor {
 public:
  DenseTensor(std::vector<std::size_t> shape, CVector data);
  explicit DenseTensor(std::vector<std::size_t> shape);

  std::size_t order() const noexcept { return shape_.size(); }
  std::span<const std::size_t> shape() const noexcept { return shape_; }
  std::size_t extent(std::size_t mode) const { return shape_.at(mode); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const cdouble> data() const noexcept { return data_; }
  std::span<cdouble> data() noexcept { return data_; }

  std::size_t offset(std::span<const std::size_t> index) const;
  const cdouble& at(std::span<const std::size_t> index) const {
    return data_[offset(index)];
  }
  cdouble& at(std::span<const std::size_t> index) { return data_[offset(index)]; }

  double frobenius_norm() const noexcept;

 private:
  std::vector<std::size_t> shape_;
  CVector data_;
};

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, CVector data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const cdouble> data() const noexcept { return data_; }

  CVector multiply(std::span<const cdouble> v) const;
  cdouble trace() const;
  ComplexMatrix conjugate_transpose() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  double frobenius_norm() const noexcept;

 private:
  std::size_t rows_;
  std::size_t cols_;
  CVector data_;
};

// Standard Kronecker product v_0 (x) v_1 (x) ... in the given order.
CVector kron_vec(std::span<const CVector> vectors);

DenseTensor tensorize(std::span<const cdouble> v, std::vector<std::size_t> shape);
CVector vectorize(const DenseTensor& t);

// t[l_0, ..., l_{N-1}] = prod_n vectors[n][l_n]
DenseTensor outer_rank_one(std::span<const CVector> vectors);

// L_mode x prod_{i != mode} L_i; columns enumerate the remaining indices
// with the lowest remaining mode varying fastest.
ComplexMatrix unfold(const DenseTensor& t, std::size_t mode);
DenseTensor fold(const ComplexMatrix& m, std::size_t mode,
                 std::vector<std::size_t> shape);

// unfold(t, mode) * unfold(t, mode)^H without materialising the unfolding.
ComplexMatrix mode_gramian(const DenseTensor& t, std::size_t mode);

double norm2(std::span<const cdouble> v) noexcept;
cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b) noexcept;  // a^H b

}  // namespace kronrod
