#include "kronrod/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "kronrod/error.hpp"

namespace kronrod {
namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>{});
}

void check_shape(std::span<const std::size_t> shape) {
  if (shape.empty()) {
    throw Error(Errc::shape_mismatch, "tensor order must be at least 1");
  }
  for (auto d : shape) {
    if (d == 0) throw Error(Errc::shape_mismatch, "tensor extents must be positive");
  }
}

void check_mode(std::size_t mode, std::size_t order) {
  if (mode >= order) {
    throw Error(Errc::mode_out_of_range,
                "mode " + std::to_string(mode) + " out of range for order " +
                    std::to_string(order));
  }
}

// Strides for iterating a fixed mode: offset = lo + inner * (l + extent * hi).
struct ModeStrides {
  std::size_t inner;   // prod of extents below mode
  std::size_t extent;  // extent of mode
  std::size_t outer;   // prod of extents above mode
};

ModeStrides mode_strides(std::span<const std::size_t> shape, std::size_t mode) {
  return {product(shape.first(mode)), shape[mode], product(shape.subspan(mode + 1))};
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> shape, CVector data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  check_shape(shape_);
  if (data_.size() != product(shape_)) {
    throw Error(Errc::shape_mismatch, "tensor data length " +
                                          std::to_string(data_.size()) +
                                          " does not match its shape");
  }
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)) {
  check_shape(shape_);
  data_.assign(product(shape_), cdouble{});
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw Error(Errc::shape_mismatch, "index order does not match tensor order");
  }
  std::size_t off = 0;
  for (std::size_t n = shape_.size(); n-- > 0;) {
    if (index[n] >= shape_[n]) {
      throw Error(Errc::shape_mismatch, "tensor index out of range");
    }
    off = off * shape_[n] + index[n];
  }
  return off;
}

double DenseTensor::frobenius_norm() const noexcept {
  return std::sqrt(norm2(data_));
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, CVector data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(Errc::shape_mismatch, "matrix data length does not match rows*cols");
  }
}

CVector ComplexMatrix::multiply(std::span<const cdouble> v) const {
  if (v.size() != cols_) {
    throw Error(Errc::shape_mismatch, "matrix-vector dimension mismatch");
  }
  CVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    cdouble acc{};
    const cdouble* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

cdouble ComplexMatrix::trace() const {
  if (rows_ != cols_) throw Error(Errc::shape_mismatch, "trace of a non-square matrix");
  cdouble t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw Error(Errc::shape_mismatch, "matrix product dimension mismatch");
  }
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cdouble a = (*this)(r, k);
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  return std::sqrt(norm2(data_));
}

CVector kron_vec(std::span<const CVector> vectors) {
  if (vectors.empty()) {
    throw Error(Errc::invalid_argument, "kron_vec needs at least one vector");
  }
  CVector acc{cdouble{1.0, 0.0}};
  for (const auto& v : vectors) {
    CVector next;
    next.reserve(acc.size() * v.size());
    for (const auto& a : acc) {
      for (const auto& b : v) next.push_back(a * b);
    }
    acc = std::move(next);
  }
  return acc;
}

DenseTensor tensorize(std::span<const cdouble> v, std::vector<std::size_t> shape) {
  check_shape(shape);
  if (v.size() != product(shape)) {
    throw Error(Errc::shape_mismatch, "vector length " + std::to_string(v.size()) +
                                          " does not match the tensor shape");
  }
  return DenseTensor(std::move(shape), CVector(v.begin(), v.end()));
}

CVector vectorize(const DenseTensor& t) {
  const auto d = t.data();
  return CVector(d.begin(), d.end());
}

DenseTensor outer_rank_one(std::span<const CVector> vectors) {
  if (vectors.empty()) {
    throw Error(Errc::invalid_argument, "outer product needs at least one vector");
  }
  std::vector<std::size_t> shape;
  shape.reserve(vectors.size());
  for (const auto& v : vectors) shape.push_back(v.size());
  // With first-index-fastest storage the flat data is v_{N-1} (x) ... (x) v_0.
  std::vector<CVector> reversed(vectors.rbegin(), vectors.rend());
  return DenseTensor(std::move(shape), kron_vec(reversed));
}

ComplexMatrix unfold(const DenseTensor& t, std::size_t mode) {
  check_mode(mode, t.order());
  const auto [inner, extent, outer] = mode_strides(t.shape(), mode);
  ComplexMatrix m(extent, inner * outer);
  const auto d = t.data();
  for (std::size_t hi = 0; hi < outer; ++hi) {
    for (std::size_t l = 0; l < extent; ++l) {
      for (std::size_t lo = 0; lo < inner; ++lo) {
        m(l, lo + inner * hi) = d[lo + inner * (l + extent * hi)];
      }
    }
  }
  return m;
}

DenseTensor fold(const ComplexMatrix& m, std::size_t mode,
                 std::vector<std::size_t> shape) {
  check_shape(shape);
  check_mode(mode, shape.size());
  const auto [inner, extent, outer] = mode_strides(shape, mode);
  if (m.rows() != extent || m.cols() != inner * outer) {
    throw Error(Errc::shape_mismatch, "unfolding does not match the target shape");
  }
  DenseTensor t(std::move(shape));
  auto d = t.data();
  for (std::size_t hi = 0; hi < outer; ++hi) {
    for (std::size_t l = 0; l < extent; ++l) {
      for (std::size_t lo = 0; lo < inner; ++lo) {
        d[lo + inner * (l + extent * hi)] = m(l, lo + inner * hi);
      }
    }
  }
  return t;
}

ComplexMatrix mode_gramian(const DenseTensor& t, std::size_t mode) {
  check_mode(mode, t.order());
  const auto [inner, extent, outer] = mode_strides(t.shape(), mode);
  ComplexMatrix g(extent, extent);
  const auto d = t.data();
  for (std::size_t hi = 0; hi < outer; ++hi) {
    const cdouble* slab = d.data() + inner * extent * hi;
    for (std::size_t r = 0; r < extent; ++r) {
      for (std::size_t c = r; c < extent; ++c) {
        cdouble acc{};
        for (std::size_t lo = 0; lo < inner; ++lo) {
          acc += slab[lo + inner * r] * std::conj(slab[lo + inner * c]);
        }
        g(r, c) += acc;
      }
    }
  }
  for (std::size_t r = 0; r < extent; ++r) {
    g(r, r) = cdouble{g(r, r).real(), 0.0};
    for (std::size_t c = r + 1; c < extent; ++c) g(c, r) = std::conj(g(r, c));
  }
  return g;
}

double norm2(std::span<const cdouble> v) noexcept {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

cdouble dot(std::span<const cdouble> a, std::span<const cdouble> b) noexcept {
  cdouble s{};
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace kronrod
