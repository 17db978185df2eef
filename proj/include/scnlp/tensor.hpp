#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "scnlp/error.hpp"

namespace scnlp {

using Index = Eigen::Index;

/// Row-major dimensions, outermost first.
struct Shape {
  std::vector<Index> dims;

  Shape() = default;
  Shape(std::initializer_list<Index> d) : dims(d) {}
  explicit Shape(std::vector<Index> d) : dims(std::move(d)) {}

  Index rank() const { return static_cast<Index>(dims.size()); }
  Index operator[](Index i) const { return dims[static_cast<std::size_t>(i)]; }
  Index numel() const {
    return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  }
  bool operator==(const Shape&) const = default;
  std::string str() const;
};

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense tensor backed by a contiguous Eigen vector.
///
/// Rank-3 tensors are (C, H, W) activation maps; rank-4 tensors are
/// (C_out, C_in, KH, KW) convolution kernels. Each (H, W) plane can be viewed
/// as a row-major Eigen matrix without copying.
template <typename Scalar>
class Tensor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using PlaneMap = Eigen::Map<RowMatrix<Scalar>>;
  using ConstPlaneMap = Eigen::Map<const RowMatrix<Scalar>>;

  Tensor() = default;
  explicit Tensor(Shape shape) : shape_(std::move(shape)), data_(Vector::Zero(shape_.numel())) {}
  Tensor(Shape shape, Vector data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != shape_.numel()) {
      throw Error(ErrorCode::bad_shape, "data length " + std::to_string(data_.size()) +
                                            " does not match shape " + shape_.str());
    }
  }

  static Tensor constant(Shape shape, Scalar value) {
    Tensor t(std::move(shape));
    t.data_.setConstant(value);
    return t;
  }

  const Shape& shape() const { return shape_; }
  Index dim(Index i) const { return shape_[i]; }
  Index size() const { return data_.size(); }
  bool empty() const { return data_.size() == 0; }

  Vector& values() { return data_; }
  const Vector& values() const { return data_; }
  Scalar* data() { return data_.data(); }
  const Scalar* data() const { return data_.data(); }

  Scalar& operator()(Index c, Index y, Index x) {
    return data_[(c * shape_[1] + y) * shape_[2] + x];
  }
  Scalar operator()(Index c, Index y, Index x) const {
    return data_[(c * shape_[1] + y) * shape_[2] + x];
  }
  Scalar& operator()(Index o, Index i, Index y, Index x) {
    return data_[((o * shape_[1] + i) * shape_[2] + y) * shape_[3] + x];
  }
  Scalar operator()(Index o, Index i, Index y, Index x) const {
    return data_[((o * shape_[1] + i) * shape_[2] + y) * shape_[3] + x];
  }

  /// (H, W) plane of channel c of a rank-3 tensor.
  PlaneMap plane(Index c) {
    const Index h = shape_[1], w = shape_[2];
    return PlaneMap(data_.data() + c * h * w, h, w);
  }
  ConstPlaneMap plane(Index c) const {
    const Index h = shape_[1], w = shape_[2];
    return ConstPlaneMap(data_.data() + c * h * w, h, w);
  }

  bool operator==(const Tensor& other) const {
    return shape_ == other.shape_ && data_ == other.data_;
  }

 private:
  Shape shape_;
  Vector data_;
};

using FloatTensor = Tensor<float>;
using CodeTensor = Tensor<std::uint8_t>;

inline std::string Shape::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(dims[i]);
  }
  return s + ")";
}

}  // namespace scnlp
