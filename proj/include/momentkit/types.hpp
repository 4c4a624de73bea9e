#pragma once

#include <Eigen/Core>

namespace momentkit {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Vector<Scalar, Eigen::Dynamic>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Closed interval [lo, hi] on the real line.
template <typename Scalar>
struct Interval {
  Scalar lo;
  Scalar hi;

  bool contains(Scalar x) const { return lo <= x && x <= hi; }
  Scalar length() const { return hi - lo; }
};

}  // namespace momentkit
