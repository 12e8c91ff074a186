#pragma once

#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "morpho/error.hpp"

namespace morpho {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vecd = Vec<double>;
using Matd = Mat<double>;

enum class Openness { Open, Closed };

template <typename Scalar>
struct Ball {
  Vec<Scalar> center;
  Scalar radius = 0;
  Openness openness = Openness::Closed;

  bool contains(const Vec<Scalar>& x, Scalar tol = 0) const {
    const Scalar d = (x - center).norm();
    return openness == Openness::Closed ? d <= radius + tol : d < radius + tol;
  }
};

/// The closed half-space {x : <normal, x> <= offset} with a unit outward normal.
template <typename Scalar>
class HalfSpace {
 public:
  HalfSpace() = default;

  HalfSpace(const Vec<Scalar>& normal, Scalar offset) {
    const Scalar len = normal.norm();
    if (!(len > Scalar(0)) || !std::isfinite(len))
      throw Error(ErrorKind::InvalidArgument, "half-space normal must be nonzero and finite");
    if (!std::isfinite(offset)) throw Error(ErrorKind::InvalidArgument, "half-space offset must be finite");
    normal_ = normal / len;
    offset_ = offset / len;
  }

  const Vec<Scalar>& normal() const { return normal_; }
  Scalar offset() const { return offset_; }
  Eigen::Index dimension() const { return normal_.size(); }

  Scalar signed_distance(const Vec<Scalar>& x) const { return normal_.dot(x) - offset_; }
  bool contains(const Vec<Scalar>& x, Scalar tol = 0) const { return signed_distance(x) <= tol; }

 private:
  Vec<Scalar> normal_;
  Scalar offset_ = 0;
};

namespace detail {

template <typename Scalar>
Scalar orthogonality_drift(const Mat<Scalar>& q) {
  const Eigen::Index n = q.rows();
  return (q.transpose() * q - Mat<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
}

// Modified Gram-Schmidt on the columns; keeps the orientation of q.
template <typename Scalar>
Mat<Scalar> reorthonormalize(Mat<Scalar> q) {
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (Eigen::Index k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    const Scalar len = q.col(j).norm();
    if (!(len > Scalar(0))) throw Error(ErrorKind::InvalidArgument, "rotation matrix is singular");
    q.col(j) /= len;
  }
  return q;
}

}  // namespace detail

/// x -> scale * rotation * x + offset.
template <typename Scalar>
class Similarity {
 public:
  static constexpr double kOrthoTol = 1e-10;
  // Input matrices off by more than this are rejected rather than repaired.
  static constexpr double kRepairLimit = 1e-6;

  Similarity() = default;

  Similarity(Scalar scale, const Mat<Scalar>& rotation, const Vec<Scalar>& offset)
      : scale_(scale), rotation_(rotation), offset_(offset) {
    if (!(scale > Scalar(0)) || !std::isfinite(scale))
      throw Error(ErrorKind::NonpositiveScale, "similarity scale must be positive and finite");
    if (rotation.rows() != rotation.cols() || rotation.rows() != offset.size() || offset.size() < 1)
      throw Error(ErrorKind::DimensionMismatch, "rotation must be n x n and offset length n");
    if (!rotation.allFinite() || !offset.allFinite())
      throw Error(ErrorKind::InvalidArgument, "similarity entries must be finite");
    const Scalar drift = detail::orthogonality_drift(rotation_);
    if (drift > Scalar(kRepairLimit))
      throw Error(ErrorKind::InvalidArgument, "rotation matrix is not orthogonal");
    if (drift > Scalar(kOrthoTol)) rotation_ = detail::reorthonormalize(rotation_);
  }

  static Similarity identity(Eigen::Index n) {
    return Similarity(Scalar(1), Mat<Scalar>::Identity(n, n), Vec<Scalar>::Zero(n));
  }
  static Similarity translation(const Vec<Scalar>& v) {
    return Similarity(Scalar(1), Mat<Scalar>::Identity(v.size(), v.size()), v);
  }
  /// Homothety with the given center: x -> center + scale (x - center).
  static Similarity homothety(const Vec<Scalar>& center, Scalar scale) {
    const Eigen::Index n = center.size();
    return Similarity(scale, Mat<Scalar>::Identity(n, n), center - scale * center);
  }
  /// Planar rotation by angle about center, composed with scaling about the same center.
  static Similarity spiral2d(const Vec<Scalar>& center, Scalar scale, Scalar angle) {
    if (center.size() != 2) throw Error(ErrorKind::DimensionMismatch, "spiral2d needs a 2-D center");
    Mat<Scalar> q(2, 2);
    q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return Similarity(scale, q, center - scale * (q * center));
  }

  Scalar scale() const { return scale_; }
  const Mat<Scalar>& rotation() const { return rotation_; }
  const Vec<Scalar>& offset() const { return offset_; }
  Eigen::Index dimension() const { return offset_.size(); }

  /// Linear part alpha * Q.
  Mat<Scalar> linear() const { return scale_ * rotation_; }
  bool orientation_preserving() const { return rotation_.determinant() > Scalar(0); }

  Vec<Scalar> operator()(const Vec<Scalar>& x) const { return scale_ * (rotation_ * x) + offset_; }

 private:
  Scalar scale_ = 1;
  Mat<Scalar> rotation_;
  Vec<Scalar> offset_;
};

using Similarityd = Similarity<double>;
using HalfSpaced = HalfSpace<double>;
using Balld = Ball<double>;

template <typename Scalar>
void require_same_dimension(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, "ambient dimensions differ");
}

/// s1 after s2.
template <typename Scalar>
Similarity<Scalar> compose(const Similarity<Scalar>& s1, const Similarity<Scalar>& s2) {
  require_same_dimension<Scalar>(s1.dimension(), s2.dimension());
  Mat<Scalar> q = s1.rotation() * s2.rotation();
  if (detail::orthogonality_drift(q) > Scalar(Similarity<Scalar>::kOrthoTol)) q = detail::reorthonormalize(q);
  return Similarity<Scalar>(s1.scale() * s2.scale(), q, s1(s2.offset()));
}

template <typename Scalar>
Similarity<Scalar> invert(const Similarity<Scalar>& s) {
  const Mat<Scalar> qt = s.rotation().transpose();
  const Scalar inv = Scalar(1) / s.scale();
  return Similarity<Scalar>(inv, qt, -inv * (qt * s.offset()));
}

/// s^i for any integer i; negative powers use the inverse.
template <typename Scalar>
Similarity<Scalar> power(const Similarity<Scalar>& s, long i) {
  Similarity<Scalar> base = i < 0 ? invert(s) : s;
  unsigned long e = i < 0 ? static_cast<unsigned long>(-i) : static_cast<unsigned long>(i);
  Similarity<Scalar> out = Similarity<Scalar>::identity(s.dimension());
  while (e) {
    if (e & 1UL) out = compose(out, base);
    base = compose(base, base);
    e >>= 1;
  }
  return out;
}

template <typename Scalar>
std::optional<Vec<Scalar>> fixed_point(const Similarity<Scalar>& s, double max_condition = 1e12) {
  const Eigen::Index n = s.dimension();
  const Mat<Scalar> m = Mat<Scalar>::Identity(n, n) - s.linear();
  Eigen::JacobiSVD<Mat<Scalar>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Scalar smin = sv(n - 1);
  if (!(smin > Scalar(0)) || sv(0) / smin > Scalar(max_condition)) return std::nullopt;
  return Vec<Scalar>(svd.solve(s.offset()));
}

template <typename Scalar>
HalfSpace<Scalar> apply_to_halfspace(const Similarity<Scalar>& s, const HalfSpace<Scalar>& h) {
  require_same_dimension<Scalar>(s.dimension(), h.dimension());
  const Vec<Scalar> n = s.rotation() * h.normal();
  return HalfSpace<Scalar>(n, s.scale() * h.offset() + n.dot(s.offset()));
}

/// Largest pointwise deviation between two maps over the vertices of the unit box [0,1]^n.
template <typename Scalar>
Scalar max_deviation_on_unit_box(const Similarity<Scalar>& a, const Similarity<Scalar>& b) {
  require_same_dimension<Scalar>(a.dimension(), b.dimension());
  const Eigen::Index n = a.dimension();
  Scalar worst = 0;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    Vec<Scalar> x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = (mask >> i) & 1UL ? Scalar(1) : Scalar(0);
    worst = std::max(worst, (a(x) - b(x)).norm());
  }
  return worst;
}

}  // namespace morpho
