#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "obsplan/errors.hpp"

namespace obsplan {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2 = Vec2<double>;

/// Wraps an angle into [0, 2*pi).
template <typename Scalar>
Scalar normalize_angle(Scalar radians) {
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar r = std::fmod(radians, two_pi);
  if (r < Scalar(0)) r += two_pi;
  if (r >= two_pi) r = Scalar(0);
  return r;
}

template <typename Scalar>
Vec2<Scalar> unit_vector(Scalar radians) {
  return Vec2<Scalar>(std::cos(radians), std::sin(radians));
}

/// Unsigned angle in [0, pi] between two nonzero vectors.
template <typename Derived1, typename Derived2>
typename Derived1::Scalar angle_between(const Eigen::MatrixBase<Derived1>& u,
                                        const Eigen::MatrixBase<Derived2>& v) {
  using Scalar = typename Derived1::Scalar;
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (!(nu > Scalar(0)) || !(nv > Scalar(0))) {
    throw DomainError("angle_between: zero-length vector");
  }
  // atan2 of cross/dot stays accurate near 0 and pi, unlike acos.
  const Scalar cross = u.x() * v.y() - u.y() * v.x();
  const Scalar dot = u.dot(v);
  return std::atan2(std::abs(cross), dot);
}

template <typename Scalar>
struct BasicObject {
  Vec2<Scalar> position = Vec2<Scalar>::Zero();
  Scalar facing = Scalar(0);  // radians, [0, 2*pi)
  Scalar weight = Scalar(1);

  Vec2<Scalar> facing_vector() const { return unit_vector(facing); }
};

using Object = BasicObject<double>;

template <typename Scalar>
BasicObject<Scalar> make_object(const Vec2<Scalar>& position, Scalar facing,
                                Scalar weight = Scalar(1)) {
  if (!position.allFinite()) throw DomainError("object position must be finite");
  if (!(weight >= Scalar(0))) throw DomainError("object weight must be >= 0");
  return {position, normalize_angle(facing), weight};
}

/// Sensing envelope and the constants of the quality model a/(d+b)^2 * cos(dev).
template <typename Scalar>
struct BasicSensingSpec {
  Scalar d_min = Scalar(2);
  Scalar d_max = Scalar(10);
  Scalar theta = std::numbers::pi_v<Scalar> / Scalar(6);
  Scalar a = Scalar(1);
  Scalar b = Scalar(0);

  void validate() const {
    if (!(d_min > Scalar(0))) throw DomainError("d_min must be > 0");
    if (!(d_max > d_min)) throw DomainError("d_max must exceed d_min");
    if (!(theta > Scalar(0)) || theta > std::numbers::pi_v<Scalar> / Scalar(2)) {
      throw DomainError("theta must lie in (0, pi/2]");
    }
    if (!(a > Scalar(0))) throw DomainError("quality constant a must be > 0");
    if (!(b >= Scalar(0))) throw DomainError("quality constant b must be >= 0");
  }
};

using SensingSpec = BasicSensingSpec<double>;

template <typename Scalar>
struct BasicQualityBounds {
  Scalar q_min_single;
  Scalar q_max_single;
};

using QualityBounds = BasicQualityBounds<double>;

// Slack on the closed region so that mesh points placed exactly on its
// boundary survive rotation and translation round-off.
inline constexpr double kRegionSlack = 1e-9;

/// Closed effective-observation test: d_min <= |o->p| <= d_max and the
/// deviation from the facing direction is at most theta.
template <typename Scalar>
bool can_observe(const BasicObject<Scalar>& o, const Vec2<Scalar>& p,
                 const BasicSensingSpec<Scalar>& s) {
  const Vec2<Scalar> rel = p - o.position;
  const Scalar dist = rel.norm();
  if (dist < s.d_min - Scalar(kRegionSlack) || dist > s.d_max + Scalar(kRegionSlack)) return false;
  return angle_between(o.facing_vector(), rel) <= s.theta + Scalar(kRegionSlack);
}

/// Weighted observation quality of `o` seen from `p`; zero outside the region.
template <typename Scalar>
Scalar quality(const BasicObject<Scalar>& o, const Vec2<Scalar>& p,
               const BasicSensingSpec<Scalar>& s) {
  const Vec2<Scalar> rel = p - o.position;
  const Scalar dist = rel.norm();
  if (dist < s.d_min - Scalar(kRegionSlack) || dist > s.d_max + Scalar(kRegionSlack)) return Scalar(0);
  const Scalar dev = angle_between(o.facing_vector(), rel);
  if (dev > s.theta + Scalar(kRegionSlack)) return Scalar(0);
  const Scalar r = dist + s.b;
  return o.weight * s.a / (r * r) * std::cos(dev);
}

template <typename Scalar>
BasicQualityBounds<Scalar> quality_bounds(const BasicSensingSpec<Scalar>& s) {
  const Scalar near = s.d_min + s.b;
  const Scalar far = s.d_max + s.b;
  return {s.a / (far * far) * std::cos(s.theta), s.a / (near * near)};
}

inline double distance(const Point2& p, const Point2& q) { return (p - q).norm(); }

}  // namespace obsplan
