// Copyright 2026 The Crosscap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The double disk: two copies D+ and D- of the r-ball in a model space,
// glued along their boundary spheres, with the free involution
// A(z, +) = (-z, -). Its quotient by A is the crosscap.
//
// D+ is the r-ball about e0 and D- the r-ball about -e0, in the same ambient
// model. A point of either disk at distance t from its center in the seam
// direction u in S^{n-1} has last-n coordinates sn_k(t) u, and two seam
// points (t = r) of opposite halves are the same point exactly when their
// u agree.

#include <cstdint>
#include <optional>
#include <vector>

#include "crosscap/rng.hpp"
#include "crosscap/spaceform.hpp"

namespace crosscap {

enum class Half : int { kPlus = 1, kMinus = -1 };

inline Half Opposite(Half h) {
  return h == Half::kPlus ? Half::kMinus : Half::kPlus;
}
inline int Sign(Half h) { return static_cast<int>(h); }

// Distance-from-center tolerance that decides seam membership.
inline constexpr double kSeamTol = 1e-9;

class DoubleDiskSpace {
 public:
  DoubleDiskSpace() = default;
  // Throws kInvalidInput unless r > 0, n >= 2, and r < pi/2 when k = 1.
  static DoubleDiskSpace Make(Curvature k, int n, double r);

  Curvature k() const { return k_; }
  int n() const { return n_; }
  double r() const { return r_; }
  // sn_k(r), cached.
  double sn_r() const { return sn_r_; }

  bool operator==(const DoubleDiskSpace& o) const {
    return k_ == o.k_ && n_ == o.n_ && r_ == o.r_;
  }

 private:
  Curvature k_ = Curvature::kFlat;
  int n_ = 2;
  double r_ = 1.0;
  double sn_r_ = 1.0;
};

struct DoublePoint {
  DoubleDiskSpace space;
  Half half = Half::kPlus;
  ModelPoint z;
};

struct PolarCoords {
  double t = 0.0;  // distance from the center of the point's own half
  Vec dir;         // unit vector in R^n; e1 when t == 0
};

PolarCoords Polar(const DoublePoint& x);
DoublePoint FromPolar(const DoubleDiskSpace& space, Half half, double t,
                      const Vec& dir);
// Validating constructor for user-supplied points.
DoublePoint MakeDoublePoint(const DoubleDiskSpace& space, Half half,
                            const ModelPoint& z);

DoublePoint CenterPoint(const DoubleDiskSpace& space, Half half);
bool OnSeam(const DoublePoint& x);
// The same seam point written in the other half's model. Requires OnSeam.
DoublePoint Reexpress(const DoublePoint& x, Half target);
// Point equality including the seam identification.
bool SamePoint(const DoublePoint& x, const DoublePoint& y, double tol = 1e-9);

DoublePoint Involution(const DoublePoint& x);
DoublePoint SeamPoint(const DoubleDiskSpace& space, const Vec& u,
                      Half half = Half::kPlus);

double DoubleDist(const DoublePoint& x, const DoublePoint& y);
// Cheap lower bound for DoubleDist (exact for same-half pairs).
double DoubleDistLowerBound(const DoublePoint& x, const DoublePoint& y);

struct SegmentWitness {
  DoublePoint from;
  DoublePoint to;
  double length = 0.0;
  // Seam direction where a cross-half segment passes between the halves.
  std::optional<Vec> seam_crossing;
  // Unit initial direction at `from`, in the model of `direction_half`
  // (which differs from from.half only when `from` is a seam point).
  ModelTangent initial_direction;
  Half direction_half = Half::kPlus;
};

struct DoubleLogResult {
  std::vector<SegmentWitness> witnesses;
  // Set when the minimizers form a continuous family (e.g. center to center);
  // `witnesses` then holds representatives.
  bool family = false;
};
DoubleLogResult DoubleLog(const DoublePoint& x, const DoublePoint& y);

// Orbit of the involution, stored via its canonical representative: the plus
// half is preferred, and on the seam the lexicographically smaller of u, -u.
class CrosscapPoint {
 public:
  explicit CrosscapPoint(const DoublePoint& x);
  const DoublePoint& rep() const { return rep_; }

 private:
  DoublePoint rep_;
};

double CrosscapDist(const CrosscapPoint& a, const CrosscapPoint& b);

// Tangent vector at a point of the double disk, written in the model of
// base.half. At seam points the two halves' tangent spaces are glued by
// mirroring e0 and reflecting the seam normal.
struct DoubleTangent {
  DoublePoint base;
  Vec vec;
};
DoubleTangent ToHalf(const DoubleTangent& v, Half target);
// Unit outward normal of the disk of `half` at a seam point z of that model.
Vec SeamNormal(const DoubleDiskSpace& space, Half half, const Vec& u);
// Geodesic step of length t >= 0 following at most one seam crossing.
// Steps that graze the seam are retracted onto it; a second genuine crossing
// throws kStepTooLarge.
DoublePoint DoubleExp(const DoubleTangent& v, double t);
// Orthonormal frame of the tangent space at x (model of x.half).
std::vector<DoubleTangent> Frame(const DoublePoint& x);
// Unit outward radial tangent at x in x's own model; meaningless at a center.
Vec RadialTangent(const DoublePoint& x);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
// Directional derivative of dist(z, .) at x along unit v: -cos of the angle
// between v and the initial directions of segments from x to z.
Interval DistDerivative(const DoublePoint& z, const DoublePoint& x,
                        const DoubleTangent& v);

// Volume-uniform point of the double disk (fair coin for the half).
DoublePoint RandomPoint(const DoubleDiskSpace& space, Rng& rng);
DoublePoint RandomPoint(const DoubleDiskSpace& space, std::uint64_t seed);
// Farthest-point net whose first element is RandomPoint(space, seed).
std::vector<DoublePoint> UniformNet(const DoubleDiskSpace& space, int count,
                                    std::uint64_t seed, int pool_factor = 10);
// Volume-uniform points of the metric ball B(center, radius).
std::vector<DoublePoint> SampleBall(const DoublePoint& center, double radius,
                                    int count, Rng& rng);
// max over probes of the distance to the nearest net point.
double CoveringRadius(const std::vector<DoublePoint>& net,
                      const std::vector<DoublePoint>& probes);

}  // namespace crosscap
