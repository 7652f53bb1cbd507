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

// Geometry of the simply connected constant-curvature model spaces, realized
// inside R^{n+1}:
//   k = +1  unit sphere S^n,
//   k =  0  the affine slices {+-e0} x R^n,
//   k = -1  hyperboloid sheets H+^n / H-^n of the Minkowski form.
// Distances use chord formulas (2 asin(|x-y|/2), 2 asinh(...)) rather than
// acos/acosh of inner products; both agree but the chord form keeps full
// relative precision for nearby points.

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "crosscap/error.hpp"

namespace crosscap {

inline constexpr int kMaxAmbient = 8;

// Ambient vector with inline storage; n <= kMaxAmbient - 1.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor,
                          kMaxAmbient, 1>;

enum class Curvature : int { kHyperbolic = -1, kFlat = 0, kSpherical = 1 };

Curvature CurvatureFromInt(int k);
inline int ToInt(Curvature k) { return static_cast<int>(k); }

// sn_k(t): sinh, id, sin.
double Sn(Curvature k, double t);
// cs_k(t): cosh, 1, cos.
double Cs(Curvature k, double t);

class ModelPoint {
 public:
  ModelPoint() = default;

  // Validating constructor; throws kInvalidInput if coords are off the model.
  static ModelPoint Make(Curvature k, Vec coords);
  // Trusted construction that projects coords back onto the model surface.
  static ModelPoint Project(Curvature k, Vec coords);
  // No checks, no projection.
  static ModelPoint Unchecked(Curvature k, Vec coords) {
    ModelPoint p;
    p.k_ = k;
    p.coords_ = std::move(coords);
    return p;
  }

  Curvature k() const { return k_; }
  int n() const { return static_cast<int>(coords_.size()) - 1; }
  const Vec& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }
  // Sign of coords0: which slice / sheet / cap of the model the point is in.
  int Sheet() const { return coords_[0] >= 0.0 ? 1 : -1; }

 private:
  Curvature k_ = Curvature::kFlat;
  Vec coords_;
};

struct ModelTangent {
  ModelPoint base;
  Vec vec;
};

// Ambient bilinear form the model is built from: Euclidean for k = 0, 1;
// Minkowski (-,+,...,+) for k = -1.
double Inner(Curvature k, const Vec& a, const Vec& b);
// Riemannian norm of a tangent vector.
double TangentNorm(Curvature k, const Vec& v);

// e_i in R^{n+1}.
Vec Basis(int n, int i);
// The point h * e0: the center of the plus (h = 1) or minus (h = -1) disk.
ModelPoint Center(Curvature k, int n, int h);

ModelTangent MakeTangent(const ModelPoint& base, Vec vec);

double ModelDist(const ModelPoint& x, const ModelPoint& y);
// Same as ModelDist without the compatibility checks used on hot paths.
double ModelDistUnchecked(Curvature k, const Vec& x, const Vec& y);

ModelPoint ModelExp(const ModelTangent& v, double t);

struct ModelLogResult {
  ModelTangent direction;  // unit
  double length = 0.0;
};
ModelLogResult ModelLog(const ModelPoint& x, const ModelPoint& y);

// Angle at the vertex between sides a and b, opposite side c, in the k-model
// plane.
double ComparisonAngle(Curvature k, double a, double b, double c);

double AngleBetween(const ModelTangent& u, const ModelTangent& v);

// Orthonormal basis of the tangent space at x, as ambient vectors.
std::vector<Vec> TangentFrame(const ModelPoint& x);
// Projection of an ambient vector onto T_x.
Vec ProjectToTangent(const ModelPoint& x, const Vec& v);

// Volume of a metric rho-ball in the n-dimensional k-model.
double BallVolume(Curvature k, int n, double rho);
// Same quantity by adaptive Simpson quadrature only (no closed forms).
double BallVolumeQuadrature(Curvature k, int n, double rho,
                            double rel_tol = 1e-12);
// Area of the unit sphere S^{n-1}.
double UnitSphereArea(int n);

}  // namespace crosscap
