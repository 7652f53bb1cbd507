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

#include "crosscap/spaceform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace crosscap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kModelTol = 1e-12;


// Map a chord length (Euclidean or Minkowski) to model distance.
double ChordToDist(Curvature k, double chord) {
  switch (k) {
    case Curvature::kSpherical:
      return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
    case Curvature::kFlat:
      return chord;
    case Curvature::kHyperbolic:
      return 2.0 * std::asinh(0.5 * chord);
  }
  return chord;
}

double QuadricDefect(Curvature k, const Vec& c) {
  switch (k) {
    case Curvature::kSpherical:
      return std::abs(c.squaredNorm() - 1.0);
    case Curvature::kFlat:
      return std::abs(std::abs(c[0]) - 1.0);
    case Curvature::kHyperbolic:
      return std::abs(Inner(k, c, c) + 1.0);
  }
  return 0.0;
}

double AdaptiveSimpson(const std::function<double(double)>& f, double a,
                       double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return AdaptiveSimpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         AdaptiveSimpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

Curvature CurvatureFromInt(int k) {
  switch (k) {
    case -1: return Curvature::kHyperbolic;
    case 0: return Curvature::kFlat;
    case 1: return Curvature::kSpherical;
    default:
      Fail(ErrorCode::kInvalidInput,
           "curvature must be -1, 0 or 1, got " + std::to_string(k));
  }
}

double Sn(Curvature k, double t) {
  switch (k) {
    case Curvature::kSpherical: return std::sin(t);
    case Curvature::kFlat: return t;
    case Curvature::kHyperbolic: return std::sinh(t);
  }
  return t;
}

double Cs(Curvature k, double t) {
  switch (k) {
    case Curvature::kSpherical: return std::cos(t);
    case Curvature::kFlat: return 1.0;
    case Curvature::kHyperbolic: return std::cosh(t);
  }
  return 1.0;
}

double Inner(Curvature k, const Vec& a, const Vec& b) {
  const double full = a.dot(b);
  if (k == Curvature::kHyperbolic) return full - 2.0 * a[0] * b[0];
  return full;
}

double TangentNorm(Curvature k, const Vec& v) {
  if (k == Curvature::kHyperbolic) {
    return std::sqrt(std::max(0.0, Inner(k, v, v)));
  }
  return v.norm();
}

ModelPoint ModelPoint::Make(Curvature k, Vec coords) {
  Require(coords.size() >= 2 && coords.size() <= kMaxAmbient,
          ErrorCode::kInvalidInput, "ambient dimension out of range");
  const double scale = k == Curvature::kHyperbolic
                           ? std::max(1.0, coords[0] * coords[0])
                           : 1.0;
  Require(QuadricDefect(k, coords) <= kModelTol * scale,
          ErrorCode::kInvalidInput, "coordinates are not on the model space");
  Require(k != Curvature::kHyperbolic || coords[0] != 0.0,
          ErrorCode::kInvalidInput, "hyperbolic point needs c0 != 0");
  return Unchecked(k, std::move(coords));
}

ModelPoint ModelPoint::Project(Curvature k, Vec coords) {
  switch (k) {
    case Curvature::kSpherical:
      coords /= coords.norm();
      break;
    case Curvature::kFlat:
      coords[0] = coords[0] >= 0.0 ? 1.0 : -1.0;
      break;
    case Curvature::kHyperbolic: {
      // Keep the spatial part and solve for c0 on the same sheet.
      const double spatial = coords.tail(coords.size() - 1).squaredNorm();
      const double c0 = std::sqrt(1.0 + spatial);
      coords[0] = coords[0] >= 0.0 ? c0 : -c0;
      break;
    }
  }
  return Unchecked(k, std::move(coords));
}

Vec Basis(int n, int i) {
  Vec e = Vec::Zero(n + 1);
  e[i] = 1.0;
  return e;
}

ModelPoint Center(Curvature k, int n, int h) {
  Vec c = Vec::Zero(n + 1);
  c[0] = h >= 0 ? 1.0 : -1.0;
  return ModelPoint::Unchecked(k, std::move(c));
}

ModelTangent MakeTangent(const ModelPoint& base, Vec vec) {
  Require(vec.size() == base.coords().size(), ErrorCode::kInvalidInput,
          "tangent dimension mismatch");
  const Curvature k = base.k();
  const double scale = std::max(1.0, vec.norm());
  if (k == Curvature::kFlat) {
    Require(vec[0] == 0.0, ErrorCode::kInvalidInput,
            "flat tangent needs vec0 = 0");
  } else {
    Require(std::abs(Inner(k, vec, base.coords())) <= kModelTol * scale *
                                                          std::max(1.0, std::abs(base[0])),
            ErrorCode::kInvalidInput, "vector is not tangent at its base");
  }
  return ModelTangent{base, std::move(vec)};
}

double ModelDistUnchecked(Curvature k, const Vec& x, const Vec& y) {
  const Vec diff = x - y;
  if (k == Curvature::kHyperbolic) {
    // Spacelike on a single sheet; clamp rounding.
    const double m = std::max(0.0, diff.tail(diff.size() - 1).squaredNorm() -
                                       diff[0] * diff[0]);
    return ChordToDist(k, std::sqrt(m));
  }
  if (k == Curvature::kFlat) return diff.tail(diff.size() - 1).norm();
  return ChordToDist(k, diff.norm());
}

double ModelDist(const ModelPoint& x, const ModelPoint& y) {
  Require(x.k() == y.k() && x.n() == y.n(), ErrorCode::kInvalidInput,
          "model points have different curvature or dimension");
  if (x.k() != Curvature::kSpherical) {
    Require(x.Sheet() == y.Sheet(), ErrorCode::kInvalidInput,
            "model points lie on different slices/sheets");
  }
  return ModelDistUnchecked(x.k(), x.coords(), y.coords());
}

ModelPoint ModelExp(const ModelTangent& v, double t) {
  const Curvature k = v.base.k();
  const double norm = TangentNorm(k, v.vec);
  Require(std::abs(norm - 1.0) <= 1e-9, ErrorCode::kInvalidInput,
          "exp needs a unit tangent");
  Require(t >= 0.0, ErrorCode::kInvalidInput, "exp needs t >= 0");
  const Vec& x = v.base.coords();
  Vec y;
  switch (k) {
    case Curvature::kSpherical:
      y = std::cos(t) * x + std::sin(t) * v.vec;
      break;
    case Curvature::kFlat:
      y = x + t * v.vec;
      y[0] = x[0];
      break;
    case Curvature::kHyperbolic:
      y = std::cosh(t) * x + std::sinh(t) * v.vec;
      break;
  }
  return ModelPoint::Project(k, std::move(y));
}

ModelLogResult ModelLog(const ModelPoint& x, const ModelPoint& y) {
  const double t = ModelDist(x, y);
  Require(t > 0.0, ErrorCode::kUndefinedDirection,
          "log of a point at itself has no direction");
  const Curvature k = x.k();
  if (k == Curvature::kSpherical) {
    Require(t < kPi - 1e-9, ErrorCode::kNonUniqueSegment,
            "antipodal points are joined by many segments");
  }
  Vec w;
  switch (k) {
    case Curvature::kSpherical:
      w = y.coords() - x.coords().dot(y.coords()) * x.coords();
      break;
    case Curvature::kFlat:
      w = y.coords() - x.coords();
      w[0] = 0.0;
      break;
    case Curvature::kHyperbolic:
      w = y.coords() + Inner(k, x.coords(), y.coords()) * x.coords();
      break;
  }
  const double wn = TangentNorm(k, w);
  Require(wn > 0.0, ErrorCode::kUndefinedDirection,
          "points too close to resolve a direction");
  w /= wn;
  // Re-project onto T_x to remove the rounding component along x.
  w = ProjectToTangent(x, w);
  w /= TangentNorm(k, w);
  return ModelLogResult{ModelTangent{x, std::move(w)}, t};
}

double ComparisonAngle(Curvature k, double a, double b, double c) {
  constexpr double kTriTol = 1e-12;
  Require(a >= 0.0 && b >= 0.0 && c >= 0.0, ErrorCode::kInvalidInput,
          "side lengths must be nonnegative");
  Require(a > 0.0 && b > 0.0, ErrorCode::kUndefinedAngle,
          "angle at a vertex with a zero-length side");
  Require(c <= a + b + kTriTol && a <= b + c + kTriTol && b <= a + c + kTriTol,
          ErrorCode::kNoComparisonTriangle,
          "side lengths violate the triangle inequality");
  if (k == Curvature::kSpherical) {
    Require(a + b + c <= 2.0 * kPi + kTriTol, ErrorCode::kNoComparisonTriangle,
            "spherical perimeter exceeds 2 pi");
  }
  // Half-angle form of the law of cosines: tan(theta/2) =
  // sqrt(sn(s-a) sn(s-b) / (sn(s) sn(s-c))). Exact at theta = 0 and pi.
  const double s = 0.5 * (a + b + c);
  const auto f = [k](double x) { return std::max(0.0, Sn(k, std::max(0.0, x))); };
  double num = f(s - a) * f(s - b);
  double den = f(s) * f(s - c);
  if (k == Curvature::kSpherical && s >= kPi) den = 0.0;
  return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

double AngleBetween(const ModelTangent& u, const ModelTangent& v) {
  Require(u.base.k() == v.base.k() &&
              (u.base.coords() - v.base.coords()).norm() <= 1e-9,
          ErrorCode::kInvalidInput, "tangents have different base points");
  const Curvature k = u.base.k();
  const double nu = TangentNorm(k, u.vec);
  const double nv = TangentNorm(k, v.vec);
  Require(nu > 0.0 && nv > 0.0, ErrorCode::kInvalidInput,
          "angle with a zero vector");
  const Vec a = u.vec / nu;
  const Vec b = v.vec / nv;
  return 2.0 * std::atan2(TangentNorm(k, a - b), TangentNorm(k, a + b));
}

Vec ProjectToTangent(const ModelPoint& x, const Vec& v) {
  const Curvature k = x.k();
  const Vec& z = x.coords();
  switch (k) {
    case Curvature::kSpherical:
      return v - v.dot(z) * z;
    case Curvature::kFlat: {
      Vec w = v;
      w[0] = 0.0;
      return w;
    }
    case Curvature::kHyperbolic:
      // <z,z> = -1, so the projection adds <v,z> z.
      return v + Inner(k, v, z) * z;
  }
  return v;
}

std::vector<Vec> TangentFrame(const ModelPoint& x) {
  const Curvature k = x.k();
  const int n = x.n();
  std::vector<Vec> frame;
  frame.reserve(n);
  for (int i = 1; i <= n; ++i) {
    Vec v = ProjectToTangent(x, Basis(n, i));
    for (const Vec& f : frame) v -= Inner(k, v, f) * f;
    v /= TangentNorm(k, v);
    frame.push_back(std::move(v));
  }
  return frame;
}

double UnitSphereArea(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double BallVolumeQuadrature(Curvature k, int n, double rho, double rel_tol) {
  Require(n >= 1, ErrorCode::kInvalidInput, "dimension must be positive");
  Require(rho > 0.0, ErrorCode::kInvalidInput, "ball radius must be positive");
  Require(k != Curvature::kSpherical || rho <= kPi + 1e-15,
          ErrorCode::kInvalidInput, "spherical radius exceeds pi");
  const std::function<double(double)> integrand = [k, n](double t) {
    return std::pow(Sn(k, t), n - 1);
  };
  const double fa = integrand(0.0);
  const double fm = integrand(0.5 * rho);
  const double fb = integrand(rho);
  const double whole = rho / 6.0 * (fa + 4.0 * fm + fb);
  // Absolute tolerance proportional to a crude size estimate.
  const double tol = rel_tol * std::max(std::abs(whole), 1e-300);
  return UnitSphereArea(n) *
         AdaptiveSimpson(integrand, 0.0, rho, fa, fm, fb, whole, tol, 30);
}

double BallVolume(Curvature k, int n, double rho) {
  Require(n >= 1, ErrorCode::kInvalidInput, "dimension must be positive");
  Require(rho > 0.0, ErrorCode::kInvalidInput, "ball radius must be positive");
  Require(k != Curvature::kSpherical || rho <= kPi + 1e-15,
          ErrorCode::kInvalidInput, "spherical radius exceeds pi");
  switch (n) {
    case 1:
      return 2.0 * rho;
    case 2:
      switch (k) {
        case Curvature::kFlat: return kPi * rho * rho;
        // 2 pi (1 - cos rho), written to avoid cancellation.
        case Curvature::kSpherical: {
          const double s = std::sin(0.5 * rho);
          return 4.0 * kPi * s * s;
        }
        case Curvature::kHyperbolic: {
          const double s = std::sinh(0.5 * rho);
          return 4.0 * kPi * s * s;
        }
      }
      break;
    case 3:
      switch (k) {
        case Curvature::kFlat: return 4.0 / 3.0 * kPi * rho * rho * rho;
        case Curvature::kSpherical:
          if (rho < 1e-3) break;
          return kPi * (2.0 * rho - std::sin(2.0 * rho));
        case Curvature::kHyperbolic:
          if (rho < 1e-3) break;
          return kPi * (std::sinh(2.0 * rho) - 2.0 * rho);
      }
      break;
    default:
      break;
  }
  return BallVolumeQuadrature(k, n, rho, 1e-12);
}

}  // namespace crosscap
