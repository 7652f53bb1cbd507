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

#include "crosscap/doubledisk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

namespace crosscap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanIntervals = 8;
// Relative abscissa tolerance 2^(1 - bits), about 2e-9.
constexpr int kBrentBits = 30;
constexpr double kTieTol = 1e-8;

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

// Squared chord between points at radii t1, t2 (same half) whose directions
// differ by the angle theta is Radial(t1 - t2) + 4 sn(t1) sn(t2) sin^2(theta/2).
double Radial(Curvature k, double delta) {
  switch (k) {
    case Curvature::kSpherical: {
      const double s = std::sin(0.5 * delta);
      return 4.0 * s * s;
    }
    case Curvature::kFlat:
      return delta * delta;
    case Curvature::kHyperbolic: {
      const double s = std::sinh(0.5 * delta);
      return 4.0 * s * s;
    }
  }
  return delta * delta;
}

// Angle between unit vectors, accurate at 0 and pi.
double UnitAngle(const Vec& a, const Vec& b) {
  return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

// A unit vector orthogonal to a.
Vec AnyOrthogonal(const Vec& a) {
  int best = 0;
  for (int i = 1; i < a.size(); ++i) {
    if (std::abs(a[i]) < std::abs(a[best])) best = i;
  }
  Vec e = Vec::Zero(a.size());
  e[best] = 1.0;
  e -= e.dot(a) * a;
  return e / e.norm();
}

// Length of a path from a point at radius t (angle theta from the seam
// direction u) to the seam point u, within one half.
struct LegToSeam {
  double radial;  // Radial(t - r)
  double cross;   // 4 sn(t) sn(r)
  Curvature k;
  double operator()(double theta) const {
    const double s = std::sin(0.5 * theta);
    return ChordToDist(k, std::sqrt(radial + cross * s * s));
  }
};

// Reduced one-dimensional seam problem for a cross-half pair: seam
// directions u(phi) = cos(phi) a + sin(phi) b, phi in [0, psi].
struct SeamProblem {
  LegToSeam first;
  LegToSeam second;
  double psi = 0.0;
  Vec a;
  Vec b;
  bool degenerate_first = false;   // first point at its center
  bool degenerate_second = false;  // second point at its center

  double operator()(double phi) const {
    return first(phi) + second(psi - phi);
  }
  Vec Direction(double phi) const {
    Vec u = std::cos(phi) * a + std::sin(phi) * b;
    return u / u.norm();
  }
};

// Brent's method on [lo, hi]; the scan brackets keep it on one basin.
double RefineMinimum(const SeamProblem& f, double lo, double hi, double* value) {
  const auto res = boost::math::tools::brent_find_minima(
      [&f](double phi) { return f(phi); }, lo, hi, kBrentBits);
  *value = res.second;
  return res.first;
}

struct LocalMin {
  double phi;
  double value;
};

// Scan kScanIntervals equal pieces of [0, psi] and refine every discrete
// local minimum with Brent. Results sorted by value.
std::vector<LocalMin> MinimizeSeam(const SeamProblem& f) {
  if (f.psi <= 1e-15) return {LocalMin{0.0, f(0.0)}};
  std::array<double, kScanIntervals + 1> phis{};
  std::array<double, kScanIntervals + 1> vals{};
  for (int i = 0; i <= kScanIntervals; ++i) {
    phis[i] = f.psi * i / kScanIntervals;
    vals[i] = f(phis[i]);
  }
  std::vector<LocalMin> mins;
  for (int i = 0; i <= kScanIntervals; ++i) {
    const bool left_ok = i == 0 || vals[i] <= vals[i - 1];
    const bool right_ok = i == kScanIntervals || vals[i] <= vals[i + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = phis[std::max(0, i - 1)];
    const double hi = phis[std::min(kScanIntervals, i + 1)];
    double value = 0.0;
    const double phi = RefineMinimum(f, lo, hi, &value);
    mins.push_back(LocalMin{phi, value});
  }
  std::sort(mins.begin(), mins.end(),
            [](const LocalMin& l, const LocalMin& r) { return l.value < r.value; });
  return mins;
}

struct CrossPair {
  const DoublePoint* first;
  const DoublePoint* second;
  PolarCoords p1;
  PolarCoords p2;
};

// Canonical order for a cross-half pair: smaller radius first, plus half on
// ties. The order is invariant under the involution, so A preserves every
// computed distance bit for bit.
CrossPair OrderCrossPair(const DoublePoint& x, const DoublePoint& y) {
  PolarCoords px = Polar(x);
  PolarCoords py = Polar(y);
  const bool x_first =
      px.t < py.t || (px.t == py.t && x.half == Half::kPlus);
  if (x_first) return CrossPair{&x, &y, std::move(px), std::move(py)};
  return CrossPair{&y, &x, std::move(py), std::move(px)};
}

SeamProblem BuildSeamProblem(const DoubleDiskSpace& space,
                             const PolarCoords& p1, const PolarCoords& p2) {
  const Curvature k = space.k();
  const double r = space.r();
  SeamProblem f;
  f.first = LegToSeam{Radial(k, p1.t - r), 4.0 * Sn(k, p1.t) * space.sn_r(), k};
  f.second = LegToSeam{Radial(k, p2.t - r), 4.0 * Sn(k, p2.t) * space.sn_r(), k};
  f.degenerate_first = p1.t <= 1e-12;
  f.degenerate_second = p2.t <= 1e-12;
  f.a = p1.dir;
  if (f.degenerate_first) f.a = p2.dir;
  if (f.degenerate_first || f.degenerate_second) {
    f.psi = 0.0;
    f.b = AnyOrthogonal(f.a);
    return f;
  }
  f.psi = UnitAngle(p1.dir, p2.dir);
  Vec b = p2.dir - p2.dir.dot(f.a) * f.a;
  const double bn = b.norm();
  f.b = bn > 1e-12 ? Vec(b / bn) : AnyOrthogonal(f.a);
  return f;
}

double CrossHalfDist(const DoublePoint& x, const DoublePoint& y) {
  const CrossPair pair = OrderCrossPair(x, y);
  const SeamProblem f = BuildSeamProblem(x.space, pair.p1, pair.p2);
  if (f.degenerate_first || f.degenerate_second) return f(0.0);
  return MinimizeSeam(f).front().value;
}

bool SameSlice(const DoublePoint& x, const DoublePoint& y) {
  return x.half == y.half;
}

Vec Velocity(Curvature k, const Vec& x, const Vec& v, double s) {
  switch (k) {
    case Curvature::kSpherical:
      return -std::sin(s) * x + std::cos(s) * v;
    case Curvature::kFlat:
      return v;
    case Curvature::kHyperbolic:
      return std::sinh(s) * x + std::cosh(s) * v;
  }
  return v;
}

Vec ModelStep(Curvature k, const Vec& x, const Vec& v, double s) {
  switch (k) {
    case Curvature::kSpherical:
      return std::cos(s) * x + std::sin(s) * v;
    case Curvature::kFlat: {
      Vec y = x + s * v;
      y[0] = x[0];
      return y;
    }
    case Curvature::kHyperbolic:
      return std::cosh(s) * x + std::sinh(s) * v;
  }
  return x;
}

double RadiusOf(const DoubleDiskSpace& space, Half half, const Vec& coords) {
  DoublePoint p{space, half, ModelPoint::Unchecked(space.k(), coords)};
  return Polar(p).t;
}

}  // namespace

DoubleDiskSpace DoubleDiskSpace::Make(Curvature k, int n, double r) {
  Require(n >= 2 && n + 1 <= kMaxAmbient, ErrorCode::kInvalidInput,
          "double disk dimension must be in [2, 7]");
  Require(r > 0.0 && std::isfinite(r), ErrorCode::kInvalidInput,
          "double disk radius must be positive");
  Require(k != Curvature::kSpherical || r < 0.5 * kPi,
          ErrorCode::kInvalidInput, "spherical double disk needs r < pi/2");
  DoubleDiskSpace s;
  s.k_ = k;
  s.n_ = n;
  s.r_ = r;
  s.sn_r_ = Sn(k, r);
  return s;
}

PolarCoords Polar(const DoublePoint& x) {
  const Vec& c = x.z.coords();
  const int n = x.space.n();
  const Vec tail = c.tail(n);
  const double s = tail.norm();
  PolarCoords p;
  switch (x.space.k()) {
    case Curvature::kSpherical:
      p.t = std::atan2(s, Sign(x.half) * c[0]);
      break;
    case Curvature::kFlat:
      p.t = s;
      break;
    case Curvature::kHyperbolic:
      p.t = std::asinh(s);
      break;
  }
  if (s > 0.0) {
    p.dir = tail / s;
  } else {
    p.dir = Vec::Zero(n);
    p.dir[0] = 1.0;
  }
  return p;
}

DoublePoint FromPolar(const DoubleDiskSpace& space, Half half, double t,
                      const Vec& dir) {
  const int n = space.n();
  Vec c(n + 1);
  c[0] = Sign(half) * Cs(space.k(), t);
  c.tail(n) = Sn(space.k(), t) * dir;
  return DoublePoint{space, half, ModelPoint::Unchecked(space.k(), std::move(c))};
}

DoublePoint MakeDoublePoint(const DoubleDiskSpace& space, Half half,
                            const ModelPoint& z) {
  Require(z.k() == space.k() && z.n() == space.n(), ErrorCode::kInvalidInput,
          "model point does not belong to this double disk");
  Require(z.Sheet() == Sign(half), ErrorCode::kInvalidInput,
          "model point is on the wrong side for its half tag");
  DoublePoint p{space, half, z};
  Require(Polar(p).t <= space.r() + 1e-12, ErrorCode::kInvalidInput,
          "point lies outside the disk");
  return p;
}

DoublePoint CenterPoint(const DoubleDiskSpace& space, Half half) {
  return DoublePoint{space, half, Center(space.k(), space.n(), Sign(half))};
}

bool OnSeam(const DoublePoint& x) {
  return std::abs(Polar(x).t - x.space.r()) <= kSeamTol;
}

DoublePoint Reexpress(const DoublePoint& x, Half target) {
  if (x.half == target) return x;
  Require(OnSeam(x), ErrorCode::kInvalidInput,
          "only seam points can change half");
  Vec c = x.z.coords();
  c[0] = -c[0];
  return DoublePoint{x.space, target, ModelPoint::Unchecked(x.space.k(), std::move(c))};
}

bool SamePoint(const DoublePoint& x, const DoublePoint& y, double tol) {
  if (!(x.space == y.space)) return false;
  if (x.half == y.half) {
    return ModelDistUnchecked(x.space.k(), x.z.coords(), y.z.coords()) <= tol;
  }
  if (!OnSeam(x) || !OnSeam(y)) return false;
  return (Polar(x).dir - Polar(y).dir).norm() <= tol;
}

DoublePoint Involution(const DoublePoint& x) {
  return DoublePoint{x.space, Opposite(x.half),
                     ModelPoint::Unchecked(x.space.k(), -x.z.coords())};
}

DoublePoint SeamPoint(const DoubleDiskSpace& space, const Vec& u, Half half) {
  Require(u.size() == space.n(), ErrorCode::kInvalidInput,
          "seam direction has the wrong dimension");
  Require(std::abs(u.norm() - 1.0) <= 1e-12, ErrorCode::kInvalidInput,
          "seam direction must be a unit vector");
  return FromPolar(space, half, space.r(), u);
}

double DoubleDist(const DoublePoint& x, const DoublePoint& y) {
  Require(x.space == y.space, ErrorCode::kInvalidInput,
          "points belong to different double disks");
  const Curvature k = x.space.k();
  if (SameSlice(x, y)) return ModelDistUnchecked(k, x.z.coords(), y.z.coords());
  if (OnSeam(x)) {
    return ModelDistUnchecked(k, Reexpress(x, y.half).z.coords(), y.z.coords());
  }
  if (OnSeam(y)) {
    return ModelDistUnchecked(k, x.z.coords(), Reexpress(y, x.half).z.coords());
  }
  return CrossHalfDist(x, y);
}

double DoubleDistLowerBound(const DoublePoint& x, const DoublePoint& y) {
  const Curvature k = x.space.k();
  if (SameSlice(x, y)) return ModelDistUnchecked(k, x.z.coords(), y.z.coords());
  // Every cross path touches the seam; also the mirrored image is no farther.
  const double r = x.space.r();
  const double via_seam = (r - Polar(x).t) + (r - Polar(y).t);
  Vec mirrored = y.z.coords();
  mirrored[0] = -mirrored[0];
  return std::max(via_seam, ModelDistUnchecked(k, x.z.coords(), mirrored));
}

DoubleLogResult DoubleLog(const DoublePoint& x, const DoublePoint& y) {
  Require(x.space == y.space, ErrorCode::kInvalidInput,
          "points belong to different double disks");
  Require(!SamePoint(x, y, 1e-14), ErrorCode::kUndefinedDirection,
          "log of a point at itself has no direction");
  const DoubleDiskSpace& space = x.space;
  DoubleLogResult result;

  auto same_half_witness = [&](const DoublePoint& from, const DoublePoint& to) {
    ModelLogResult log = ModelLog(from.z, to.z);
    SegmentWitness w;
    w.from = x;
    w.to = y;
    w.length = log.length;
    w.initial_direction = log.direction;
    w.direction_half = from.half;
    return w;
  };

  const bool x_seam = OnSeam(x);
  const bool y_seam = OnSeam(y);
  if (x_seam && y_seam) {
    // Chords through either half have the same length.
    for (Half h : {Half::kPlus, Half::kMinus}) {
      result.witnesses.push_back(
          same_half_witness(Reexpress(x, h), Reexpress(y, h)));
    }
    return result;
  }
  if (SameSlice(x, y) || x_seam || y_seam) {
    const Half h = x_seam ? y.half : x.half;
    const DoublePoint from = x_seam ? Reexpress(x, h) : x;
    const DoublePoint to = y_seam ? Reexpress(y, h) : y;
    result.witnesses.push_back(same_half_witness(from, to));
    return result;
  }

  const CrossPair pair = OrderCrossPair(x, y);
  SeamProblem f = BuildSeamProblem(space, pair.p1, pair.p2);

  std::vector<Vec> seam_dirs;
  double best = 0.0;
  if (f.degenerate_first && f.degenerate_second) {
    result.family = true;
    best = f(0.0);
    seam_dirs.push_back(f.a);
  } else if (f.degenerate_first || f.degenerate_second) {
    best = f(0.0);
    seam_dirs.push_back(f.a);
  } else {
    std::vector<std::pair<Vec, double>> candidates;
    auto collect = [&](const SeamProblem& g) {
      for (const LocalMin& m : MinimizeSeam(g)) {
        candidates.emplace_back(g.Direction(m.phi), m.value);
      }
    };
    collect(f);
    if (kPi - f.psi < 1e-9) {
      // Opposite directions: the reduction plane is not unique.
      if (space.n() == 2) {
        SeamProblem g = f;
        g.b = -f.b;
        collect(g);
      } else {
        result.family = true;
      }
    }
    best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) best = std::min(best, c.second);
    for (const auto& c : candidates) {
      if (c.second > best + kTieTol) continue;
      bool duplicate = false;
      for (const Vec& u : seam_dirs) {
        if ((u - c.first).norm() < 1e-6) duplicate = true;
      }
      if (!duplicate) seam_dirs.push_back(c.first);
    }
    // An endpoint minimum in the direction of either point is a radial path,
    // which can match an interior one; duplicates were merged above.
  }

  for (const Vec& u : seam_dirs) {
    SegmentWitness w;
    w.from = x;
    w.to = y;
    w.length = best;
    w.seam_crossing = u;
    const DoublePoint seam = FromPolar(space, x.half, space.r(), u);
    w.initial_direction = ModelLog(x.z, seam.z).direction;
    w.direction_half = x.half;
    result.witnesses.push_back(std::move(w));
  }
  return result;
}

CrosscapPoint::CrosscapPoint(const DoublePoint& x) {
  if (OnSeam(x)) {
    const DoublePoint plus = Reexpress(x, Half::kPlus);
    const Vec u = Polar(plus).dir;
    const Vec neg = -u;
    bool keep = true;
    for (int i = 0; i < u.size(); ++i) {
      if (u[i] != neg[i]) {
        keep = u[i] < neg[i];
        break;
      }
    }
    rep_ = keep ? plus : FromPolar(x.space, Half::kPlus, x.space.r(), neg);
    return;
  }
  rep_ = x.half == Half::kPlus ? x : Involution(x);
}

double CrosscapDist(const CrosscapPoint& a, const CrosscapPoint& b) {
  const DoublePoint& x = a.rep();
  const DoublePoint& y = b.rep();
  // d(x, Ay) = d(Ax, y) in exact arithmetic; taking both keeps the result
  // exactly symmetric in (a, b).
  return std::min({DoubleDist(x, y), DoubleDist(x, Involution(y)),
                   DoubleDist(Involution(x), y)});
}

Vec SeamNormal(const DoubleDiskSpace& space, Half half, const Vec& u) {
  const int n = space.n();
  const double r = space.r();
  Vec nu(n + 1);
  switch (space.k()) {
    case Curvature::kSpherical:
      nu[0] = -Sign(half) * std::sin(r);
      nu.tail(n) = std::cos(r) * u;
      break;
    case Curvature::kFlat:
      nu[0] = 0.0;
      nu.tail(n) = u;
      break;
    case Curvature::kHyperbolic:
      nu[0] = Sign(half) * std::sinh(r);
      nu.tail(n) = std::cosh(r) * u;
      break;
  }
  return nu;
}

DoubleTangent ToHalf(const DoubleTangent& v, Half target) {
  if (v.base.half == target) return v;
  const DoublePoint base = Reexpress(v.base, target);
  const Curvature k = v.base.space.k();
  Vec w = v.vec;
  w[0] = -w[0];
  const Vec nu = SeamNormal(base.space, target, Polar(base).dir);
  w -= 2.0 * Inner(k, w, nu) * nu;
  return DoubleTangent{base, ProjectToTangent(base.z, w)};
}

DoublePoint DoubleExp(const DoubleTangent& v_in, double t) {
  Require(t >= 0.0, ErrorCode::kInvalidInput, "step length must be >= 0");
  const DoubleDiskSpace& space = v_in.base.space;
  const Curvature k = space.k();
  const double r = space.r();
  DoubleTangent v = v_in;
  Require(std::abs(TangentNorm(k, v.vec) - 1.0) <= 1e-9,
          ErrorCode::kInvalidInput, "exp needs a unit tangent");
  if (t == 0.0) return v.base;

  // Leaving a seam point outward enters the other half.
  if (OnSeam(v.base)) {
    const Vec nu = SeamNormal(space, v.base.half, Polar(v.base).dir);
    if (Inner(k, v.vec, nu) > 0.0) v = ToHalf(v, Opposite(v.base.half));
  }

  const Vec& x = v.base.z.coords();
  const Half h = v.base.half;
  Vec end = ModelStep(k, x, v.vec, t);
  const double t_end = RadiusOf(space, h, end);
  if (t_end <= r) {
    return DoublePoint{space, h, ModelPoint::Project(k, std::move(end))};
  }
  const double overshoot_tol = 1e-6 * std::max(1.0, r);

  // Exit parameter of the model geodesic from the convex disk.
  double lo = 0.0;
  double hi = t;
  if (RadiusOf(space, h, x) >= r - kSeamTol) {
    // Starting on the seam heading (tangentially) outward: grazing.
    if (t_end - r <= overshoot_tol) {
      const PolarCoords p = Polar(DoublePoint{space, h, ModelPoint::Unchecked(k, end)});
      return FromPolar(space, h, r, p.dir);
    }
    Fail(ErrorCode::kStepTooLarge, "step leaves the disk along the seam");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (RadiusOf(space, h, ModelStep(k, x, v.vec, mid)) > r) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  const Vec at = ModelStep(k, x, v.vec, s);
  const PolarCoords p = Polar(DoublePoint{space, h, ModelPoint::Unchecked(k, at)});
  const DoublePoint seam = FromPolar(space, h, r, p.dir);
  Vec vel = ProjectToTangent(seam.z, Velocity(k, x, v.vec, s));
  vel /= TangentNorm(k, vel);
  const DoubleTangent across = ToHalf(DoubleTangent{seam, vel}, Opposite(h));
  Vec rest = ModelStep(k, across.base.z.coords(), across.vec, t - s);
  const Half h2 = Opposite(h);
  const double t_rest = RadiusOf(space, h2, rest);
  if (t_rest <= r) {
    return DoublePoint{space, h2, ModelPoint::Project(k, std::move(rest))};
  }
  if (t_rest - r <= overshoot_tol) {
    const PolarCoords q = Polar(DoublePoint{space, h2, ModelPoint::Unchecked(k, rest)});
    return FromPolar(space, h2, r, q.dir);
  }
  Fail(ErrorCode::kStepTooLarge, "geodesic step crosses the seam twice");
}

std::vector<DoubleTangent> Frame(const DoublePoint& x) {
  std::vector<DoubleTangent> frame;
  for (Vec& v : TangentFrame(x.z)) frame.push_back(DoubleTangent{x, std::move(v)});
  return frame;
}

Interval DistDerivative(const DoublePoint& z, const DoublePoint& x,
                        const DoubleTangent& v) {
  Require(!SamePoint(z, x, 1e-14), ErrorCode::kUndefinedDirection,
          "derivative of dist(z, .) at z is undefined");
  Require(SamePoint(v.base, x), ErrorCode::kInvalidInput,
          "tangent is not based at x");
  const DoubleLogResult log = DoubleLog(x, z);
  Interval out{std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity()};
  for (const SegmentWitness& w : log.witnesses) {
    const DoubleTangent vv = ToHalf(v, w.direction_half);
    const ModelTangent tv{w.initial_direction.base, vv.vec};
    const double value = -std::cos(AngleBetween(w.initial_direction, tv));
    out.lo = std::min(out.lo, value);
    out.hi = std::max(out.hi, value);
  }
  return out;
}

DoublePoint RandomPoint(const DoubleDiskSpace& space, Rng& rng) {
  const int n = space.n();
  const Curvature k = space.k();
  const double r = space.r();
  const Half half = rng.Coin() ? Half::kPlus : Half::kMinus;
  Vec dir(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) dir[i] = rng.Normal();
    norm = dir.norm();
  } while (norm < 1e-12);
  dir /= norm;
  // Propose the Euclidean radial law t^{n-1}, correct by (sn(t)/t)^{n-1}.
  const double bound =
      k == Curvature::kHyperbolic ? std::pow(Sn(k, r) / r, n - 1) : 1.0;
  double t = 0.0;
  while (true) {
    t = r * std::pow(rng.Uniform(), 1.0 / n);
    if (k == Curvature::kFlat) break;
    const double ratio = t > 0.0 ? std::pow(Sn(k, t) / t, n - 1) : 1.0;
    if (rng.Uniform() * bound <= ratio) break;
  }
  return FromPolar(space, half, t, dir);
}

DoublePoint RandomPoint(const DoubleDiskSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  return RandomPoint(space, rng);
}

std::vector<DoublePoint> UniformNet(const DoubleDiskSpace& space, int count,
                                    std::uint64_t seed, int pool_factor) {
  Require(count >= 1, ErrorCode::kInvalidInput, "net size must be >= 1");
  std::vector<DoublePoint> net;
  net.reserve(count);
  net.push_back(RandomPoint(space, seed));
  if (count == 1) return net;

  Rng pool_rng = Rng(seed).Split(1);
  const int pool_size = std::max(pool_factor * count, 1000);
  std::vector<DoublePoint> pool;
  pool.reserve(pool_size);
  for (int i = 0; i < pool_size; ++i) pool.push_back(RandomPoint(space, pool_rng));

  std::vector<double> min_dist(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    min_dist[i] = DoubleDist(net.front(), pool[i]);
  }
  while (static_cast<int>(net.size()) < count) {
    const std::size_t far =
        std::max_element(min_dist.begin(), min_dist.end()) - min_dist.begin();
    net.push_back(pool[far]);
    const DoublePoint& q = net.back();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (DoubleDistLowerBound(q, pool[i]) >= min_dist[i]) continue;
      min_dist[i] = std::min(min_dist[i], DoubleDist(q, pool[i]));
    }
  }
  return net;
}

std::vector<DoublePoint> SampleBall(const DoublePoint& center, double radius,
                                    int count, Rng& rng) {
  Require(radius >= 0.0, ErrorCode::kInvalidInput, "ball radius must be >= 0");
  std::vector<DoublePoint> out;
  out.reserve(count);
  if (radius == 0.0) {
    out.assign(count, center);
    return out;
  }
  const DoubleDiskSpace& space = center.space;
  const Curvature k = space.k();
  const int n = space.n();
  const double r = space.r();
  const double t_center = Polar(center).t;
  const bool reaches_other = t_center + radius > r - kSeamTol;

  // Proposal: the model ball about the center written in a uniformly chosen
  // half; double-disk balls are contained in the union of both.
  const DoublePoint own = center;
  DoublePoint mirror = center;
  {
    Vec c = center.z.coords();
    c[0] = -c[0];
    mirror = DoublePoint{space, Opposite(center.half), ModelPoint::Unchecked(k, c)};
  }
  const std::vector<Vec> own_frame = TangentFrame(own.z);
  const std::vector<Vec> mirror_frame = TangentFrame(mirror.z);
  const double bound =
      k == Curvature::kHyperbolic ? std::pow(Sn(k, radius) / radius, n - 1) : 1.0;

  while (static_cast<int>(out.size()) < count) {
    const bool use_mirror = reaches_other && rng.Coin();
    const DoublePoint& base = use_mirror ? mirror : own;
    const std::vector<Vec>& frame = use_mirror ? mirror_frame : own_frame;
    Vec coeff(n);
    double norm = 0.0;
    do {
      for (int i = 0; i < n; ++i) coeff[i] = rng.Normal();
      norm = coeff.norm();
    } while (norm < 1e-12);
    coeff /= norm;
    double t = 0.0;
    while (true) {
      t = radius * std::pow(rng.Uniform(), 1.0 / n);
      if (k == Curvature::kFlat) break;
      const double ratio = t > 0.0 ? std::pow(Sn(k, t) / t, n - 1) : 1.0;
      if (rng.Uniform() * bound <= ratio) break;
    }
    Vec dir = Vec::Zero(n + 1);
    for (int i = 0; i < n; ++i) dir += coeff[i] * frame[i];
    dir /= TangentNorm(k, dir);
    Vec z = ModelStep(k, base.z.coords(), dir, t);
    DoublePoint cand{space, base.half, ModelPoint::Project(k, std::move(z))};
    if (Polar(cand).t > r) continue;
    if (use_mirror && DoubleDist(center, cand) > radius) continue;
    out.push_back(std::move(cand));
  }
  return out;
}

double CoveringRadius(const std::vector<DoublePoint>& net,
                      const std::vector<DoublePoint>& probes) {
  double worst = 0.0;
  for (const DoublePoint& p : probes) {
    double best = std::numeric_limits<double>::infinity();
    for (const DoublePoint& q : net) {
      if (DoubleDistLowerBound(p, q) >= best) continue;
      best = std::min(best, DoubleDist(p, q));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

Vec RadialTangent(const DoublePoint& x) {
  const PolarCoords p = Polar(x);
  const Curvature k = x.space.k();
  const int n = x.space.n();
  const double h = Sign(x.half);
  Vec nu(n + 1);
  switch (k) {
    case Curvature::kSpherical:
      nu[0] = -h * std::sin(p.t);
      nu.tail(n) = std::cos(p.t) * p.dir;
      break;
    case Curvature::kFlat:
      nu[0] = 0.0;
      nu.tail(n) = p.dir;
      break;
    case Curvature::kHyperbolic:
      nu[0] = h * std::sinh(p.t);
      nu.tail(n) = std::cosh(p.t) * p.dir;
      break;
  }
  return nu;
}

}  // namespace crosscap
