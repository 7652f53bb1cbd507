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


#include "crosscap/strain.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "crosscap/error.hpp"
#include "crosscap/rng.hpp"

namespace crosscap {
namespace {

constexpr double kPi = std::numbers::pi;

DoubleDiskSpace Flat2() { return DoubleDiskSpace::Make(Curvature::kFlat, 2, 1.0); }

DoublePoint FlatPoint(const DoubleDiskSpace& space, double x1, double x2) {
  Vec c(3);
  c << 1.0, x1, x2;
  return MakeDoublePoint(space, Half::kPlus, ModelPoint::Make(Curvature::kFlat, c));
}

TEST(Strainer, FlatFrameStrainerHasExactAngles) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.1, -0.2);
  const Strainer s = FrameStrainer(x, 0.25, 0.1, 0.05);
  const StrainCheck check = IsStrained(x, s);
  ASSERT_TRUE(check.strained);
  for (const StrainMargin& m : check.margins) {
    if (m.label.rfind("pair", 0) == 0) {
      EXPECT_NEAR(m.slack, 0.1, 1e-7) << m.label;
    } else if (m.label == "dist") {
      EXPECT_NEAR(m.slack, 0.25 - 0.05, 1e-12);
    } else {
      EXPECT_NEAR(m.slack, 0.1, 1e-7) << m.label;
    }
  }
}

TEST(Strainer, DuplicateDirectionIsNotStrained) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.0, 0.0);
  const Strainer frame = FrameStrainer(x, 0.25, 0.1, 0.05);
  const Strainer dup = Strainer::Make({frame.pairs[0], frame.pairs[0]}, 0.1, 0.05);
  const StrainCheck check = IsStrained(x, dup);
  EXPECT_FALSE(check.strained);
  EXPECT_LT(check.worst, -1.0);
}

TEST(Strainer, CoincidentPointThrows) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.0, 0.0);
  const Strainer s = FrameStrainer(x, 0.25, 0.1, 0.05);
  try {
    IsStrained(s.pairs[0].a, s);
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedComparison);
  }
}

TEST(Strainer, MakeValidates) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.0, 0.0);
  EXPECT_THROW(Strainer::Make({}, 0.1, 0.1), Error);
  EXPECT_THROW(Strainer::Make({StrainerPair{x, x}}, 0.0, 0.1), Error);
  const DoubleDiskSpace other = DoubleDiskSpace::Make(Curvature::kFlat, 2, 2.0);
  const DoublePoint y = CenterPoint(other, Half::kPlus);
  EXPECT_THROW(Strainer::Make({StrainerPair{x, y}}, 0.1, 0.1), Error);
}

TEST(Strainer, TiltedFrameIsOrthonormalAndAvoidsRadial) {
  for (Curvature k : {Curvature::kHyperbolic, Curvature::kFlat, Curvature::kSpherical}) {
    for (int n : {2, 3}) {
      const DoubleDiskSpace space = DoubleDiskSpace::Make(k, n, 1.0);
      Rng rng(5);
      for (int trial = 0; trial < 10; ++trial) {
        const DoublePoint x = RandomPoint(space, rng);
        const std::vector<DoubleTangent> f = TiltedFrame(x);
        ASSERT_EQ(static_cast<int>(f.size()), n);
        const Vec radial = RadialTangent(x);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            EXPECT_NEAR(Inner(k, f[i].vec, f[j].vec), i == j ? 1.0 : 0.0, 1e-10);
          }
          EXPECT_NEAR(std::abs(Inner(k, f[i].vec, radial)), 1.0 / std::sqrt(n), 1e-9);
        }
      }
    }
  }
}

TEST(Strainer, NeighborhoodOfFlatPointIsStrained) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.2, 0.1);
  const Strainer s = FrameStrainer(x, 0.25, 0.5, 0.05);
  const NeighborhoodCheck check = IsStrainedNeighborhood({x}, s, 0.02, 50, 9);
  EXPECT_TRUE(check.strained);
  EXPECT_EQ(check.probes, 51);
}

TEST(Chart, FlatDistanceChartIsNearlyIsometric) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.1, 0.1);
  const Strainer s = FrameStrainer(x, 0.25, 0.5, 0.05);
  Rng rng(3);
  const std::vector<DoublePoint> ball = SampleBall(x, 0.01, 40, rng);
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i + 1 < ball.size(); i += 2) pairs.emplace_back(ball[i], ball[i + 1]);
  const PointMap chart = [&s](const DoublePoint& p) { return DistanceChart(p, s); };
  const RatioRange range = BiLipschitzEstimate(chart, pairs);
  EXPECT_EQ(range.used, 20);
  EXPECT_GT(range.min_ratio, 0.9);
  EXPECT_LT(range.max_ratio, 1.1);
}

TEST(Chart, SmoothedChartIsDeterministic) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.1, 0.1);
  const Strainer s = FrameStrainer(x, 0.25, 0.5, 0.05);
  const SmoothedChart a = SmoothedChart::Make(x, s, 0.01, 64, 7);
  const SmoothedChart b = SmoothedChart::Make(x, s, 0.01, 64, 7);
  const DoublePoint y = FlatPoint(space, 0.12, 0.09);
  EXPECT_EQ(SmoothedChartMap(a, y), SmoothedChartMap(b, y));
  EXPECT_NEAR((SmoothedChartMap(a, y) - DistanceChart(y, s)).norm(), 0.0, 0.02);
}

TEST(Chart, TransportAtSamePointIsIdentity) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kHyperbolic, 2, 1.0);
  const DoublePoint x = RandomPoint(space, 11);
  const Strainer s = FrameStrainer(x, 0.25, 0.5, 0.05);
  const SmoothedChart c = SmoothedChart::Make(x, s, 0.01, 64, 4);
  const TransportEstimate t = TransportP(x, x, c, 1e-4);
  EXPECT_NEAR((t.map.matrix - Eigen::MatrixXd::Identity(2, 2)).norm(), 0.0, 1e-9);
}

TEST(Differential, LinearFieldInFlatSlice) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kFlat, 3, 1.0);
  const DoublePoint x = RandomPoint(space, 12);
  Eigen::MatrixXd a(2, 3);
  a << 1.0, -2.0, 0.5, 0.0, 3.0, 1.0;
  const PointMap field = [&a](const DoublePoint& p) -> Vec {
    return a * p.z.coords().tail(3);
  };
  const std::vector<DoubleTangent> basis = Frame(x);
  const LinearMapEstimate d = EstimateDifferential(field, x, basis, 1e-3);
  for (int j = 0; j < 3; ++j) {
    const Vec expected = a * basis[j].vec.tail(3);
    EXPECT_NEAR((d.matrix.col(j) - expected).norm(), 0.0, 1e-9);
  }
  const DoublePoint seam = SeamPoint(space, Basis(2, 0), Half::kPlus);
  // One-sided differences at the seam need inward directions.
  Vec tilted = -0.2 * RadialTangent(seam) + Basis(3, 2);
  tilted /= tilted.norm();
  const std::vector<DoubleTangent> inward{DoubleTangent{seam, -RadialTangent(seam)},
                                          DoubleTangent{seam, tilted}};
  const LinearMapEstimate ds = EstimateDifferential(field, seam, inward, 1e-3);
  for (int j = 0; j < 2; ++j) {
    EXPECT_NEAR((ds.matrix.col(j) - a * inward[j].vec.tail(3)).norm(), 0.0, 1e-9);
  }
}

// a_i = x + rho e_i, b_i = x - rho e_i in the flat plus slice.
Strainer AxisStrainer(const DoublePoint& x, double rho, double delta, double radius) {
  std::vector<StrainerPair> pairs;
  for (int i = 1; i <= x.space.n(); ++i) {
    const Vec e = Basis(x.space.n(), i);
    pairs.push_back(StrainerPair{DoubleExp(DoubleTangent{x, e}, rho),
                                 DoubleExp(DoubleTangent{x, Vec(-e)}, rho)});
  }
  return Strainer::Make(std::move(pairs), delta, radius);
}

TEST(Strainer, ZeroProbeRadiusIsTheCenterCheck) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.1, 0.3);
  const Strainer s = FrameStrainer(x, 0.25, 0.2, 0.05);
  const NeighborhoodCheck n = IsStrainedNeighborhood({x}, s, 0.0, 5, 1);
  EXPECT_EQ(n.probes, 1);
  EXPECT_EQ(n.worst, IsStrained(x, s).worst);
}

TEST(Strainer, MarginsAreContinuous) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kSpherical, 2, 1.0);
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const DoublePoint x = RandomPoint(space, rng);
    if (Polar(x).t > 0.6) continue;
    const Strainer s = FrameStrainer(x, 0.25, 0.3, 0.05);
    const StrainCheck a = IsStrained(x, s);
    const DoubleTangent v{x, TiltedFrame(x).front().vec};
    const StrainCheck b = IsStrained(DoubleExp(v, 1e-4), s);
    ASSERT_EQ(a.margins.size(), b.margins.size());
    for (std::size_t m = 0; m < a.margins.size(); ++m) {
      EXPECT_LE(std::abs(a.margins[m].slack - b.margins[m].slack), 1e-2);
    }
  }
}

TEST(Chart, AxisChartValuesAndTranslation) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.0, 0.1);
  const double rho = 0.3;
  const Strainer s = AxisStrainer(x, rho, 0.1, 0.05);
  EXPECT_NEAR((DistanceChart(x, s) - Vec::Constant(2, rho)).norm(), 0.0, 1e-12);
  for (double t : {0.01, 0.02, 0.04}) {
    const Vec c = DistanceChart(FlatPoint(space, t, 0.1), s);
    EXPECT_NEAR(c[0], rho - t, 1e-12);
    EXPECT_NEAR(c[1], std::hypot(rho, t), 1e-12);
    EXPECT_LE(c[1] - rho, t * t / rho);
  }
}

TEST(Chart, IdentityMapHasUnitRatios) {
  const DoubleDiskSpace space = Flat2();
  Rng rng(15);
  std::vector<PointPair> pairs;
  for (int i = 0; i < 50; ++i) pairs.emplace_back(RandomPoint(space, rng), RandomPoint(space, rng));
  std::vector<PointPair> same_half;
  for (const PointPair& p : pairs) {
    if (p.first.half == Half::kPlus && p.second.half == Half::kPlus) same_half.push_back(p);
  }
  ASSERT_FALSE(same_half.empty());
  same_half.emplace_back(same_half.front().first, same_half.front().first);
  const PointMap id = [](const DoublePoint& p) -> Vec { return p.z.coords().tail(2); };
  const RatioRange range = BiLipschitzEstimate(id, same_half);
  EXPECT_NEAR(range.min_ratio, 1.0, 1e-9);
  EXPECT_NEAR(range.max_ratio, 1.0, 1e-9);
  EXPECT_EQ(range.skipped, 1);
}

TEST(Chart, DistanceChartOnSmallBall) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.1, 0.1);
  const Strainer s = FrameStrainer(x, 0.25, 0.5, 0.05);
  Rng rng(16);
  const std::vector<DoublePoint> ball = SampleBall(x, 0.005, 200, rng);
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i + 1 < ball.size(); i += 2) pairs.emplace_back(ball[i], ball[i + 1]);
  const PointMap chart = [&s](const DoublePoint& p) { return DistanceChart(p, s); };
  const RatioRange range = BiLipschitzEstimate(chart, pairs);
  EXPECT_GE(range.min_ratio, 0.97);
  EXPECT_LE(range.max_ratio, 1.03);
}

TEST(Chart, DegradingStrainerWidensRatios) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.0, 0.0);
  Rng rng(17);
  const std::vector<DoublePoint> ball = SampleBall(x, 0.02, 200, rng);
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i + 1 < ball.size(); i += 2) pairs.emplace_back(ball[i], ball[i + 1]);
  double previous = 0.0;
  for (double delta : {0.05, 0.2, 0.5}) {
    // Second pair rotated toward the first by delta.
    Vec u(3), w(3);
    u << 0.0, 1.0, 0.0;
    w << 0.0, std::sin(delta), std::cos(delta);
    std::vector<StrainerPair> p;
    for (const Vec& e : {u, w}) {
      p.push_back(StrainerPair{DoubleExp(DoubleTangent{x, e}, 0.3),
                               DoubleExp(DoubleTangent{x, Vec(-e)}, 0.3)});
    }
    const Strainer s = Strainer::Make(std::move(p), 2.0 * delta, 0.05);
    EXPECT_TRUE(IsStrained(x, s).strained);
    const PointMap chart = [&s](const DoublePoint& q) { return DistanceChart(q, s); };
    const RatioRange range = BiLipschitzEstimate(chart, pairs);
    const double spread = range.max_ratio / range.min_ratio;
    EXPECT_GT(spread, previous);
    previous = spread;
  }
}

TEST(Chart, SmoothedCoordinateBounds) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.1, 0.1);
  const Strainer s = FrameStrainer(x, 0.25, 0.5, 0.05);
  const double eta = 0.01;
  const SmoothedChart c = SmoothedChart::Make(x, s, eta, 4096, 21);
  const SmoothedChart other = SmoothedChart::Make(x, s, eta, 4096, 22);
  Rng rng(18);
  const std::vector<DoublePoint> ys = SampleBall(x, 0.05, 20, rng);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const DoublePoint& y = ys[j];
    for (int i = 0; i < 2; ++i) {
      const McEstimate v = SmoothedCoordinate(c, i, y);
      const McEstimate w = SmoothedCoordinate(other, i, y);
      EXPECT_LE(std::abs(v.value - DoubleDist(s.pairs[i].a, y)), eta);
      EXPECT_LE(std::abs(v.value - w.value), 3.0 * std::hypot(v.std_error, w.std_error) + 1e-12);
      if (j > 0) {
        const McEstimate prev = SmoothedCoordinate(c, i, ys[j - 1]);
        EXPECT_LE(std::abs(v.value - prev.value), DoubleDist(y, ys[j - 1]) + 1e-12);
      }
    }
  }
}

TEST(Differential, DistanceFieldMatchesDirectionalDerivative) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kHyperbolic, 2, 1.0);
  Rng rng(19);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const DoublePoint z = RandomPoint(space, rng);
    const DoublePoint x = RandomPoint(space, rng);
    if (Polar(x).t > 0.9 || DoubleDist(x, z) < 0.1) continue;
    const PointMap field = [&z](const DoublePoint& p) {
      Vec v(1);
      v << DoubleDist(z, p);
      return v;
    };
    const std::vector<DoubleTangent> basis = Frame(x);
    const LinearMapEstimate d = EstimateDifferential(field, x, basis, h);
    for (int j = 0; j < 2; ++j) {
      const Interval iv = DistDerivative(z, x, basis[j]);
      if (iv.hi - iv.lo > 1e-9) continue;  // several segments: one-sided only
      EXPECT_NEAR(d.matrix(0, j), iv.lo, 10.0 * h);
    }
  }
}

TEST(Chart, TransportComposes) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.1, 0.0);
  const DoublePoint y = FlatPoint(space, 0.12, 0.01);
  const DoublePoint z = FlatPoint(space, 0.11, -0.02);
  const Strainer s = FrameStrainer(x, 0.25, 0.5, 0.05);
  const SmoothedChart c = SmoothedChart::Make(x, s, 0.01, 256, 5);
  const double h = 1e-4;
  const Eigen::MatrixXd pxy = TransportP(x, y, c, h).map.matrix;
  const Eigen::MatrixXd pyz = TransportP(y, z, c, h).map.matrix;
  const Eigen::MatrixXd pxz = TransportP(x, z, c, h).map.matrix;
  EXPECT_LE((pyz * pxy - pxz).norm(), 1e-9);
}

TEST(SphereMap, DirectionInASetMapsToItsAxis) {
  const ModelPoint o = Center(Curvature::kFlat, 3, 1);
  GlobalStrainer gs;
  gs.delta = 0.1;
  for (int i = 1; i <= 3; ++i) {
    gs.a_sets.push_back({MakeTangent(o, Basis(3, i))});
    gs.b_sets.push_back({MakeTangent(o, -Basis(3, i))});
  }
  const std::vector<Vec> psi = SphereMapPsi({MakeTangent(o, Basis(3, 1))}, gs);
  EXPECT_NEAR((psi[0] - Basis(2, 0)).norm(), 0.0, 1e-15);
}


TEST(Differential, RejectsDegenerateBasis) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.0, 0.0);
  std::vector<DoubleTangent> basis = Frame(x);
  basis[1] = basis[0];
  const PointMap field = [](const DoublePoint& p) -> Vec { return p.z.coords(); };
  EXPECT_THROW(EstimateDifferential(field, x, basis, 1e-3), Error);
  EXPECT_THROW(EstimateDifferential(field, x, Frame(x), 0.0), Error);
}

TEST(SphereMap, AxisStrainerIsValidAndPsiHasUnitNorm) {
  const ModelPoint o = Center(Curvature::kFlat, 3, 1);
  GlobalStrainer gs;
  gs.delta = 0.1;
  for (int i = 1; i <= 3; ++i) {
    gs.a_sets.push_back({MakeTangent(o, Basis(3, i))});
    gs.b_sets.push_back({MakeTangent(o, -Basis(3, i))});
  }
  const GlobalStrainCheck check = ValidateGlobalStrainer(gs);
  EXPECT_TRUE(check.valid);
  EXPECT_NEAR(check.worst, 0.1, 1e-12);
  Rng rng(8);
  std::vector<ModelTangent> dirs;
  for (int s = 0; s < 100; ++s) {
    Vec v(4);
    v << 0.0, rng.Normal(), rng.Normal(), rng.Normal();
    dirs.push_back(MakeTangent(o, v / v.norm()));
  }
  const std::vector<Vec> psi = SphereMapPsi(dirs, gs);
  for (std::size_t s = 0; s < psi.size(); ++s) {
    EXPECT_NEAR(psi[s].norm(), 1.0, 1e-12);
    // Positive orthant directions map to themselves.
    if ((dirs[s].vec.tail(3).array() > 0.0).all()) {
      EXPECT_NEAR((psi[s] - dirs[s].vec.tail(3)).norm(), 0.0, 1e-12);
    }
  }
}

TEST(SphereMap, RejectsDirectionOrthogonalToEverySet) {
  const ModelPoint o = Center(Curvature::kFlat, 2, 1);
  GlobalStrainer gs;
  gs.delta = 0.1;
  gs.a_sets.push_back({MakeTangent(o, Basis(2, 1))});
  gs.b_sets.push_back({MakeTangent(o, -Basis(2, 1))});
  try {
    SphereMapPsi({MakeTangent(o, Basis(2, 2))}, gs);
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateDirection);
  }
}

TEST(Hinge, OppositeSidesOfALine) {
  const DoubleDiskSpace space = Flat2();
  const DoublePoint x = FlatPoint(space, 0.0, 0.0);
  const DoublePoint z = FlatPoint(space, 0.3, 0.0);
  EXPECT_NEAR(HingeAngleDefect(x, z, FlatPoint(space, 0.0, 0.2),
                               FlatPoint(space, 0.0, -0.4)),
              0.0, 1e-7);
  EXPECT_NEAR(HingeAngleDefect(x, z, FlatPoint(space, 0.0, 0.2),
                               FlatPoint(space, 0.2, 0.2)),
              0.25 * kPi, 1e-7);
  EXPECT_THROW(HingeAngleDefect(x, x, z, z), Error);
}

TEST(Condition, OfDiagonal) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 4.0;
  m(1, 1) = 0.5;
  EXPECT_NEAR(ConditionNumber(m), 8.0, 1e-12);
  m(1, 1) = 0.0;
  EXPECT_TRUE(std::isinf(ConditionNumber(m)));
}

}  // namespace
}  // namespace crosscap
