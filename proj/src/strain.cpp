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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace crosscap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCoincide = 1e-12;

double Angle(Curvature k, double a, double b, double c) {
  return ComparisonAngle(k, a, b, c);
}

}  // namespace

Strainer Strainer::Make(std::vector<StrainerPair> pairs, double delta,
                        double radius) {
  Require(!pairs.empty(), ErrorCode::kInvalidInput, "strainer has no pairs");
  Require(delta > 0.0 && radius > 0.0, ErrorCode::kInvalidInput,
          "strainer delta and radius must be positive");
  const DoubleDiskSpace& space = pairs.front().a.space;
  for (const StrainerPair& p : pairs) {
    Require(p.a.space == space && p.b.space == space, ErrorCode::kInvalidInput,
            "strainer points belong to different spaces");
  }
  Strainer s;
  s.pairs = std::move(pairs);
  s.delta = delta;
  s.radius = radius;
  return s;
}

std::vector<DoubleTangent> TiltedFrame(const DoublePoint& x) {
  const Curvature k = x.space.k();
  const int n = x.space.n();
  std::vector<Vec> q;
  q.push_back(RadialTangent(x));
  for (int i = 0; i < n + 1 && static_cast<int>(q.size()) < n; ++i) {
    Vec v = ProjectToTangent(x.z, Basis(n, i));
    for (const Vec& w : q) v -= Inner(k, v, w) * w;
    const double len = TangentNorm(k, v);
    if (len > 1e-6) q.push_back(v / len);
  }
  Require(static_cast<int>(q.size()) == n, ErrorCode::kInconsistency,
          "tangent frame construction failed");
  // Householder reflection exchanging e_1 and (1, ..., 1)/sqrt(n).
  Eigen::MatrixXd house = Eigen::MatrixXd::Identity(n, n);
  if (n > 1) {
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(n));
    v[0] -= 1.0;
    house -= 2.0 * v * v.transpose() / v.squaredNorm();
  }
  std::vector<DoubleTangent> frame;
  for (int j = 0; j < n; ++j) {
    Vec f = Vec::Zero(n + 1);
    for (int i = 0; i < n; ++i) f += house(i, j) * q[i];
    frame.push_back(DoubleTangent{x, f / TangentNorm(k, f)});
  }
  return frame;
}

Strainer FrameStrainer(const DoublePoint& x, double arm, double delta,
                       double radius) {
  std::vector<StrainerPair> pairs;
  for (const DoubleTangent& f : TiltedFrame(x)) {
    const DoubleTangent back{x, -f.vec};
    pairs.push_back(StrainerPair{DoubleExp(f, arm), DoubleExp(back, arm)});
  }
  return Strainer::Make(std::move(pairs), delta, radius);
}

StrainCheck IsStrained(const DoublePoint& x, const Strainer& s) {
  Require(x.space == s.space(), ErrorCode::kInvalidInput,
          "point and strainer belong to different spaces");
  const Curvature k = x.space.k();
  const int m = static_cast<int>(s.pairs.size());
  std::vector<double> da(m), db(m);
  for (int i = 0; i < m; ++i) {
    da[i] = DoubleDist(x, s.pairs[i].a);
    db[i] = DoubleDist(x, s.pairs[i].b);
    Require(da[i] > kCoincide && db[i] > kCoincide,
            ErrorCode::kUndefinedComparison,
            "point coincides with a strainer point");
  }
  StrainCheck out;
  auto add = [&](std::string label, double slack) {
    out.margins.push_back(StrainMargin{std::move(label), slack});
  };
  const double right = 0.5 * kPi - s.delta;
  for (int i = 0; i < m; ++i) {
    const StrainerPair& pi = s.pairs[i];
    add("pair " + std::to_string(i),
        Angle(k, da[i], db[i], DoubleDist(pi.a, pi.b)) - (kPi - s.delta));
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const StrainerPair& pj = s.pairs[j];
      const std::string ij = std::to_string(i) + " " + std::to_string(j);
      add("ab " + ij, Angle(k, da[i], db[j], DoubleDist(pi.a, pj.b)) - right);
      if (j > i) {
        add("aa " + ij, Angle(k, da[i], da[j], DoubleDist(pi.a, pj.a)) - right);
        add("bb " + ij, Angle(k, db[i], db[j], DoubleDist(pi.b, pj.b)) - right);
      }
    }
  }
  const double nearest = std::min(*std::min_element(da.begin(), da.end()),
                                  *std::min_element(db.begin(), db.end()));
  add("dist", nearest - s.radius);
  out.worst = std::numeric_limits<double>::infinity();
  for (const StrainMargin& mg : out.margins) out.worst = std::min(out.worst, mg.slack);
  out.strained = out.worst > 0.0;
  return out;
}

NeighborhoodCheck IsStrainedNeighborhood(const std::vector<DoublePoint>& centers,
                                         const Strainer& s, double probe_radius,
                                         int probe_count, std::uint64_t seed) {
  Require(probe_count >= 1, ErrorCode::kInvalidInput, "need at least one probe");
  NeighborhoodCheck out;
  out.worst = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (std::size_t c = 0; c < centers.size(); ++c) {
    std::vector<DoublePoint> probes{centers[c]};
    if (probe_radius > 0.0) {
      Rng local = rng.Split(c);
      for (DoublePoint& p : SampleBall(centers[c], probe_radius, probe_count, local)) {
        probes.push_back(std::move(p));
      }
    }
    for (const DoublePoint& p : probes) {
      const StrainCheck check = IsStrained(p, s);
      ++out.probes;
      if (check.worst < out.worst) {
        out.worst = check.worst;
        out.worst_at = p;
      }
    }
  }
  out.strained = out.worst > 0.0;
  return out;
}

Vec DistanceChart(const DoublePoint& x, const Strainer& s) {
  Vec out(s.pairs.size());
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    out[i] = DoubleDist(s.pairs[i].a, x);
  }
  return out;
}

SmoothedChart SmoothedChart::Make(const DoublePoint& base,
                                  const Strainer& strainer, double eta,
                                  int sample_count, std::uint64_t seed) {
  Require(eta > 0.0, ErrorCode::kInvalidInput, "eta must be positive");
  Require(sample_count >= kMinSamples, ErrorCode::kInvalidInput,
          "smoothed chart needs at least 64 samples");
  SmoothedChart c;
  c.base_ = base;
  c.strainer_ = strainer;
  c.eta_ = eta;
  c.sample_count_ = sample_count;
  c.seed_ = seed;
  const Rng root(seed);
  for (std::size_t i = 0; i < strainer.pairs.size(); ++i) {
    Rng rng = root.Split(i);
    c.samples_.push_back(
        SampleBall(strainer.pairs[i].a, eta, sample_count, rng));
  }
  return c;
}

McEstimate SmoothedCoordinate(const SmoothedChart& c, int i,
                              const DoublePoint& y) {
  const std::vector<DoublePoint>& zs = c.samples(i);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const DoublePoint& z : zs) {
    const double d = DoubleDist(y, z);
    sum += d;
    sum_sq += d * d;
  }
  const double count = static_cast<double>(zs.size());
  const double mean = sum / count;
  const double var = std::max(0.0, sum_sq / count - mean * mean);
  return McEstimate{mean, std::sqrt(var / (count - 1.0))};
}

Vec SmoothedChartMap(const SmoothedChart& c, const DoublePoint& y) {
  const int m = static_cast<int>(c.strainer().pairs.size());
  Vec out(m);
  for (int i = 0; i < m; ++i) out[i] = SmoothedCoordinate(c, i, y).value;
  return out;
}

RatioRange BiLipschitzEstimate(const PointMap& map,
                               const std::vector<PointPair>& pairs) {
  RatioRange out;
  out.min_ratio = std::numeric_limits<double>::infinity();
  out.max_ratio = 0.0;
  for (const PointPair& p : pairs) {
    const double d = DoubleDist(p.first, p.second);
    if (d <= kCoincide) {
      ++out.skipped;
      continue;
    }
    const double ratio = (map(p.first) - map(p.second)).norm() / d;
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
    ++out.used;
  }
  return out;
}

GlobalStrainCheck ValidateGlobalStrainer(const GlobalStrainer& gs) {
  Require(gs.a_sets.size() == gs.b_sets.size() && !gs.a_sets.empty(),
          ErrorCode::kInvalidInput, "global strainer needs matching set pairs");
  const std::size_t m = gs.a_sets.size();
  double worst = std::numeric_limits<double>::infinity();
  auto near_right = [&](const ModelTangent& u, const ModelTangent& v) {
    worst = std::min(worst, gs.delta - std::abs(AngleBetween(u, v) - 0.5 * kPi));
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (const ModelTangent& a : gs.a_sets[i]) {
      for (const ModelTangent& b : gs.b_sets[i]) {
        worst = std::min(worst, AngleBetween(a, b) - (kPi - gs.delta));
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      for (const ModelTangent& a : gs.a_sets[i]) {
        for (const ModelTangent& b : gs.b_sets[j]) near_right(a, b);
      }
      if (j < i) continue;
      for (const ModelTangent& a : gs.a_sets[i]) {
        for (const ModelTangent& a2 : gs.a_sets[j]) near_right(a, a2);
      }
      for (const ModelTangent& b : gs.b_sets[i]) {
        for (const ModelTangent& b2 : gs.b_sets[j]) near_right(b, b2);
      }
    }
  }
  return GlobalStrainCheck{worst > 0.0, worst};
}

std::vector<Vec> SphereMapPsi(const std::vector<ModelTangent>& directions,
                              const GlobalStrainer& gs) {
  const std::size_t m = gs.a_sets.size();
  std::vector<Vec> out;
  out.reserve(directions.size());
  for (const ModelTangent& v : directions) {
    Vec c(m);
    for (std::size_t i = 0; i < m; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const ModelTangent& a : gs.a_sets[i]) {
        best = std::min(best, AngleBetween(a, v));
      }
      c[i] = std::cos(best);
    }
    const double len = c.norm();
    Require(len > 1e-12, ErrorCode::kDegenerateDirection,
            "every set is at distance pi/2 from the direction");
    out.push_back(c / len);
  }
  return out;
}

LinearMapEstimate EstimateDifferential(const PointMap& field,
                                       const DoublePoint& x,
                                       const std::vector<DoubleTangent>& basis,
                                       double h) {
  Require(h > 0.0, ErrorCode::kInvalidInput, "difference step must be > 0");
  Require(!basis.empty(), ErrorCode::kInvalidInput, "empty basis");
  const Curvature k = x.space.k();
  const int cols = static_cast<int>(basis.size());
  {
    Eigen::MatrixXd gram(cols, cols);
    for (int i = 0; i < cols; ++i) {
      for (int j = 0; j < cols; ++j) {
        gram(i, j) = Inner(k, basis[i].vec, basis[j].vec);
      }
    }
    Require(gram.determinant() >= 0.5, ErrorCode::kInvalidInput,
            "difference basis is badly conditioned");
  }
  const bool seam = OnSeam(x);
  Vec f0;
  if (seam) f0 = field(x);
  Eigen::MatrixXd jac;
  for (int j = 0; j < cols; ++j) {
    Vec column;
    if (seam) {
      const Vec f1 = field(DoubleExp(basis[j], h));
      const Vec f2 = field(DoubleExp(basis[j], 2.0 * h));
      column = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
    } else {
      const DoubleTangent back{basis[j].base, -basis[j].vec};
      column = (field(DoubleExp(basis[j], h)) - field(DoubleExp(back, h))) /
               (2.0 * h);
    }
    if (j == 0) jac.resize(column.size(), cols);
    for (int i = 0; i < column.size(); ++i) jac(i, j) = column[i];
  }
  return LinearMapEstimate{std::move(jac), x, x, h};
}

double ConditionNumber(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  if (s.size() == 0 || s[s.size() - 1] <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return s[0] / s[s.size() - 1];
}

TransportEstimate TransportP(const DoublePoint& x, const DoublePoint& y,
                             const SmoothedChart& c, double h) {
  const PointMap chart = [&c](const DoublePoint& p) { return SmoothedChartMap(c, p); };
  const LinearMapEstimate cx = EstimateDifferential(chart, x, Frame(x), h);
  const LinearMapEstimate cy = EstimateDifferential(chart, y, Frame(y), h);
  Require(cx.matrix.rows() == cx.matrix.cols(), ErrorCode::kInvalidInput,
          "chart dimension differs from the space dimension");
  Require(ConditionNumber(cx.matrix) <= kMaxCondition &&
              ConditionNumber(cy.matrix) <= kMaxCondition,
          ErrorCode::kNonInvertibleChart, "chart differential is singular");
  TransportEstimate out;
  out.map.matrix = cy.matrix.partialPivLu().solve(cx.matrix);
  out.map.source_base = x;
  out.map.target_base = y;
  out.map.step = h;
  out.singular_values = Eigen::JacobiSVD<Eigen::MatrixXd>(out.map.matrix).singularValues();
  return out;
}

double HingeAngleDefect(const DoublePoint& x, const DoublePoint& z,
                        const DoublePoint& y1, const DoublePoint& y2) {
  const Curvature k = x.space.k();
  const double xz = DoubleDist(x, z);
  Require(xz > kCoincide, ErrorCode::kUndefinedComparison,
          "hinge defect needs z != x");
  const double a1 = Angle(k, DoubleDist(x, y1), xz, DoubleDist(y1, z));
  const double a2 = Angle(k, DoubleDist(x, y2), xz, DoubleDist(y2, z));
  return std::abs(a1 + a2 - kPi);
}

}  // namespace crosscap
