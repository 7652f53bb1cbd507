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

//
// Strainers, distance charts and their ball-averaged smoothings, the sphere
// map, finite-difference differentials and chart transport maps.

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "crosscap/doubledisk.hpp"

namespace crosscap {

struct StrainerPair {
  DoublePoint a;
  DoublePoint b;
};

struct Strainer {
  std::vector<StrainerPair> pairs;
  double delta = 0.0;
  double radius = 0.0;

  // Throws kInvalidInput on empty pairs, mixed spaces or nonpositive params.
  static Strainer Make(std::vector<StrainerPair> pairs, double delta,
                       double radius);
  const DoubleDiskSpace& space() const { return pairs.front().a.space; }
};

// Pairs (DoubleExp(x, f_i, arm), DoubleExp(x, -f_i, arm)) for an orthonormal
// frame f tilted so that every f_i makes the same angle with the radial
// direction. Tilting keeps each arm from running along the seam.
Strainer FrameStrainer(const DoublePoint& x, double arm, double delta,
                       double radius);
std::vector<DoubleTangent> TiltedFrame(const DoublePoint& x);

struct StrainMargin {
  std::string label;  // "pair i", "ab i j", "aa i j", "bb i j", "dist"
  double slack = 0.0;
};

struct StrainCheck {
  bool strained = false;
  double worst = 0.0;
  std::vector<StrainMargin> margins;
};

// Evaluates every inequality of the strainer definition at x. Throws
// kUndefinedComparison when x coincides with a strainer point.
StrainCheck IsStrained(const DoublePoint& x, const Strainer& s);

struct NeighborhoodCheck {
  bool strained = false;
  double worst = 0.0;
  DoublePoint worst_at;
  int probes = 0;
};

// Probes are probe_count volume-uniform points of B(center, probe_radius)
// for every center, plus the centers themselves.
NeighborhoodCheck IsStrainedNeighborhood(const std::vector<DoublePoint>& centers,
                                         const Strainer& s, double probe_radius,
                                         int probe_count, std::uint64_t seed);

Vec DistanceChart(const DoublePoint& x, const Strainer& s);

class SmoothedChart {
 public:
  static constexpr int kMinSamples = 64;

  // Ball samples for every a_i are drawn once here, so evaluation is a
  // deterministic function of (chart, y).
  static SmoothedChart Make(const DoublePoint& base, const Strainer& strainer,
                            double eta, int sample_count, std::uint64_t seed);

  const DoublePoint& base() const { return base_; }
  const Strainer& strainer() const { return strainer_; }
  double eta() const { return eta_; }
  int sample_count() const { return sample_count_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<DoublePoint>& samples(int i) const { return samples_[i]; }

 private:
  DoublePoint base_;
  Strainer strainer_;
  double eta_ = 0.0;
  int sample_count_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::vector<DoublePoint>> samples_;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

McEstimate SmoothedCoordinate(const SmoothedChart& c, int i,
                              const DoublePoint& y);
Vec SmoothedChartMap(const SmoothedChart& c, const DoublePoint& y);

struct RatioRange {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int used = 0;
  int skipped = 0;  // coincident pairs
};

using PointMap = std::function<Vec(const DoublePoint&)>;
using PointPair = std::pair<DoublePoint, DoublePoint>;

RatioRange BiLipschitzEstimate(const PointMap& map,
                               const std::vector<PointPair>& pairs);

// Directions at a point, represented by unit tangents.
struct GlobalStrainer {
  std::vector<std::vector<ModelTangent>> a_sets;
  std::vector<std::vector<ModelTangent>> b_sets;
  double delta = 0.0;
};

struct GlobalStrainCheck {
  bool valid = false;
  double worst = 0.0;  // smallest slack over all displayed conditions
};
GlobalStrainCheck ValidateGlobalStrainer(const GlobalStrainer& gs);

std::vector<Vec> SphereMapPsi(const std::vector<ModelTangent>& directions,
                              const GlobalStrainer& gs);

struct LinearMapEstimate {
  Eigen::MatrixXd matrix;
  DoublePoint source_base;
  DoublePoint target_base;
  double step = 0.0;
};

// Default finite-difference step, relative to the disk radius.
inline constexpr double kRelativeStep = 1e-4;

// Column j is the derivative of field along basis[j]. Central differences
// at interior points; at seam points a second-order one-sided difference
// along each basis vector.
LinearMapEstimate EstimateDifferential(const PointMap& field,
                                       const DoublePoint& x,
                                       const std::vector<DoubleTangent>& basis,
                                       double h);

inline constexpr double kMaxCondition = 1e3;

struct TransportEstimate {
  LinearMapEstimate map;
  Eigen::VectorXd singular_values;
};

// (d chart)_y^{-1} (d chart)_x in orthonormal frames at x and y. Throws
// kNonInvertibleChart when either differential has condition > kMaxCondition.
TransportEstimate TransportP(const DoublePoint& x, const DoublePoint& y,
                             const SmoothedChart& c, double h);

double HingeAngleDefect(const DoublePoint& x, const DoublePoint& z,
                        const DoublePoint& y1, const DoublePoint& y2);

// Condition number of a square matrix from its singular values.
double ConditionNumber(const Eigen::MatrixXd& m);

}  // namespace crosscap
