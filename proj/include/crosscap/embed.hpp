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
// The equivariant model embedding Phi = (f_0, ..., f_n) of the double disk,
// its ball-averaged version, and numerical immersion certificates.

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "crosscap/doubledisk.hpp"
#include "crosscap/strain.hpp"

namespace crosscap {

double HK(Curvature k, double r, double t);
double HKPrime(Curvature k, double r, double t);
// 2 sup_{[0, 2r]} |h_k'|, the Lipschitz constant of z -> f_z(x).
double LipschitzBound(Curvature k, double r);

// p_0 = center of the plus half; p_i (i >= 1) on the seam.
std::vector<DoublePoint> StrainerPoints(const DoubleDiskSpace& space);

double FZ(const DoublePoint& z, const DoublePoint& x);
Vec Phi(const DoubleDiskSpace& space, const DoublePoint& x);

struct EmbeddingConfig {
  DoubleDiskSpace space;
  double d = 0.0;
  double eta = 0.0;
  int sample_count = 4096;
  std::uint64_t seed = 0;
  std::vector<DoublePoint> points;

  // Defaults d = r/50, eta = r/100 when d or eta is nonpositive.
  static EmbeddingConfig Make(const DoubleDiskSpace& space, double d,
                              double eta, int sample_count, std::uint64_t seed);
};

// Mean and standard error of h(dist(Az, x)) - h(dist(z, x)) over paired
// samples z[s], az[s]. Works for any point type with a distance callable.
template <class Point, class Dist>
McEstimate SmoothedFOver(Curvature k, double r, const std::vector<Point>& z,
                         const std::vector<Point>& az, const Point& x,
                         Dist&& dist) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < z.size(); ++s) {
    const double v = HK(k, r, dist(az[s], x)) - HK(k, r, dist(z[s], x));
    sum += v;
    sum_sq += v * v;
  }
  const double count = static_cast<double>(z.size());
  const double mean = sum / count;
  const double var = sum_sq / count - mean * mean;
  return McEstimate{mean, count > 1 ? std::sqrt(std::max(0.0, var) / (count - 1))
                                    : 0.0};
}

// Phi_d with its ball samples drawn once from the config seed.
class SmoothedEmbedding {
 public:
  explicit SmoothedEmbedding(const EmbeddingConfig& cfg);

  const EmbeddingConfig& config() const { return cfg_; }
  const DoubleDiskSpace& space() const { return cfg_.space; }
  const std::vector<DoublePoint>& samples(int i) const { return z_[i]; }

  McEstimate SmoothedF(int i, const DoublePoint& x) const;
  Vec PhiD(const DoublePoint& x) const;

 private:
  EmbeddingConfig cfg_;
  std::vector<std::vector<DoublePoint>> z_;
  std::vector<std::vector<DoublePoint>> az_;
};

struct AddendumCheck {
  int near_samples = 0;
  // Smallest max_{j != m} |D_v f_{j,d}| over samples near p_m or A(p_m).
  double worst_avoiding = 0.0;
  bool holds = true;
};

struct LambdaReport {
  double lambda_est = 0.0;
  std::vector<int> witness;     // argmax index per sample
  std::vector<double> best;     // max_j |D_v f_{j,d}| per sample
  AddendumCheck addendum;
};

// Radius of the neighborhoods of p_k and A(p_k) where the index rule
// switches, as a multiple of d.
inline constexpr double kNearBaseFactor = 5.0;

LambdaReport LowerBoundLambda(const SmoothedEmbedding& emb,
                              const std::vector<DoubleTangent>& sample,
                              double h);

// Index k >= 1 with dist(x, p_k) or dist(x, A p_k) below the near-base
// radius, or -1.
int NearBaseIndex(const SmoothedEmbedding& emb, const DoublePoint& x);

struct CertificateOptions {
  // Radii tried largest first, as multiples of r.
  std::vector<double> rho_grid = {1.0 / 8,   1.0 / 16,  1.0 / 32,  1.0 / 64,
                                  1.0 / 128, 1.0 / 256, 1.0 / 512, 1.0 / 1024};
  int probes = 6;
  int chart_samples = 64;
  double arm = 0.25;        // strainer arm, multiple of r
  double chart_delta = 0.5; // strainer delta recorded in charts
  // Certificates accept wobble below safety * lambda/2, leaving room for the
  // fresh probes of the injectivity recheck.
  double safety = 0.5;
  double h = 0.0;           // difference step; 0 selects kRelativeStep * r
};

// Chart at x used by the certificate machinery: the frame strainer with
// the configured arm, smoothed at scale eta.
SmoothedChart CertificateChart(const SmoothedEmbedding& emb,
                               const DoublePoint& x,
                               const CertificateOptions& opts,
                               std::uint64_t seed);

// dF at y for F = Phi_d o chart^{-1}: an (n+1) x n matrix acting on chart
// coordinates. Throws kNonInvertibleChart for a singular chart differential.
Eigen::MatrixXd ChartDifferential(const SmoothedEmbedding& emb,
                                  const SmoothedChart& chart,
                                  const DoublePoint& y, double h);

Eigen::MatrixXd DropRow(const Eigen::MatrixXd& m, int row);
double MinSingular(const Eigen::MatrixXd& m);
double SpectralNorm(const Eigen::MatrixXd& m);

struct ModulusTable {
  std::vector<double> per_component;  // max row norm of dF_y - dF_x
  double projected = 0.0;             // spectral norm with `dropped` removed
  int dropped = -1;
  int probes = 0;
};

ModulusTable EquicontinuityModulus(const SmoothedEmbedding& emb,
                                   const SmoothedChart& chart,
                                   const DoublePoint& x, double rho,
                                   int probe_count, double h,
                                   std::uint64_t seed, int dropped = -1);

struct ImmersionCertificate {
  DoublePoint basepoint;
  int index = 0;           // dropped coordinate
  double lambda = 0.0;     // smallest singular value of P_index dF_x
  double rho = 0.0;
  double wobble = 0.0;     // max spectral norm of P_index (dF_y - dF_x)
  std::vector<double> lambdas;  // per candidate index
  int near_base = -1;
  int probes = 0;
  std::uint64_t seed = 0;
};

ImmersionCertificate Certify(const SmoothedEmbedding& emb, const DoublePoint& x,
                             const CertificateOptions& opts, std::uint64_t seed);

struct InjectivityCheck {
  bool hypotheses = false;
  bool injective = false;
  double worst_ratio = 0.0;  // min |P(F(a) - F(b))| / |a - b|
  int pairs = 0;
};

// Re-verifies the immersion hypotheses for lambda on fresh probes, then tests
// separation on sampled pairs. Throws kInconsistency when the hypotheses
// hold but a pair separates by less than lambda/2.
InjectivityCheck QuantitativeInjectivityCheck(const SmoothedEmbedding& emb,
                                              const ImmersionCertificate& cert,
                                              double lambda,
                                              const CertificateOptions& opts,
                                              int pair_count, std::uint64_t seed);

struct ScanResult {
  double min_separation = 0.0;
  long pairs = 0;
  int worst_a = -1;
  int worst_b = -1;
};

// Minimum |Phi_d(x) - Phi_d(y)| over net pairs with dist(x, y) > nu.
ScanResult InjectivityScan(const SmoothedEmbedding& emb,
                           const std::vector<DoublePoint>& net, double nu);
ScanResult InjectivityScanValues(const std::vector<DoublePoint>& net,
                                 const std::vector<Vec>& values, double nu);

}  // namespace crosscap
