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

#include "crosscap/embed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "crosscap/kernels.hpp"

namespace crosscap {
namespace {

double StepFor(const SmoothedEmbedding& emb, const CertificateOptions& opts) {
  return opts.h > 0.0 ? opts.h : kRelativeStep * emb.space().r();
}

std::vector<Eigen::MatrixXd> ProbeDifferentials(
    const SmoothedEmbedding& emb, const SmoothedChart& chart,
    const std::vector<DoublePoint>& probes, double h) {
  return MapIndex<Eigen::MatrixXd>(
      DefaultExec(), static_cast<int>(probes.size()),
      [&](int p) { return ChartDifferential(emb, chart, probes[p], h); });
}

// Random probes, followed by radial ones when the ball reaches the seam:
// the derivatives switch in a thin layer there that random probes miss.
std::vector<DoublePoint> Probes(const DoublePoint& x, double rho, int count,
                                Rng rng) {
  std::vector<DoublePoint> out = SampleBall(x, rho, count, rng);
  const PolarCoords p = Polar(x);
  if (p.t + rho <= x.space.r() || p.t < 1e-9) return out;
  const DoubleTangent out_dir{x, RadialTangent(x)};
  for (double f : {0.25, 0.5, 0.75, 0.95}) out.push_back(DoubleExp(out_dir, f * rho));
  return out;
}

}  // namespace

double HK(Curvature k, double r, double t) {
  switch (k) {
    case Curvature::kHyperbolic:
      return std::cosh(t) / (2.0 * std::sinh(r));
    case Curvature::kFlat:
      return t * t / (4.0 * r);
    case Curvature::kSpherical:
      return std::cos(t) / (2.0 * std::sin(r));
  }
  return 0.0;
}

double HKPrime(Curvature k, double r, double t) {
  switch (k) {
    case Curvature::kHyperbolic:
      return std::sinh(t) / (2.0 * std::sinh(r));
    case Curvature::kFlat:
      return t / (2.0 * r);
    case Curvature::kSpherical:
      return -std::sin(t) / (2.0 * std::sin(r));
  }
  return 0.0;
}

double LipschitzBound(Curvature k, double r) {
  // |h'| is increasing on [0, 2r] except for sin past pi/2.
  if (k == Curvature::kSpherical && 2.0 * r >= 0.5 * std::numbers::pi) {
    return 1.0 / std::sin(r);
  }
  return 2.0 * std::abs(HKPrime(k, r, 2.0 * r));
}

std::vector<DoublePoint> StrainerPoints(const DoubleDiskSpace& space) {
  const int n = space.n();
  std::vector<DoublePoint> p{CenterPoint(space, Half::kPlus)};
  const double sign = space.k() == Curvature::kSpherical ? -1.0 : 1.0;
  for (int i = 1; i <= n; ++i) {
    p.push_back(SeamPoint(space, Vec(sign * Basis(n, i).tail(n)), Half::kPlus));
  }
  return p;
}

double FZ(const DoublePoint& z, const DoublePoint& x) {
  const Curvature k = x.space.k();
  const double r = x.space.r();
  return HK(k, r, DoubleDist(Involution(z), x)) - HK(k, r, DoubleDist(z, x));
}

Vec Phi(const DoubleDiskSpace& space, const DoublePoint& x) {
  const std::vector<DoublePoint> p = StrainerPoints(space);
  Vec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = FZ(p[i], x);
  return out;
}

EmbeddingConfig EmbeddingConfig::Make(const DoubleDiskSpace& space, double d,
                                      double eta, int sample_count,
                                      std::uint64_t seed) {
  EmbeddingConfig cfg;
  cfg.space = space;
  cfg.d = d > 0.0 ? d : space.r() / 50.0;
  cfg.eta = eta > 0.0 ? eta : space.r() / 100.0;
  cfg.sample_count = sample_count;
  cfg.seed = seed;
  Require(cfg.d < space.r() / 10.0, ErrorCode::kInvalidInput,
          "averaging radius d must be below r/10");
  Require(sample_count >= 1, ErrorCode::kInvalidInput,
          "sample count must be positive");
  cfg.points = StrainerPoints(space);
  return cfg;
}

SmoothedEmbedding::SmoothedEmbedding(const EmbeddingConfig& cfg) : cfg_(cfg) {
  const Rng root(cfg.seed);
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    Rng rng = root.Split(i);
    std::vector<DoublePoint> zs =
        SampleBall(cfg.points[i], cfg.d, cfg.sample_count, rng);
    std::vector<DoublePoint> azs;
    azs.reserve(zs.size());
    for (const DoublePoint& z : zs) azs.push_back(Involution(z));
    z_.push_back(std::move(zs));
    az_.push_back(std::move(azs));
  }
}

McEstimate SmoothedEmbedding::SmoothedF(int i, const DoublePoint& x) const {
  return SmoothedFOver(space().k(), space().r(), z_[i], az_[i], x,
                       [](const DoublePoint& a, const DoublePoint& b) {
                         return DoubleDist(a, b);
                       });
}

Vec SmoothedEmbedding::PhiD(const DoublePoint& x) const {
  Vec out(z_.size());
  for (std::size_t i = 0; i < z_.size(); ++i) {
    out[i] = SmoothedF(static_cast<int>(i), x).value;
  }
  return out;
}

int NearBaseIndex(const SmoothedEmbedding& emb, const DoublePoint& x) {
  const EmbeddingConfig& cfg = emb.config();
  const double eps = kNearBaseFactor * cfg.d;
  for (std::size_t m = 1; m < cfg.points.size(); ++m) {
    const DoublePoint& p = cfg.points[m];
    if (DoubleDistLowerBound(x, p) < eps && DoubleDist(x, p) < eps) {
      return static_cast<int>(m);
    }
    const DoublePoint ap = Involution(p);
    if (DoubleDistLowerBound(x, ap) < eps && DoubleDist(x, ap) < eps) {
      return static_cast<int>(m);
    }
  }
  return -1;
}

LambdaReport LowerBoundLambda(const SmoothedEmbedding& emb,
                              const std::vector<DoubleTangent>& sample,
                              double h) {
  Require(!sample.empty(), ErrorCode::kInvalidInput, "empty lambda sample");
  const PointMap field = [&emb](const DoublePoint& p) { return emb.PhiD(p); };
  struct Row {
    Eigen::VectorXd derivative;
    int near = -1;
  };
  const std::vector<Row> rows = MapIndex<Row>(
      DefaultExec(), static_cast<int>(sample.size()), [&](int s) {
        const LinearMapEstimate d =
            EstimateDifferential(field, sample[s].base, {sample[s]}, h);
        return Row{d.matrix.col(0), NearBaseIndex(emb, sample[s].base)};
      });
  LambdaReport out;
  out.lambda_est = std::numeric_limits<double>::infinity();
  out.addendum.worst_avoiding = std::numeric_limits<double>::infinity();
  for (const Row& row : rows) {
    const Eigen::VectorXd a = row.derivative.cwiseAbs();
    Eigen::Index j = 0;
    out.best.push_back(a.maxCoeff(&j));
    out.witness.push_back(static_cast<int>(j));
    out.lambda_est = std::min(out.lambda_est, out.best.back());
    if (row.near >= 0) {
      double avoid = 0.0;
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (i != row.near) avoid = std::max(avoid, a[i]);
      }
      ++out.addendum.near_samples;
      out.addendum.worst_avoiding = std::min(out.addendum.worst_avoiding, avoid);
    }
  }
  if (out.addendum.near_samples == 0) out.addendum.worst_avoiding = 0.0;
  out.addendum.holds =
      out.addendum.near_samples == 0 || out.addendum.worst_avoiding > 0.0;
  return out;
}

SmoothedChart CertificateChart(const SmoothedEmbedding& emb,
                               const DoublePoint& x,
                               const CertificateOptions& opts,
                               std::uint64_t seed) {
  const double r = emb.space().r();
  const double arm = opts.arm * r;
  const Strainer s = FrameStrainer(x, arm, opts.chart_delta, 0.5 * arm);
  return SmoothedChart::Make(x, s, emb.config().eta, opts.chart_samples, seed);
}

Eigen::MatrixXd ChartDifferential(const SmoothedEmbedding& emb,
                                  const SmoothedChart& chart,
                                  const DoublePoint& y, double h) {
  const std::vector<DoubleTangent> basis = Frame(y);
  const PointMap phi = [&emb](const DoublePoint& p) { return emb.PhiD(p); };
  const PointMap coords = [&chart](const DoublePoint& p) {
    return SmoothedChartMap(chart, p);
  };
  const Eigen::MatrixXd j = EstimateDifferential(phi, y, basis, h).matrix;
  const Eigen::MatrixXd c = EstimateDifferential(coords, y, basis, h).matrix;
  Require(ConditionNumber(c) <= kMaxCondition, ErrorCode::kNonInvertibleChart,
          "chart differential is singular");
  // J C^{-1}, via the transposed solve C^T X^T = J^T.
  return c.transpose().partialPivLu().solve(j.transpose()).transpose();
}

Eigen::MatrixXd DropRow(const Eigen::MatrixXd& m, int row) {
  if (row < 0) return m;
  Eigen::MatrixXd out(m.rows() - 1, m.cols());
  for (Eigen::Index i = 0, o = 0; i < m.rows(); ++i) {
    if (i != row) out.row(o++) = m.row(i);
  }
  return out;
}

double MinSingular(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  return s.size() == 0 ? 0.0 : s[s.size() - 1];
}

double SpectralNorm(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  return s.size() == 0 ? 0.0 : s[0];
}

ModulusTable EquicontinuityModulus(const SmoothedEmbedding& emb,
                                   const SmoothedChart& chart,
                                   const DoublePoint& x, double rho,
                                   int probe_count, double h,
                                   std::uint64_t seed, int dropped) {
  const Eigen::MatrixXd dx = ChartDifferential(emb, chart, x, h);
  const std::vector<DoublePoint> probes = Probes(x, rho, probe_count, Rng(seed));
  const std::vector<Eigen::MatrixXd> dy = ProbeDifferentials(emb, chart, probes, h);
  ModulusTable out;
  out.per_component.assign(dx.rows(), 0.0);
  out.dropped = dropped;
  out.probes = static_cast<int>(probes.size());
  for (const Eigen::MatrixXd& d : dy) {
    const Eigen::MatrixXd diff = d - dx;
    for (Eigen::Index j = 0; j < diff.rows(); ++j) {
      out.per_component[j] = std::max(out.per_component[j], diff.row(j).norm());
    }
    out.projected = std::max(out.projected, SpectralNorm(DropRow(diff, dropped)));
  }
  return out;
}

ImmersionCertificate Certify(const SmoothedEmbedding& emb, const DoublePoint& x,
                             const CertificateOptions& opts, std::uint64_t seed) {
  const double h = StepFor(emb, opts);
  const double r = emb.space().r();
  const Rng root(seed);
  const SmoothedChart chart = CertificateChart(emb, x, opts, root.Split(0).NextU64());
  const Eigen::MatrixXd dx = ChartDifferential(emb, chart, x, h);
  const int rows = static_cast<int>(dx.rows());

  ImmersionCertificate cert;
  cert.basepoint = x;
  cert.seed = seed;
  cert.near_base = NearBaseIndex(emb, x);
  for (int i = 0; i < rows; ++i) cert.lambdas.push_back(MinSingular(DropRow(dx, i)));

  std::vector<int> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cert.lambdas[a] > cert.lambdas[b];
  });
  if (cert.near_base >= 0) {
    std::stable_partition(order.begin(), order.end(),
                          [&](int i) { return i == cert.near_base; });
  }

  std::ostringstream tried;
  for (std::size_t level = 0; level < opts.rho_grid.size(); ++level) {
    const double rho = opts.rho_grid[level] * r;
    const std::vector<DoublePoint> probes =
        Probes(x, rho, opts.probes, root.Split(level + 1));
    const std::vector<Eigen::MatrixXd> dy = ProbeDifferentials(emb, chart, probes, h);
    cert.probes += static_cast<int>(probes.size());
    for (int i : order) {
      if (!(cert.lambdas[i] > 0.0)) continue;
      double wobble = 0.0;
      for (const Eigen::MatrixXd& d : dy) {
        wobble = std::max(wobble, SpectralNorm(DropRow(d - dx, i)));
      }
      if (wobble < opts.safety * 0.5 * cert.lambdas[i]) {
        cert.index = i;
        cert.lambda = cert.lambdas[i];
        cert.rho = rho;
        cert.wobble = wobble;
        return cert;
      }
      tried << " rho=" << rho << " i=" << i << " lambda=" << cert.lambdas[i]
            << " wobble=" << wobble << ";";
    }
  }
  Fail(ErrorCode::kCertificateFailure, "no index certifies:" + tried.str());
}

InjectivityCheck QuantitativeInjectivityCheck(const SmoothedEmbedding& emb,
                                              const ImmersionCertificate& cert,
                                              double lambda,
                                              const CertificateOptions& opts,
                                              int pair_count, std::uint64_t seed) {
  const double h = StepFor(emb, opts);
  const Rng root(cert.seed);
  const SmoothedChart chart =
      CertificateChart(emb, cert.basepoint, opts, root.Split(0).NextU64());
  const Eigen::MatrixXd dx = ChartDifferential(emb, chart, cert.basepoint, h);
  const int i = cert.index;

  InjectivityCheck out;
  out.hypotheses = MinSingular(DropRow(dx, i)) >= lambda;
  Rng rng(seed);
  if (out.hypotheses) {
    const std::vector<DoublePoint> probes =
        Probes(cert.basepoint, cert.rho, opts.probes, rng.Split(0));
    for (const Eigen::MatrixXd& d : ProbeDifferentials(emb, chart, probes, h)) {
      if (SpectralNorm(DropRow(d - dx, i)) >= 0.5 * lambda) out.hypotheses = false;
    }
  }

  const std::vector<DoublePoint> pts =
      Probes(cert.basepoint, cert.rho, 2 * pair_count, rng.Split(1));
  struct Sep {
    double in = 0.0;
    double out = 0.0;
  };
  const std::vector<Sep> seps = MapIndex<Sep>(DefaultExec(), pair_count, [&](int p) {
    const DoublePoint& a = pts[2 * p];
    const DoublePoint& b = pts[2 * p + 1];
    const Vec ca = SmoothedChartMap(chart, a);
    const Vec cb = SmoothedChartMap(chart, b);
    Eigen::VectorXd fa = emb.PhiD(a);
    Eigen::VectorXd fb = emb.PhiD(b);
    fa[i] = 0.0;
    fb[i] = 0.0;
    return Sep{(ca - cb).norm(), (fa - fb).norm()};
  });
  out.worst_ratio = std::numeric_limits<double>::infinity();
  for (const Sep& s : seps) {
    if (s.in <= 1e-6) continue;
    ++out.pairs;
    out.worst_ratio = std::min(out.worst_ratio, s.out / s.in);
  }
  out.injective = out.pairs == 0 || out.worst_ratio >= 0.5 * lambda;
  if (out.hypotheses && !out.injective) {
    std::ostringstream msg;
    msg << "hypotheses hold but separation ratio " << out.worst_ratio
        << " < lambda/2 = " << 0.5 * lambda;
    Fail(ErrorCode::kInconsistency, msg.str());
  }
  return out;
}

ScanResult InjectivityScanValues(const std::vector<DoublePoint>& net,
                                 const std::vector<Vec>& values, double nu) {
  Require(nu > 0.0, ErrorCode::kInvalidInput, "nu must be positive");
  const PairMin m = MinOverPairs(
      DefaultExec(), static_cast<int>(net.size()),
      [&](int a, int b) {
        return DoubleDistLowerBound(net[a], net[b]) > nu ||
               DoubleDist(net[a], net[b]) > nu;
      },
      [&](int a, int b) { return (values[a] - values[b]).norm(); });
  return ScanResult{m.value, m.pairs, m.i, m.j};
}

ScanResult InjectivityScan(const SmoothedEmbedding& emb,
                           const std::vector<DoublePoint>& net, double nu) {
  const std::vector<Vec> values = MapIndex<Vec>(
      DefaultExec(), static_cast<int>(net.size()),
      [&](int i) { return emb.PhiD(net[i]); });
  return InjectivityScanValues(net, values, nu);
}

}  // namespace crosscap
