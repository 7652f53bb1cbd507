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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "crosscap/error.hpp"
#include "crosscap/rng.hpp"

namespace crosscap {
namespace {

struct Desk {
  int k;
  int n;
  double r;
};

class EmbedTest : public ::testing::TestWithParam<Desk> {
 protected:
  DoubleDiskSpace Space() const {
    const Desk d = GetParam();
    return DoubleDiskSpace::Make(CurvatureFromInt(d.k), d.n, d.r);
  }
};

TEST_P(EmbedTest, PhiRecoversSeamCoordinates) {
  const DoubleDiskSpace space = Space();
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const DoublePoint x = RandomPoint(space, rng);
    const Vec phi = Phi(space, x);
    ASSERT_EQ(phi.size(), space.n() + 1);
    for (int j = 1; j <= space.n(); ++j) EXPECT_NEAR(phi[j], x.z[j], 1e-12);
    EXPECT_NEAR((Phi(space, Involution(x)) + phi).norm(), 0.0, 1e-12);
  }
}

TEST_P(EmbedTest, HeightFunctionDerivative) {
  const DoubleDiskSpace space = Space();
  const Curvature k = space.k();
  const double r = space.r();
  double worst = 0.0;
  for (int i = 1; i < 20; ++i) {
    const double t = 2.0 * r * i / 20.0;
    const double fd = (HK(k, r, t + 1e-6) - HK(k, r, t - 1e-6)) / 2e-6;
    EXPECT_NEAR(HKPrime(k, r, t), fd, 1e-7);
    worst = std::max(worst, 2.0 * std::abs(HKPrime(k, r, t)));
  }
  EXPECT_LE(worst, LipschitzBound(k, r) + 1e-12);
}

TEST_P(EmbedTest, FzIsAntisymmetricAndLipschitz) {
  const DoubleDiskSpace space = Space();
  const double lip = LipschitzBound(space.k(), space.r());
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const DoublePoint z = RandomPoint(space, rng);
    const DoublePoint x = RandomPoint(space, rng);
    const DoublePoint y = RandomPoint(space, rng);
    EXPECT_NEAR(FZ(Involution(z), x), -FZ(z, x), 1e-12);
    EXPECT_LE(std::abs(FZ(z, x) - FZ(z, y)), lip * DoubleDist(x, y) + 1e-12);
  }
}

TEST_P(EmbedTest, StrainerPointLayout) {
  const DoubleDiskSpace space = Space();
  const std::vector<DoublePoint> p = StrainerPoints(space);
  ASSERT_EQ(static_cast<int>(p.size()), space.n() + 1);
  EXPECT_TRUE(SamePoint(p[0], CenterPoint(space, Half::kPlus)));
  // h decreases on the sphere, so the seam points flip to keep f_i = x_i.
  const double sign = space.k() == Curvature::kSpherical ? -1.0 : 1.0;
  for (int i = 1; i <= space.n(); ++i) {
    EXPECT_TRUE(OnSeam(p[i]));
    EXPECT_NEAR(Polar(p[i]).dir[i - 1], sign, 1e-12);
  }
}

TEST_P(EmbedTest, SmoothedEmbeddingIsEquivariantAndDeterministic) {
  const DoubleDiskSpace space = Space();
  const EmbeddingConfig cfg = EmbeddingConfig::Make(space, 0.0, 0.0, 128, 5);
  EXPECT_DOUBLE_EQ(cfg.d, space.r() / 50.0);
  EXPECT_DOUBLE_EQ(cfg.eta, space.r() / 100.0);
  const SmoothedEmbedding a(cfg);
  const SmoothedEmbedding b(cfg);
  const double lip = LipschitzBound(space.k(), space.r());
  Rng rng(33);
  for (int i = 0; i < 30; ++i) {
    const DoublePoint x = RandomPoint(space, rng);
    const Vec v = a.PhiD(x);
    EXPECT_EQ(v, b.PhiD(x));
    EXPECT_NEAR((a.PhiD(Involution(x)) + v).norm(), 0.0, 1e-12);
    // Averaging over d-balls moves each coordinate by at most lip * d.
    EXPECT_LE((v - Phi(space, x)).cwiseAbs().maxCoeff(), lip * cfg.d + 1e-12);
  }
}

TEST_P(EmbedTest, NearBaseIndex) {
  const DoubleDiskSpace space = Space();
  const SmoothedEmbedding emb(EmbeddingConfig::Make(space, 0.0, 0.0, 16, 5));
  const std::vector<DoublePoint> p = StrainerPoints(space);
  EXPECT_EQ(NearBaseIndex(emb, CenterPoint(space, Half::kMinus)), -1);
  EXPECT_EQ(NearBaseIndex(emb, p[0]), -1);
  for (int i = 1; i <= space.n(); ++i) {
    EXPECT_EQ(NearBaseIndex(emb, p[i]), i);
    EXPECT_EQ(NearBaseIndex(emb, Involution(p[i])), i);
  }
}

INSTANTIATE_TEST_SUITE_P(DeskScale, EmbedTest,
                         ::testing::Values(Desk{-1, 2, 1.0}, Desk{0, 2, 1.0},
                                           Desk{1, 2, 1.0}, Desk{0, 3, 1.0},
                                           Desk{1, 3, 1.2}));

TEST(Embed, ConfigValidation) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kFlat, 2, 1.0);
  EXPECT_THROW(EmbeddingConfig::Make(space, 0.2, 0.0, 16, 1), Error);
  EXPECT_THROW(EmbeddingConfig::Make(space, 0.0, 0.0, 0, 1), Error);
}

TEST(Embed, MatrixHelpers) {
  Eigen::MatrixXd m(3, 2);
  m << 3.0, 0.0, 0.0, 2.0, 5.0, 5.0;
  const Eigen::MatrixXd dropped = DropRow(m, 2);
  ASSERT_EQ(dropped.rows(), 2);
  EXPECT_NEAR(MinSingular(dropped), 2.0, 1e-12);
  EXPECT_NEAR(SpectralNorm(dropped), 3.0, 1e-12);
}

TEST(Embed, ScanSkipsClosePairs) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kFlat, 2, 1.0);
  const std::vector<DoublePoint> net{CenterPoint(space, Half::kPlus),
                                     SeamPoint(space, Basis(1, 0)),
                                     CenterPoint(space, Half::kMinus)};
  Vec a(1), b(1), c(1);
  a << 0.0;
  b << 0.5;
  c << 3.0;
  const ScanResult all = InjectivityScanValues(net, {a, b, c}, 0.5);
  EXPECT_EQ(all.pairs, 3);
  EXPECT_DOUBLE_EQ(all.min_separation, 0.5);
  const ScanResult far = InjectivityScanValues(net, {a, b, c}, 1.5);
  EXPECT_EQ(far.pairs, 1);
  EXPECT_DOUBLE_EQ(far.min_separation, 3.0);
  EXPECT_THROW(InjectivityScanValues(net, {a, b, c}, 0.0), Error);
}

TEST(Certificate, InteriorFlatPoints) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kFlat, 2, 1.0);
  const SmoothedEmbedding emb(EmbeddingConfig::Make(space, 0.0, 0.0, 256, 2));
  const CertificateOptions opts;
  Rng rng(40);
  for (int i = 0; i < 4; ++i) {
    const DoublePoint x = RandomPoint(space, rng);
    const ImmersionCertificate cert = Certify(emb, x, opts, 100 + i);
    EXPECT_GT(cert.lambda, 0.0);
    EXPECT_GT(cert.rho, 0.0);
    EXPECT_LT(cert.wobble, opts.safety * 0.5 * cert.lambda);
    EXPECT_GE(cert.index, 0);
    EXPECT_LE(cert.index, 2);
    const InjectivityCheck inj =
        QuantitativeInjectivityCheck(emb, cert, cert.lambda, opts, 8, 200 + i);
    EXPECT_TRUE(inj.hypotheses);
    EXPECT_TRUE(inj.injective);
  }
}

TEST(Certificate, NearBasePointDropsItsIndex) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kFlat, 2, 1.0);
  const SmoothedEmbedding emb(EmbeddingConfig::Make(space, 0.0, 0.0, 256, 2));
  const std::vector<DoublePoint> p = StrainerPoints(space);
  Vec c(3);
  c << 1.0, 0.97, 0.0;
  const DoublePoint x = MakeDoublePoint(space, Half::kPlus, ModelPoint::Make(Curvature::kFlat, c));
  const ImmersionCertificate cert = Certify(emb, x, CertificateOptions{}, 7);
  EXPECT_EQ(cert.near_base, 1);
  EXPECT_EQ(cert.index, 1);
  EXPECT_GT(cert.lambda, 0.0);
}

}  // namespace
}  // namespace crosscap
