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


#include "crosscap/meshgh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "crosscap/error.hpp"

namespace crosscap {
namespace {

constexpr double kPi = std::numbers::pi;

int Nearest(const MeshSurface& m, const Eigen::Vector3d& p) {
  int best = 0;
  for (int v = 1; v < static_cast<int>(m.vertices.size()); ++v) {
    if ((m.vertices[v] - p).norm() < (m.vertices[best] - p).norm()) best = v;
  }
  return best;
}

class PancakeTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { mesh_ = new MeshSurface(PancakeSurface(1.0, 0.05, 64)); }
  static void TearDownTestSuite() { delete mesh_; }
  static const MeshSurface& Mesh() { return *mesh_; }

 private:
  static MeshSurface* mesh_;
};
MeshSurface* PancakeTest::mesh_ = nullptr;

TEST_F(PancakeTest, InvolutionIsFreeAndAntipodal) {
  const MeshSurface& m = Mesh();
  const int nv = static_cast<int>(m.vertices.size());
  ASSERT_EQ(static_cast<int>(m.involution.size()), nv);
  for (int v = 0; v < nv; ++v) {
    const int a = m.involution[v];
    EXPECT_NE(a, v);
    EXPECT_EQ(m.involution[a], v);
    EXPECT_EQ(m.vertices[a], Eigen::Vector3d(-m.vertices[v]));
  }
  EXPECT_EQ(m.involution[m.top_center], m.bottom_center);
}

TEST_F(PancakeTest, InvolutionMapsTrianglesToTriangles) {
  const MeshSurface& m = Mesh();
  std::set<std::array<int, 3>> tris;
  auto canon = [](std::array<int, 3> t) {
    std::sort(t.begin(), t.end());
    return t;
  };
  for (const auto& t : m.triangles) tris.insert(canon(t));
  for (const auto& t : m.triangles) {
    const std::array<int, 3> image{m.involution[t[0]], m.involution[t[1]],
                                   m.involution[t[2]]};
    EXPECT_TRUE(tris.count(canon(image))) << t[0] << ' ' << t[1] << ' ' << t[2];
  }
}

TEST_F(PancakeTest, ClosedSurfaceOfGenusZero) {
  const MeshSurface& m = Mesh();
  std::set<std::pair<int, int>> edges;
  std::map<std::pair<int, int>, int> uses;
  for (const auto& t : m.triangles) {
    for (int e = 0; e < 3; ++e) {
      const auto key = std::minmax(t[e], t[(e + 1) % 3]);
      edges.insert(key);
      ++uses[key];
    }
  }
  for (const auto& [key, count] : uses) EXPECT_EQ(count, 2);
  const long euler = static_cast<long>(m.vertices.size()) -
                     static_cast<long>(edges.size()) +
                     static_cast<long>(m.triangles.size());
  EXPECT_EQ(euler, 2);
}

TEST_F(PancakeTest, GraphDistancesMatchTheSurface) {
  const MeshSurface& m = Mesh();
  const double rho = m.rho;
  const double c2c = MeshDist(m, m.top_center, m.bottom_center);
  EXPECT_NEAR(c2c, 2.0 + kPi * rho, 0.03 * (2.0 + kPi * rho));
  const int top_rim = Nearest(m, Eigen::Vector3d(1.0, 0.0, rho));
  const int bottom_rim = Nearest(m, Eigen::Vector3d(1.0, 0.0, -rho));
  EXPECT_NEAR(MeshDist(m, top_rim, bottom_rim), kPi * rho, 0.02 * kPi * rho);
  // Flat top: graph distance within two edge lengths of the chord.
  std::vector<int> top;
  for (int v = 0; v < static_cast<int>(m.vertices.size()); ++v) {
    if (m.region[v] == Region::kTop && v % 37 == 0) top.push_back(v);
  }
  const std::vector<std::vector<double>> rows = MeshDistanceRows(m, top, Exec::kSerial);
  for (std::size_t i = 0; i < top.size(); ++i) {
    for (std::size_t j = 0; j < top.size(); ++j) {
      const double chord = (m.vertices[top[i]] - m.vertices[top[j]]).norm();
      EXPECT_GE(rows[i][top[j]], chord - 1e-12);
      EXPECT_LE(rows[i][top[j]], chord + 2.0 * m.spacing);
    }
  }
}

TEST_F(PancakeTest, DistanceRowsAgreeAcrossExecution) {
  const MeshSurface& m = Mesh();
  const std::vector<int> sources{0, 5, 100, m.bottom_center};
  EXPECT_EQ(MeshDistanceRows(m, sources, Exec::kSerial),
            MeshDistanceRows(m, sources, Exec::kParallel));
}

TEST_F(PancakeTest, SampledSpacePassesAudit) {
  const MeshSample s = SampleFiniteSpace(Mesh(), 40, 3);
  EXPECT_EQ(s.space.size(), 40);
  EXPECT_TRUE(AuditMetric(s.space.dmat()).ok);
  const MeshSample again = SampleFiniteSpace(Mesh(), 40, 3);
  EXPECT_EQ(s.vertices, again.vertices);
}

TEST_F(PancakeTest, NetIsFarthestPoint) {
  std::vector<std::vector<double>> rows;
  const std::vector<int> net = MeshNet(Mesh(), 20, 4, &rows);
  ASSERT_EQ(net.size(), 20u);
  ASSERT_EQ(rows.size(), 20u);
  // Each new point is farthest from the previous ones, so the gaps shrink.
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < net.size(); ++i) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < i; ++j) gap = std::min(gap, rows[j][net[i]]);
    EXPECT_LE(gap, previous + 1e-12);
    previous = gap;
  }
  EXPECT_EQ(MeshNet(Mesh(), 20, 4, nullptr), net);
}

TEST_F(PancakeTest, CollapseAndLift) {
  const MeshSurface& m = Mesh();
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kFlat, 2, 1.0);
  EXPECT_TRUE(SamePoint(CollapseVertex(m, m.top_center, space),
                        CenterPoint(space, Half::kPlus)));
  EXPECT_TRUE(SamePoint(CollapseVertex(m, m.bottom_center, space),
                        CenterPoint(space, Half::kMinus)));
  for (int v = 0; v < static_cast<int>(m.vertices.size()); v += 53) {
    EXPECT_TRUE(SamePoint(CollapseVertex(m, m.involution[v], space),
                          Involution(CollapseVertex(m, v, space))));
  }
  const LiftedEmbedding e = LiftEmbedding(m, 0.02, 16, 6);
  EXPECT_EQ(e.equivariance_defect, 0.0);
  ASSERT_EQ(e.values.size(), 3u);
  EXPECT_GT(MeshLambda(m, e), 0.0);
}

TEST_F(PancakeTest, HeightLevelIsOneInvariantCircle) {
  const MeshSurface& m = Mesh();
  Eigen::VectorXd f(m.vertices.size());
  for (int v = 0; v < f.size(); ++v) f[v] = m.vertices[v].z();
  const LevelSet level = LevelSetExtract(m, f, 0.0);
  ASSERT_EQ(level.components.size(), 1u);
  EXPECT_TRUE(level.components[0].closed);
  EXPECT_EQ(level.components[0].image, 0);
  EXPECT_TRUE(level.components[0].orientation_kept);
  EXPECT_THROW(LevelSetExtract(m, f, m.rho), Error);
}

TEST_F(PancakeTest, GenericLinearFunctionHasTwoExtrema) {
  const MeshSurface& m = Mesh();
  Eigen::VectorXd f(m.vertices.size());
  for (int v = 0; v < f.size(); ++v) {
    f[v] = m.vertices[v].x() + 0.01 * m.vertices[v].y() + 0.001 * m.vertices[v].z();
  }
  EXPECT_EQ(LocalExtrema(m, f).size(), 2u);
}

TEST(Mesh, PancakeValidation) {
  EXPECT_THROW(PancakeSurface(1.0, 0.3, 64), Error);
  EXPECT_THROW(PancakeSurface(1.0, 0.0, 64), Error);
  EXPECT_THROW(PancakeSurface(1.0, 0.1, 8), Error);
}

TEST(Mesh, FlatDiskCriticalSetIsTheRim) {
  const MeshSurface m = FlatDiskMesh(1.0, 48);
  EXPECT_TRUE(m.involution.empty());
  const int center = Nearest(m, Eigen::Vector3d::Zero());
  const std::vector<CriticalVertex> crit = CriticalityScan(m, center);
  ASSERT_FALSE(crit.empty());
  for (const CriticalVertex& c : crit) {
    EXPECT_GE(m.vertices[c.vertex].norm(), 1.0 - 2.0 * m.spacing);
  }
}

TEST(Mesh, OffLayout) {
  const MeshSurface m = FlatDiskMesh(1.0, 16);
  std::ostringstream out;
  WriteOff(m, out);
  std::istringstream in(out.str());
  std::string magic;
  std::size_t nv = 0, nf = 0, ne = 0;
  in >> magic >> nv >> nf >> ne;
  EXPECT_EQ(magic, "OFF");
  EXPECT_EQ(nv, m.vertices.size());
  EXPECT_EQ(nf, m.triangles.size());
  EXPECT_EQ(ne, 0u);
  double x = 0.0, y = 0.0, z = 0.0;
  for (std::size_t v = 0; v < nv; ++v) in >> x >> y >> z;
  EXPECT_EQ(Eigen::Vector3d(x, y, z), m.vertices.back());
  int three = 0, a = 0, b = 0, c = 0;
  in >> three >> a >> b >> c;
  EXPECT_EQ(three, 3);
  EXPECT_EQ((std::array<int, 3>{a, b, c}), m.triangles.front());
}

TEST(Metric, AuditFindsDefects) {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  EXPECT_TRUE(AuditMetric(d).ok);
  Eigen::MatrixXd bad = d;
  bad(0, 2) = bad(2, 0) = 3.0;
  const MetricAudit tri = AuditMetric(bad);
  EXPECT_FALSE(tri.ok);
  EXPECT_NEAR(tri.triangle_violation, 1.0, 1e-12);
  bad = d;
  bad(0, 1) = 1.5;
  EXPECT_NEAR(AuditMetric(bad).asymmetry, 0.5, 1e-12);
  try {
    FiniteMetricSpace::Make({"a", "b", "c"}, bad);
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptMetric);
  }
}

TEST(Gh, IdentityAndScaling) {
  const DoubleDiskSpace space = DoubleDiskSpace::Make(Curvature::kFlat, 2, 1.0);
  const DiskSample s = SampleFiniteSpace(space, 30, 8);
  EXPECT_EQ(GhUpper(s.space, s.space, IdentityCorrespondence(30)), 0.0);
  const FiniteMetricSpace doubled =
      FiniteMetricSpace::Make(s.space.labels(), 2.0 * s.space.dmat());
  EXPECT_NEAR(GhUpper(s.space, doubled, IdentityCorrespondence(30)),
              0.5 * s.space.dmat().maxCoeff(), 1e-12);
  Correspondence partial = IdentityCorrespondence(30);
  partial.pairs.pop_back();
  EXPECT_THROW(GhUpper(s.space, s.space, partial), Error);
}

TEST(Kappa, FlatValuesAreExact) {
  for (double d : {0.05, 0.3, 1.5}) {
    EXPECT_EQ(KappaRatio(Curvature::kFlat, 2, d), 0.75);
    EXPECT_EQ(KappaRatio(Curvature::kFlat, 3, d), 0.875);
    const double sph = KappaRatio(Curvature::kSpherical, 2, d);
    EXPECT_GT(sph, 0.0);
    EXPECT_LT(sph, 0.75);
    EXPECT_GT(KappaRatio(Curvature::kHyperbolic, 2, d), 0.75);
  }
  EXPECT_THROW(KappaRatio(Curvature::kSpherical, 2, 2.0), Error);
  EXPECT_THROW(KappaRatio(Curvature::kFlat, 2, 0.0), Error);
}

}  // namespace
}  // namespace crosscap
