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
// Finite metric spaces, the pancake surfaces converging to the flat double
// disk, graph metrics on them, and Gromov-Hausdorff upper bounds.

#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "crosscap/doubledisk.hpp"
#include "crosscap/kernels.hpp"

namespace crosscap {

struct MetricAudit {
  double asymmetry = 0.0;
  double max_diagonal = 0.0;
  double triangle_violation = 0.0;
  bool ok = false;
};
inline constexpr double kTriangleTol = 1e-8;
MetricAudit AuditMetric(const Eigen::MatrixXd& d);

class FiniteMetricSpace {
 public:
  // Throws kCorruptMetric unless the matrix passes AuditMetric.
  static FiniteMetricSpace Make(std::vector<std::string> labels,
                                Eigen::MatrixXd dmat);

  int size() const { return static_cast<int>(dmat_.rows()); }
  const Eigen::MatrixXd& dmat() const { return dmat_; }
  double operator()(int i, int j) const { return dmat_(i, j); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd dmat_;
};

enum class Region { kTop, kBottom, kBand };

struct Edge {
  int to = 0;
  double length = 0.0;
};

struct MeshSurface {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Region> region;
  std::vector<int> involution;  // empty for meshes without one
  // Triangle one-rings, used for local tests.
  std::vector<std::vector<int>> neighbors;
  // Edges of the metric graph: triangle edges plus straight shortcuts.
  std::vector<std::vector<Edge>> graph;
  double r = 0.0;
  double rho = 0.0;
  double spacing = 0.0;  // outer ring edge length
  int top_center = -1;
  int bottom_center = -1;
};

// Boundary of the rho-neighborhood of the flat r-disk in R^3, with
// involution x -> -x. Requires 0 < rho < r/4 and resolution >= 16 (vertices
// on the outer ring; odd counts are rounded up).
MeshSurface PancakeSurface(double r, double rho, int resolution);
// A single flat polar-ring disk at height 0.
MeshSurface FlatDiskMesh(double r, int resolution);

std::vector<double> MeshDistancesFrom(const MeshSurface& m, int source);
double MeshDist(const MeshSurface& m, int i, int j);
// Rows of the graph metric from each source, in source order.
std::vector<std::vector<double>> MeshDistanceRows(const MeshSurface& m,
                                                  const std::vector<int>& sources,
                                                  Exec exec);

// Greedy farthest-point net of mesh vertices; the first vertex is drawn from
// the seed. `rows` receives each net vertex's distance row.
std::vector<int> MeshNet(const MeshSurface& m, int count, std::uint64_t seed,
                         std::vector<std::vector<double>>* rows);

struct DiskSample {
  std::vector<DoublePoint> points;
  FiniteMetricSpace space;
};
DiskSample SampleFiniteSpace(const DoubleDiskSpace& space, int count,
                             std::uint64_t seed);

struct MeshSample {
  std::vector<int> vertices;
  FiniteMetricSpace space;
};
MeshSample SampleFiniteSpace(const MeshSurface& mesh, int count,
                             std::uint64_t seed);

struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
};

Correspondence IdentityCorrespondence(int size);
// Half the distortion of c. Throws kInvalidInput unless both projections
// are surjective.
double GhUpper(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
               const Correspondence& c);

// Collapse of the pancake onto the double disk: top to +, bottom to -, band
// to the nearest seam point.
DoublePoint CollapseVertex(const MeshSurface& m, int vertex,
                           const DoubleDiskSpace& space);

// Each mesh-net vertex relates to the disk-net point nearest to its
// collapse image; unmatched disk points are added with their nearest
// preimage.
Correspondence NaturalCorrespondence(const MeshSurface& m,
                                     const std::vector<int>& mesh_net,
                                     const std::vector<DoublePoint>& disk_net);

struct LiftedEmbedding {
  std::vector<int> lifted_points;          // mesh vertices for p_0..p_n
  std::vector<std::vector<int>> samples;   // ball samples per index
  std::vector<Eigen::VectorXd> values;     // values[i][v] = f_{i,d}(v)
  double equivariance_defect = 0.0;
};

// f_{i,d} on every mesh vertex with the graph metric. Ball samples are
// drawn area-weighted from the vertices within mesh distance d of each
// lifted p_i (the lifted vertex itself when none is closer).
LiftedEmbedding LiftEmbedding(const MeshSurface& m, double d, int sample_count,
                              std::uint64_t seed);

// Finite-difference lambda over triangle edges: at each vertex the minimum
// over its edges of max_j |difference quotient of f_j|; then the minimum
// over vertices.
double MeshLambda(const MeshSurface& m, const LiftedEmbedding& e);

struct CriticalVertex {
  int vertex = 0;
  double worst_angle = 0.0;  // largest comparison angle over neighbors
};

// Vertices q != p with comparisonAngle(0, d(p,q), d(q,y), d(p,y)) <= pi/2 +
// eps for every triangle neighbor y.
std::vector<CriticalVertex> CriticalityScan(const MeshSurface& m, int p,
                                            double eps = 0.1);

// Vertices whose value is strictly above or strictly below all neighbors.
std::vector<int> LocalExtrema(const MeshSurface& m, const Eigen::VectorXd& f);

double KappaRatio(Curvature k, int n, double d);

struct LevelComponent {
  int nodes = 0;
  bool closed = false;
  int image = -1;            // component containing the involution image
  bool orientation_kept = false;
};

struct LevelSet {
  std::vector<LevelComponent> components;
  std::vector<std::vector<Eigen::Vector3d>> polylines;
};

// Throws kPerturbLevel when a vertex value lies within 1e-9 of level.
LevelSet LevelSetExtract(const MeshSurface& m, const Eigen::VectorXd& f,
                         double level);

void WriteOff(const MeshSurface& m, std::ostream& out);

}  // namespace crosscap
