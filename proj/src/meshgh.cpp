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
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <queue>
#include <set>

#include <Eigen/Geometry>

#include "crosscap/embed.hpp"
#include "crosscap/rng.hpp"

namespace crosscap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDiskShortcutRings = 3;
constexpr int kBandShortcutRings = 2;

struct Ring {
  std::vector<int> ids;  // ascending angle, ids[0] at angle 0
};

using Tri = std::array<int, 3>;

// Triangulates the annulus between two rings by merging their angles.
void StitchRings(const Ring& inner, const Ring& outer, std::vector<Tri>* tris) {
  const int na = static_cast<int>(inner.ids.size());
  const int nb = static_cast<int>(outer.ids.size());
  int a = 0;
  int b = 0;
  while (a < na || b < nb) {
    const double next_a = 2.0 * kPi * (a + 1) / na;
    const double next_b = 2.0 * kPi * (b + 1) / nb;
    if (b < nb && (a >= na || next_b < next_a)) {
      tris->push_back({inner.ids[a % na], outer.ids[b % nb], outer.ids[(b + 1) % nb]});
      ++b;
    } else {
      tris->push_back({inner.ids[a % na], outer.ids[b % nb], inner.ids[(a + 1) % na]});
      ++a;
    }
  }
}

int EvenAtLeast(int v, int floor) {
  v = std::max(v, floor);
  return v + (v % 2);
}

// Polar-ring disk of radius r at height z; returns the rim ring.
Ring BuildDisk(double r, double z, int outer, MeshSurface* m, Region region,
               int* center) {
  const int rings = std::max(2, static_cast<int>(std::lround(outer / (2.0 * kPi))));
  *center = static_cast<int>(m->vertices.size());
  m->vertices.emplace_back(0.0, 0.0, z);
  m->region.push_back(region);
  Ring prev;
  prev.ids.push_back(*center);
  Ring ring;
  for (int j = 1; j <= rings; ++j) {
    const int count = j == rings
                          ? outer
                          : EvenAtLeast(static_cast<int>(std::lround(
                                            static_cast<double>(outer) * j / rings)),
                                        6);
    const double radius = r * j / rings;
    ring.ids.clear();
    for (int k = 0; k < count; ++k) {
      const double a = 2.0 * kPi * k / count;
      ring.ids.push_back(static_cast<int>(m->vertices.size()));
      m->vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), z);
      m->region.push_back(region);
    }
    if (j == 1) {
      for (int k = 0; k < count; ++k) {
        m->triangles.push_back({*center, ring.ids[k], ring.ids[(k + 1) % count]});
      }
    } else {
      StitchRings(prev, ring, &m->triangles);
    }
    prev = ring;
  }
  return ring;
}

void BuildNeighbors(MeshSurface* m) {
  std::vector<std::set<int>> nb(m->vertices.size());
  for (const Tri& t : m->triangles) {
    for (int a = 0; a < 3; ++a) {
      nb[t[a]].insert(t[(a + 1) % 3]);
      nb[t[a]].insert(t[(a + 2) % 3]);
    }
  }
  m->neighbors.assign(m->vertices.size(), {});
  for (std::size_t v = 0; v < nb.size(); ++v) {
    m->neighbors[v].assign(nb[v].begin(), nb[v].end());
  }
}

// Vertices within `rings` triangle rings of v whose region passes `keep`.
template <class Keep>
std::vector<int> KRing(const MeshSurface& m, int v, int rings, Keep&& keep) {
  std::vector<int> frontier{v};
  std::set<int> seen{v};
  for (int step = 0; step < rings; ++step) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int w : m.neighbors[u]) {
        if (!keep(w) || !seen.insert(w).second) continue;
        next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  seen.erase(v);
  return {seen.begin(), seen.end()};
}

void AddEdge(std::vector<std::set<int>>* edges, int a, int b) {
  if (a == b) return;
  (*edges)[a].insert(b);
  (*edges)[b].insert(a);
}

// Metric graph: triangle edges, straight segments inside each flat disk
// (to the rim and within a few rings) and short chords across the band.
void BuildGraph(MeshSurface* m, const std::vector<std::vector<int>>& rims) {
  const int nv = static_cast<int>(m->vertices.size());
  std::vector<std::set<int>> edges(nv);
  for (int v = 0; v < nv; ++v) {
    for (int w : m->neighbors[v]) AddEdge(&edges, v, w);
  }
  for (int v = 0; v < nv; ++v) {
    const Region rv = m->region[v];
    if (rv == Region::kBand) {
      for (int w : KRing(*m, v, kBandShortcutRings, [](int) { return true; })) {
        if (m->region[w] == Region::kBand || m->region[v] == Region::kBand) {
          AddEdge(&edges, v, w);
        }
      }
      continue;
    }
    for (int w : KRing(*m, v, kDiskShortcutRings,
                       [&](int u) { return m->region[u] == rv; })) {
      AddEdge(&edges, v, w);
    }
  }
  for (const std::vector<int>& rim : rims) {
    if (rim.empty()) continue;
    const Region rr = m->region[rim.front()];
    for (int v = 0; v < nv; ++v) {
      if (m->region[v] != rr) continue;
      for (int w : rim) AddEdge(&edges, v, w);
    }
  }
  m->graph.assign(nv, {});
  for (int v = 0; v < nv; ++v) {
    for (int w : edges[v]) {
      m->graph[v].push_back(Edge{w, (m->vertices[v] - m->vertices[w]).norm()});
    }
  }
}

std::vector<double> VertexAreas(const MeshSurface& m) {
  std::vector<double> area(m.vertices.size(), 0.0);
  for (const Tri& t : m.triangles) {
    const double a = 0.5 * (m.vertices[t[1]] - m.vertices[t[0]])
                               .cross(m.vertices[t[2]] - m.vertices[t[0]])
                               .norm();
    for (int v : t) area[v] += a / 3.0;
  }
  return area;
}

}  // namespace

MetricAudit AuditMetric(const Eigen::MatrixXd& d) {
  MetricAudit out;
  const Eigen::Index m = d.rows();
  Require(d.cols() == m, ErrorCode::kCorruptMetric, "distance matrix not square");
  for (Eigen::Index i = 0; i < m; ++i) {
    out.max_diagonal = std::max(out.max_diagonal, std::abs(d(i, i)));
    for (Eigen::Index j = 0; j < m; ++j) {
      out.asymmetry = std::max(out.asymmetry, std::abs(d(i, j) - d(j, i)));
      if (!(d(i, j) >= 0.0) || !std::isfinite(d(i, j))) {
        out.triangle_violation = std::numeric_limits<double>::infinity();
      }
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index k = 0; k < m; ++k) {
        out.triangle_violation =
            std::max(out.triangle_violation, d(i, k) - d(i, j) - d(j, k));
      }
    }
  }
  out.ok = out.asymmetry == 0.0 && out.max_diagonal == 0.0 &&
           out.triangle_violation <= kTriangleTol;
  return out;
}

FiniteMetricSpace FiniteMetricSpace::Make(std::vector<std::string> labels,
                                          Eigen::MatrixXd dmat) {
  Require(static_cast<Eigen::Index>(labels.size()) == dmat.rows(),
          ErrorCode::kCorruptMetric, "label count differs from matrix size");
  const MetricAudit audit = AuditMetric(dmat);
  Require(audit.ok, ErrorCode::kCorruptMetric,
          "distance matrix fails the metric audit (asymmetry " +
              std::to_string(audit.asymmetry) + ", triangle violation " +
              std::to_string(audit.triangle_violation) + ")");
  FiniteMetricSpace s;
  s.labels_ = std::move(labels);
  s.dmat_ = std::move(dmat);
  return s;
}

MeshSurface PancakeSurface(double r, double rho, int resolution) {
  Require(r > 0.0 && rho > 0.0 && rho < 0.25 * r, ErrorCode::kInvalidInput,
          "pancake needs 0 < rho < r/4");
  Require(resolution >= 16, ErrorCode::kInvalidInput,
          "pancake resolution must be at least 16");
  const int outer = EvenAtLeast(resolution, 16);
  MeshSurface m;
  m.r = r;
  m.rho = rho;
  m.spacing = 2.0 * kPi * r / outer;

  const Ring top_rim = BuildDisk(r, rho, outer, &m, Region::kTop, &m.top_center);
  const int top_count = static_cast<int>(m.vertices.size());
  const std::vector<Tri> top_tris = m.triangles;

  // Bottom disk: exact negation of the top, vertex for vertex.
  auto bottom_of = [&](int v) { return v + top_count; };
  for (int v = 0; v < top_count; ++v) {
    m.vertices.push_back(-m.vertices[v]);
    m.region.push_back(Region::kBottom);
  }
  m.bottom_center = bottom_of(m.top_center);
  for (const Tri& t : top_tris) {
    m.triangles.push_back({bottom_of(t[0]), bottom_of(t[2]), bottom_of(t[1])});
  }

  // Band rings l = 0..mb: l = 0 is the bottom rim, l = mb the top rim.
  int mb = std::max(8, static_cast<int>(std::ceil(kPi * rho / m.spacing)));
  if (mb % 2 == 0) ++mb;  // no ring at theta = 0
  const int half_turn = outer / 2;
  std::vector<std::vector<int>> band(mb + 1, std::vector<int>(outer, -1));
  for (int k = 0; k < outer; ++k) {
    band[mb][k] = top_rim.ids[k];
    band[0][k] = bottom_of(top_rim.ids[(k + half_turn) % outer]);
  }
  for (int l = (mb + 1) / 2; l < mb; ++l) {
    const double theta = -0.5 * kPi + kPi * l / mb;
    for (int k = 0; k < outer; ++k) {
      const double a = 2.0 * kPi * k / outer;
      const double rad = r + rho * std::cos(theta);
      band[l][k] = static_cast<int>(m.vertices.size());
      m.vertices.emplace_back(rad * std::cos(a), rad * std::sin(a), rho * std::sin(theta));
      m.region.push_back(Region::kBand);
    }
  }
  for (int l = 1; l < (mb + 1) / 2; ++l) {
    for (int k = 0; k < outer; ++k) {
      band[l][k] = static_cast<int>(m.vertices.size());
      m.vertices.push_back(-m.vertices[band[mb - l][(k + half_turn) % outer]]);
      m.region.push_back(Region::kBand);
    }
  }
  // Quad diagonals chosen so that the involution maps triangles to triangles.
  const int mid = (mb - 1) / 2;
  for (int l = 0; l < mb; ++l) {
    for (int k = 0; k < outer; ++k) {
      const int k1 = (k + 1) % outer;
      const int a = band[l][k], b = band[l][k1], c = band[l + 1][k], d = band[l + 1][k1];
      const bool first = l < mid || (l == mid && k < half_turn);
      if (first) {
        m.triangles.push_back({a, b, d});
        m.triangles.push_back({a, d, c});
      } else {
        m.triangles.push_back({a, b, c});
        m.triangles.push_back({b, d, c});
      }
    }
  }

  const int nv = static_cast<int>(m.vertices.size());
  m.involution.assign(nv, -1);
  for (int v = 0; v < top_count; ++v) {
    m.involution[v] = bottom_of(v);
    m.involution[bottom_of(v)] = v;
  }
  for (int l = 1; l < mb; ++l) {
    for (int k = 0; k < outer; ++k) {
      m.involution[band[l][k]] = band[mb - l][(k + half_turn) % outer];
    }
  }
  BuildNeighbors(&m);
  std::vector<int> bottom_rim;
  for (int v : top_rim.ids) bottom_rim.push_back(bottom_of(v));
  BuildGraph(&m, {top_rim.ids, bottom_rim});
  return m;
}

MeshSurface FlatDiskMesh(double r, int resolution) {
  Require(r > 0.0 && resolution >= 16, ErrorCode::kInvalidInput,
          "flat disk needs r > 0 and resolution >= 16");
  const int outer = EvenAtLeast(resolution, 16);
  MeshSurface m;
  m.r = r;
  m.spacing = 2.0 * kPi * r / outer;
  const Ring rim = BuildDisk(r, 0.0, outer, &m, Region::kTop, &m.top_center);
  BuildNeighbors(&m);
  BuildGraph(&m, {rim.ids});
  return m;
}

std::vector<double> MeshDistancesFrom(const MeshSurface& m, int source) {
  const int nv = static_cast<int>(m.vertices.size());
  Require(source >= 0 && source < nv, ErrorCode::kInvalidInput,
          "source vertex out of range");
  std::vector<double> dist(nv, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const Edge& e : m.graph[v]) {
      const double nd = d + e.length;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        queue.emplace(nd, e.to);
      }
    }
  }
  return dist;
}

double MeshDist(const MeshSurface& m, int i, int j) {
  const double d = MeshDistancesFrom(m, i)[j];
  Require(std::isfinite(d), ErrorCode::kUnreachable, "mesh is disconnected");
  return d;
}

std::vector<std::vector<double>> MeshDistanceRows(const MeshSurface& m,
                                                  const std::vector<int>& sources,
                                                  Exec exec) {
  return MapIndex<std::vector<double>>(
      exec, static_cast<int>(sources.size()), [&](int s) {
        std::vector<double> row = MeshDistancesFrom(m, sources[s]);
        for (double d : row) {
          Require(std::isfinite(d), ErrorCode::kUnreachable, "mesh is disconnected");
        }
        return row;
      });
}

std::vector<int> MeshNet(const MeshSurface& m, int count, std::uint64_t seed,
                         std::vector<std::vector<double>>* rows) {
  const int nv = static_cast<int>(m.vertices.size());
  Require(count >= 1 && count <= nv, ErrorCode::kInvalidInput,
          "mesh net size out of range");
  Rng rng(seed);
  std::vector<int> net{static_cast<int>(rng.Below(nv))};
  std::vector<std::vector<double>> local;
  local.push_back(MeshDistanceRows(m, {net[0]}, Exec::kSerial).front());
  std::vector<double> mind = local.front();
  while (static_cast<int>(net.size()) < count) {
    const int far = static_cast<int>(std::max_element(mind.begin(), mind.end()) - mind.begin());
    net.push_back(far);
    local.push_back(MeshDistanceRows(m, {far}, Exec::kSerial).front());
    for (int v = 0; v < nv; ++v) mind[v] = std::min(mind[v], local.back()[v]);
  }
  if (rows != nullptr) *rows = std::move(local);
  return net;
}

DiskSample SampleFiniteSpace(const DoubleDiskSpace& space, int count,
                             std::uint64_t seed) {
  std::vector<DoublePoint> pts = UniformNet(space, count, seed);
  Eigen::MatrixXd d = DistanceMatrix(
      DefaultExec(), pts,
      [](const DoublePoint& a, const DoublePoint& b) { return DoubleDist(a, b); });
  std::vector<std::string> labels;
  for (int i = 0; i < count; ++i) labels.push_back("p" + std::to_string(i));
  return DiskSample{std::move(pts), FiniteMetricSpace::Make(std::move(labels), std::move(d))};
}

MeshSample SampleFiniteSpace(const MeshSurface& mesh, int count,
                             std::uint64_t seed) {
  std::vector<std::vector<double>> rows;
  std::vector<int> net = MeshNet(mesh, count, seed, &rows);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(count, count);
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      d(i, j) = d(j, i) = std::min(rows[i][net[j]], rows[j][net[i]]);
    }
  }
  std::vector<std::string> labels;
  for (int v : net) labels.push_back("v" + std::to_string(v));
  return MeshSample{std::move(net), FiniteMetricSpace::Make(std::move(labels), std::move(d))};
}

Correspondence IdentityCorrespondence(int size) {
  Correspondence c;
  for (int i = 0; i < size; ++i) c.pairs.emplace_back(i, i);
  return c;
}

double GhUpper(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
               const Correspondence& c) {
  std::vector<char> hit_x(x.size(), 0), hit_y(y.size(), 0);
  for (const auto& [a, b] : c.pairs) {
    Require(a >= 0 && a < x.size() && b >= 0 && b < y.size(),
            ErrorCode::kInvalidInput, "correspondence index out of range");
    hit_x[a] = 1;
    hit_y[b] = 1;
  }
  Require(std::all_of(hit_x.begin(), hit_x.end(), [](char h) { return h != 0; }) &&
              std::all_of(hit_y.begin(), hit_y.end(), [](char h) { return h != 0; }),
          ErrorCode::kInvalidInput, "correspondence is not surjective");
  double distortion = 0.0;
  for (std::size_t p = 0; p < c.pairs.size(); ++p) {
    for (std::size_t q = p + 1; q < c.pairs.size(); ++q) {
      const auto [a, b] = c.pairs[p];
      const auto [a2, b2] = c.pairs[q];
      distortion = std::max(distortion, std::abs(x(a, a2) - y(b, b2)));
    }
  }
  return 0.5 * distortion;
}

DoublePoint CollapseVertex(const MeshSurface& m, int vertex,
                           const DoubleDiskSpace& space) {
  const Eigen::Vector3d& p = m.vertices[vertex];
  const double planar = std::hypot(p[0], p[1]);
  Vec dir(2);
  if (planar > 0.0) {
    dir << p[0] / planar, p[1] / planar;
  } else {
    dir << 1.0, 0.0;
  }
  switch (m.region[vertex]) {
    case Region::kTop:
      return FromPolar(space, Half::kPlus, std::min(planar, space.r()), dir);
    case Region::kBottom:
      return FromPolar(space, Half::kMinus, std::min(planar, space.r()), dir);
    case Region::kBand:
      return SeamPoint(space, dir, Half::kPlus);
  }
  return CenterPoint(space, Half::kPlus);
}

Correspondence NaturalCorrespondence(const MeshSurface& m,
                                     const std::vector<int>& mesh_net,
                                     const std::vector<DoublePoint>& disk_net) {
  Require(!mesh_net.empty() && !disk_net.empty(), ErrorCode::kInvalidInput,
          "nets must be nonempty");
  const DoubleDiskSpace& space = disk_net.front().space;
  std::vector<DoublePoint> images;
  for (int v : mesh_net) images.push_back(CollapseVertex(m, v, space));
  const int nm = static_cast<int>(mesh_net.size());
  const int nd = static_cast<int>(disk_net.size());
  Eigen::MatrixXd d(nm, nd);
  ForEachIndex(DefaultExec(), nm, [&](int i) {
    for (int j = 0; j < nd; ++j) d(i, j) = DoubleDist(images[i], disk_net[j]);
  });
  Correspondence c;
  std::vector<char> hit(nd, 0);
  for (int i = 0; i < nm; ++i) {
    Eigen::Index j = 0;
    d.row(i).minCoeff(&j);
    c.pairs.emplace_back(i, static_cast<int>(j));
    hit[j] = 1;
  }
  for (int j = 0; j < nd; ++j) {
    if (hit[j]) continue;
    Eigen::Index i = 0;
    d.col(j).minCoeff(&i);
    c.pairs.emplace_back(static_cast<int>(i), j);
  }
  return c;
}

LiftedEmbedding LiftEmbedding(const MeshSurface& m, double d, int sample_count,
                              std::uint64_t seed) {
  Require(!m.involution.empty(), ErrorCode::kInvalidInput,
          "lifting needs a mesh with an involution");
  Require(d > 0.0 && sample_count >= 1, ErrorCode::kInvalidInput,
          "lifting needs d > 0 and a positive sample count");
  const int nv = static_cast<int>(m.vertices.size());
  LiftedEmbedding out;
  out.lifted_points.push_back(m.top_center);
  for (int i = 0; i < 2; ++i) {
    Eigen::Vector3d target = Eigen::Vector3d::Zero();
    target[i] = m.r + m.rho;
    int best = 0;
    for (int v = 1; v < nv; ++v) {
      if ((m.vertices[v] - target).norm() < (m.vertices[best] - target).norm()) best = v;
    }
    out.lifted_points.push_back(best);
  }

  const std::vector<double> area = VertexAreas(m);
  const std::vector<std::vector<double>> lift_rows =
      MeshDistanceRows(m, out.lifted_points, DefaultExec());
  const Rng root(seed);
  std::set<int> needed;
  for (std::size_t i = 0; i < out.lifted_points.size(); ++i) {
    std::vector<int> ball;
    std::vector<double> cumulative;
    double total = 0.0;
    for (int v = 0; v < nv; ++v) {
      if (lift_rows[i][v] > d) continue;
      ball.push_back(v);
      total += area[v];
      cumulative.push_back(total);
    }
    Rng rng = root.Split(i);
    std::vector<int> samples;
    for (int s = 0; s < sample_count; ++s) {
      const double u = rng.Uniform() * total;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const std::size_t pick = std::min<std::size_t>(it - cumulative.begin(), ball.size() - 1);
      samples.push_back(ball[pick]);
      needed.insert(ball[pick]);
      needed.insert(m.involution[ball[pick]]);
    }
    out.samples.push_back(std::move(samples));
  }

  const std::vector<int> sources(needed.begin(), needed.end());
  const std::vector<std::vector<double>> rows = MeshDistanceRows(m, sources, DefaultExec());
  std::map<int, int> row_of;
  for (std::size_t s = 0; s < sources.size(); ++s) row_of[sources[s]] = static_cast<int>(s);

  for (const std::vector<int>& samples : out.samples) {
    Eigen::VectorXd values(nv);
    std::vector<int> z_rows, az_rows;
    for (int z : samples) {
      z_rows.push_back(row_of[z]);
      az_rows.push_back(row_of[m.involution[z]]);
    }
    for (int v = 0; v < nv; ++v) {
      const McEstimate e = SmoothedFOver(
          Curvature::kFlat, m.r, z_rows, az_rows, v,
          [&rows](int row, int vertex) { return rows[row][vertex]; });
      values[v] = e.value;
    }
    for (int v = 0; v < nv; ++v) {
      out.equivariance_defect = std::max(
          out.equivariance_defect, std::abs(values[m.involution[v]] + values[v]));
    }
    out.values.push_back(std::move(values));
  }
  return out;
}

double MeshLambda(const MeshSurface& m, const LiftedEmbedding& e) {
  double lambda = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    double at_v = std::numeric_limits<double>::infinity();
    for (int w : m.neighbors[v]) {
      const double len = (m.vertices[v] - m.vertices[w]).norm();
      double best = 0.0;
      for (const Eigen::VectorXd& f : e.values) {
        best = std::max(best, std::abs(f[w] - f[v]) / len);
      }
      at_v = std::min(at_v, best);
    }
    lambda = std::min(lambda, at_v);
  }
  return lambda;
}

std::vector<CriticalVertex> CriticalityScan(const MeshSurface& m, int p,
                                            double eps) {
  const std::vector<double> dp = MeshDistancesFrom(m, p);
  std::vector<CriticalVertex> out;
  for (int q = 0; q < static_cast<int>(m.vertices.size()); ++q) {
    if (q == p) continue;
    double worst = 0.0;
    for (int y : m.neighbors[q]) {
      if (y == p) continue;
      double qy = std::numeric_limits<double>::infinity();
      for (const Edge& e : m.graph[q]) {
        if (e.to == y) qy = e.length;
      }
      worst = std::max(worst, ComparisonAngle(Curvature::kFlat, dp[q], qy, dp[y]));
    }
    if (worst <= 0.5 * kPi + eps) out.push_back(CriticalVertex{q, worst});
  }
  return out;
}

std::vector<int> LocalExtrema(const MeshSurface& m, const Eigen::VectorXd& f) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(m.vertices.size()); ++v) {
    bool above = true;
    bool below = true;
    for (int w : m.neighbors[v]) {
      above = above && f[v] > f[w];
      below = below && f[v] < f[w];
    }
    if (above || below) out.push_back(v);
  }
  return out;
}

double KappaRatio(Curvature k, int n, double d) {
  Require(d > 0.0, ErrorCode::kInvalidInput, "kappa ratio needs d > 0");
  Require(k != Curvature::kSpherical || 2.0 * d <= kPi, ErrorCode::kInvalidInput,
          "spherical kappa ratio needs 2d <= pi");
  return 1.0 - BallVolume(k, n, d) / BallVolume(k, n, 2.0 * d);
}

LevelSet LevelSetExtract(const MeshSurface& m, const Eigen::VectorXd& f,
                         double level) {
  const int nv = static_cast<int>(m.vertices.size());
  for (int v = 0; v < nv; ++v) {
    Require(std::abs(f[v] - level) > 1e-9, ErrorCode::kPerturbLevel,
            "vertex value on the level; retry with a perturbed level");
  }
  std::map<std::pair<int, int>, int> node_of;
  std::vector<std::pair<int, int>> nodes;
  std::vector<std::vector<int>> adj;
  auto node = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    const auto [it, fresh] = node_of.emplace(key, static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back(key);
      adj.emplace_back();
    }
    return it->second;
  };
  for (const Tri& t : m.triangles) {
    std::vector<int> crossing;
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      if ((f[a] > level) != (f[b] > level)) crossing.push_back(node(a, b));
    }
    if (crossing.size() == 2) {
      adj[crossing[0]].push_back(crossing[1]);
      adj[crossing[1]].push_back(crossing[0]);
    }
  }
  const int count = static_cast<int>(nodes.size());
  std::vector<int> comp(count, -1);
  std::vector<std::vector<int>> order;
  LevelSet out;
  for (int s = 0; s < count; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(order.size());
    std::vector<int> seq{s};
    comp[s] = id;
    bool closed = adj[s].size() == 2;
    int prev = -1, cur = s;
    while (true) {
      int next = -1;
      for (int w : adj[cur]) {
        if (w != prev && comp[w] < 0) { next = w; break; }
      }
      if (next < 0) break;
      comp[next] = id;
      seq.push_back(next);
      closed = closed && adj[next].size() == 2;
      prev = cur;
      cur = next;
    }
    // Pick up any branch not reached by the walk.
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[u]) {
        if (comp[w] < 0) {
          comp[w] = id;
          seq.push_back(w);
          closed = false;
          stack.push_back(w);
        }
      }
    }
    order.push_back(seq);
    LevelComponent c;
    c.nodes = static_cast<int>(seq.size());
    c.closed = closed;
    out.components.push_back(c);
    std::vector<Eigen::Vector3d> line;
    for (int n : seq) {
      const auto [a, b] = nodes[n];
      const double w = (level - f[a]) / (f[b] - f[a]);
      line.push_back((1.0 - w) * m.vertices[a] + w * m.vertices[b]);
    }
    out.polylines.push_back(std::move(line));
  }
  if (!m.involution.empty()) {
    for (std::size_t c = 0; c < order.size(); ++c) {
      const std::vector<int>& seq = order[c];
      auto image = [&](int n) {
        const auto [a, b] = nodes[n];
        const auto it = node_of.find(std::minmax(m.involution[a], m.involution[b]));
        return it == node_of.end() ? -1 : it->second;
      };
      const int first = image(seq.front());
      if (first < 0) continue;
      out.components[c].image = comp[first];
      if (comp[first] == static_cast<int>(c) && seq.size() > 2) {
        // Compare the cyclic successor of the image with the image of the
        // successor.
        const auto pos = std::find(seq.begin(), seq.end(), first) - seq.begin();
        const int succ = seq[(pos + 1) % seq.size()];
        out.components[c].orientation_kept = image(seq[1]) == succ;
      }
    }
  }
  return out;
}

void WriteOff(const MeshSurface& m, std::ostream& out) {
  out << "OFF\n" << m.vertices.size() << ' ' << m.triangles.size() << " 0\n";
  out.precision(17);
  for (const Eigen::Vector3d& v : m.vertices) {
    out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  for (const Tri& t : m.triangles) {
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

}  // namespace crosscap
