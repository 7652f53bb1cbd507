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

#include "crosscap/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <optional>

#include "crosscap/doubledisk.hpp"
#include "crosscap/embed.hpp"
#include "crosscap/error.hpp"
#include "crosscap/kernels.hpp"
#include "crosscap/meshgh.hpp"
#include "crosscap/rng.hpp"
#include "crosscap/spaceform.hpp"
#include "crosscap/strain.hpp"

namespace crosscap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kIdentityPoints = 1000;
constexpr int kSmoothedEquivariancePoints = 100;
constexpr int kInjectivityPairs = 8;
constexpr int kModulusPoints = 8;
constexpr int kModulusProbes = 12;
constexpr double kScanNu = 0.2;        // multiple of r
constexpr double kInteriorDepth = 0.2; // distance from the seam, multiple of r
constexpr double kPoleBall = 0.15;     // multiple of r

class Stopwatch {
 public:
  double Millis() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

DoubleDiskSpace SpaceOf(const RunConfig& cfg) {
  return DoubleDiskSpace::Make(CurvatureFromInt(cfg.k), cfg.n, cfg.r);
}

std::string Tag(const RunConfig& cfg) {
  std::string r = FormatDouble(cfg.r);
  return "k" + std::to_string(cfg.k) + ".n" + std::to_string(cfg.n) + ".r" + r;
}

// Per-configuration entry when the registry has one, else the generic key.
std::string KeyFor(const ThresholdRegistry& reg, const std::string& base,
                   const RunConfig& cfg) {
  const std::string specific = base + "." + Tag(cfg);
  return reg.Has(specific) ? specific : base;
}

std::string Str(double v) { return FormatDouble(v); }
std::string Str(int v) { return std::to_string(v); }

// Frame tangents plus `extra` random unit combinations at each point.
std::vector<DoubleTangent> LambdaSample(const std::vector<DoublePoint>& pts, int extra,
                                        const Rng& root) {
  std::vector<DoubleTangent> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::vector<DoubleTangent> frame = Frame(pts[i]);
    for (const DoubleTangent& v : frame) out.push_back(v);
    Rng rng = root.Split(i);
    for (int e = 0; e < extra; ++e) {
      Vec v = Vec::Zero(frame.front().vec.size());
      double norm2 = 0.0;
      std::vector<double> c(frame.size());
      for (double& ci : c) {
        ci = rng.Normal();
        norm2 += ci * ci;
      }
      for (std::size_t j = 0; j < frame.size(); ++j) {
        v += (c[j] / std::sqrt(norm2)) * frame[j].vec;
      }
      out.push_back(DoubleTangent{pts[i], v});
    }
  }
  return out;
}

std::vector<double> Descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

bool StrictlyDecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

}  // namespace

CommandOutput EmbeddingReport(const RunConfig& cfg, const ThresholdRegistry& reg) {
  CommandOutput out;
  ReportDocument& doc = out.report;
  const DoubleDiskSpace space = SpaceOf(cfg);
  const Rng root(cfg.seed);
  const double tol = reg.Get("tol.identity");
  doc.Cite(reg, "tol.identity");

  Stopwatch exact;
  Rng point_rng = root.Split(0);
  std::vector<DoublePoint> pts;
  for (int i = 0; i < kIdentityPoints; ++i) pts.push_back(RandomPoint(space, point_rng));
  int plus = 0;
  double coord = 0.0;
  double equiv = 0.0;
  for (const DoublePoint& x : pts) {
    if (x.half == Half::kPlus) ++plus;
    const Vec phi = Phi(space, x);
    for (int i = 1; i <= cfg.n; ++i) coord = std::max(coord, std::abs(phi[i] - x.z[i]));
    equiv = std::max(equiv, (Phi(space, Involution(x)) + phi).cwiseAbs().maxCoeff());
  }
  const double center = Phi(space, CenterPoint(space, Half::kPlus))[0];
  const Curvature k = space.k();
  const double center_expected = HK(k, cfg.r, 2.0 * cfg.r) - HK(k, cfg.r, 0.0);
  doc.Add(Flag("points_in_both_halves", plus > 0 && plus < kIdentityPoints,
               Str(plus) + " of " + Str(kIdentityPoints) + " in the + half"));
  doc.Add(Compare("coordinate_recovery", coord, Relation::kLe, tol, "tol.identity"));
  doc.Add(Compare("phi_equivariance", equiv, Relation::kLe, tol, "tol.identity"));
  doc.Add(Compare("phi_center_value", std::abs(center - center_expected), Relation::kLe,
                  tol, "tol.identity"));
  const double exact_ms = exact.Millis();
  for (Check& c : doc.checks) c.millis = exact_ms;

  Stopwatch smooth;
  const SmoothedEmbedding emb(
      EmbeddingConfig::Make(space, cfg.d, cfg.eta, cfg.samples, cfg.seed));
  const std::vector<double> sm_equiv =
      MapIndex<double>(DefaultExec(), kSmoothedEquivariancePoints, [&](int i) {
        const DoublePoint& x = pts[i];
        return (emb.PhiD(Involution(x)) + emb.PhiD(x)).cwiseAbs().maxCoeff();
      });
  doc.Add(Compare("phid_equivariance", *std::max_element(sm_equiv.begin(), sm_equiv.end()),
                  Relation::kLe, tol, "tol.identity"));
  doc.checks.back().millis = smooth.Millis();

  Stopwatch scan;
  const double nu = kScanNu * cfg.r;
  const std::vector<DoublePoint> net = UniformNet(space, cfg.net, root.Split(1).NextU64());
  const int m = static_cast<int>(net.size());
  const std::vector<Vec> values =
      MapIndex<Vec>(DefaultExec(), m, [&](int i) { return emb.PhiD(net[i]); });
  const std::vector<double> nearest = MapIndex<double>(DefaultExec(), m, [&](int i) {
    double best = kInf;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      if (DoubleDistLowerBound(net[i], net[j]) <= nu && DoubleDist(net[i], net[j]) <= nu) {
        continue;
      }
      best = std::min(best, (values[i] - values[j]).norm());
    }
    return best;
  });
  const ScanResult sr = InjectivityScanValues(net, values, nu);
  doc.AddFrozen("injectivity_scan_separation", sr.min_separation / cfg.r, Relation::kGe,
                reg, KeyFor(reg, "embed.scan_separation", cfg))
      .millis = scan.Millis();

  doc.extra = {{"identityPoints", kIdentityPoints},
               {"plusHalf", plus},
               {"coordinateRecovery", coord},
               {"phiEquivariance", equiv},
               {"nu", nu},
               {"netSize", m},
               {"scanPairs", sr.pairs},
               {"minSeparation", sr.min_separation},
               {"worstPair", {sr.worst_a, sr.worst_b}}};

  CsvTable t;
  t.header = {"point", "half", "t"};
  for (int i = 0; i <= cfg.n; ++i) t.header.push_back("phi" + std::to_string(i));
  t.header.push_back("min_separation");
  for (int i = 0; i < m; ++i) {
    std::vector<std::string> row = {Str(i), Str(Sign(net[i].half)), Str(Polar(net[i]).t)};
    for (Eigen::Index j = 0; j < values[i].size(); ++j) row.push_back(Str(values[i][j]));
    row.push_back(Str(nearest[i]));
    t.rows.push_back(std::move(row));
  }
  out.tables.emplace_back("", std::move(t));
  return out;
}

CommandOutput ImmersionReport(const RunConfig& cfg, const ThresholdRegistry& reg) {
  CommandOutput out;
  ReportDocument& doc = out.report;
  const DoubleDiskSpace space = SpaceOf(cfg);
  const Rng root(cfg.seed);
  const SmoothedEmbedding emb(
      EmbeddingConfig::Make(space, cfg.d, cfg.eta, cfg.samples, cfg.seed));
  const std::vector<DoublePoint> net = UniformNet(space, cfg.net, root.Split(1).NextU64());
  const int m = static_cast<int>(net.size());
  const CertificateOptions opts;
  const double h = kRelativeStep * cfg.r;

  struct Row {
    std::optional<ImmersionCertificate> cert;
    std::string error;
    std::optional<InjectivityCheck> qi;
    std::string qi_error;
  };
  Stopwatch certs;
  const Rng cert_root = root.Split(2);
  const Rng qi_root = root.Split(3);
  const std::vector<Row> rows = MapIndex<Row>(DefaultExec(), m, [&](int i) {
    Row row;
    try {
      row.cert = Certify(emb, net[i], opts, cert_root.Split(i).NextU64());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCertificateFailure &&
          e.code() != ErrorCode::kNonInvertibleChart) {
        throw;
      }
      row.error = e.what();
      return row;
    }
    try {
      row.qi = QuantitativeInjectivityCheck(emb, *row.cert, row.cert->lambda, opts,
                                            kInjectivityPairs, qi_root.Split(i).NextU64());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInconsistency) throw;
      row.qi_error = e.what();
    }
    return row;
  });
  const double cert_ms = certs.Millis();

  int certified = 0, near = 0, near_drops_k = 0, qi_pass = 0, inconsistent = 0;
  double min_cert_lambda = kInf, min_rho = kInf;
  std::string first_failure;
  for (const Row& row : rows) {
    if (!row.cert) {
      if (first_failure.empty()) first_failure = row.error;
      continue;
    }
    ++certified;
    min_cert_lambda = std::min(min_cert_lambda, row.cert->lambda);
    min_rho = std::min(min_rho, row.cert->rho);
    if (row.cert->near_base >= 0) {
      ++near;
      if (row.cert->index == row.cert->near_base) ++near_drops_k;
    }
    if (!row.qi_error.empty()) ++inconsistent;
    if (row.qi && row.qi->hypotheses && row.qi->injective) ++qi_pass;
  }
  doc.Add(Compare("certified_points", certified, Relation::kEq, m));
  doc.checks.back().detail = first_failure;
  doc.checks.back().millis = cert_ms;
  doc.Add(Compare("near_base_drops_index_k", near_drops_k, Relation::kEq, near));
  doc.Add(Compare("injectivity_checks_passed", qi_pass, Relation::kEq, certified));
  doc.Add(Compare("injectivity_inconsistencies", inconsistent, Relation::kEq, 0));

  Stopwatch lambda_watch;
  const std::vector<DoubleTangent> sample = LambdaSample(net, 2, root.Split(4));
  const LambdaReport lr = LowerBoundLambda(emb, sample, h);
  doc.Add(Compare("lambda_positive", lr.lambda_est, Relation::kGt, 0.0));
  doc.AddFrozen("lambda_floor", lr.lambda_est, Relation::kGe, reg,
                KeyFor(reg, "immersion.lambda_floor", cfg));
  double interior = kInf;
  for (std::size_t s = 0; s < sample.size(); ++s) {
    const DoublePoint& x = sample[s].base;
    if (cfg.r - Polar(x).t < kInteriorDepth * cfg.r || NearBaseIndex(emb, x) >= 0) continue;
    interior = std::min(interior, lr.best[s]);
  }
  if (cfg.k == 0 && cfg.n == 2) {
    doc.Add(Compare("interior_lambda", interior, Relation::kGe, 0.8 / std::sqrt(2.0)));
  }
  doc.Add(Flag("addendum_index_avoidance", lr.addendum.holds,
               Str(lr.addendum.near_samples) + " samples near base points, worst " +
                   Str(lr.addendum.worst_avoiding)));
  const double lambda_ms = lambda_watch.Millis();
  for (std::size_t c = doc.checks.size() - 4; c < doc.checks.size(); ++c) {
    doc.checks[c].millis = lambda_ms;
  }

  // Interior sample with charts wide enough that both radii stay inside the
  // strainer radius (half the arm).
  Stopwatch modulus_watch;
  Rng mod_rng = root.Split(5);
  CertificateOptions wide = opts;
  wide.arm = 0.5;
  double small = 0.0, large = 0.0;
  for (int s = 0; s < kModulusPoints;) {
    const DoublePoint x = RandomPoint(space, mod_rng);
    const std::uint64_t seed = mod_rng.NextU64();
    if (Polar(x).t > 0.3 * cfg.r) continue;
    ++s;
    const SmoothedChart chart = CertificateChart(emb, x, wide, seed);
    small = std::max(small, EquicontinuityModulus(emb, chart, x, 0.05 * cfg.r,
                                                  kModulusProbes, h, seed).projected);
    large = std::max(large, EquicontinuityModulus(emb, chart, x, 0.2 * cfg.r,
                                                  kModulusProbes, h, seed).projected);
  }
  doc.Add(Compare("modulus_shrinks", small, Relation::kLt, large));
  doc.checks.back().detail = "modulus(0.05 r) vs modulus(0.2 r)";
  doc.checks.back().millis = modulus_watch.Millis();

  doc.extra = {{"netSize", m},
               {"certified", certified},
               {"nearBase", near},
               {"lambdaEst", lr.lambda_est},
               {"interiorLambda", interior},
               {"minCertificateLambda", min_cert_lambda},
               {"minCertificateRho", min_rho},
               {"modulusSmall", small},
               {"modulusLarge", large},
               {"lambdaSamples", sample.size()}};

  CsvTable t;
  t.header = {"point", "half", "t", "certified", "index", "lambda", "rho",
              "wobble", "near_base", "qi_hypotheses", "qi_ratio", "error"};
  for (int i = 0; i < m; ++i) {
    const Row& row = rows[i];
    std::vector<std::string> cells = {Str(i), Str(Sign(net[i].half)), Str(Polar(net[i]).t)};
    if (row.cert) {
      const ImmersionCertificate& c = *row.cert;
      cells.insert(cells.end(), {"1", Str(c.index), Str(c.lambda), Str(c.rho),
                                 Str(c.wobble), Str(c.near_base)});
    } else {
      cells.insert(cells.end(), {"0", "", "", "", "", ""});
    }
    cells.push_back(row.qi ? Str(row.qi->hypotheses ? 1 : 0) : "");
    cells.push_back(row.qi ? Str(row.qi->worst_ratio) : "");
    cells.push_back(row.cert ? row.qi_error : row.error);
    t.rows.push_back(std::move(cells));
  }
  out.tables.emplace_back("", std::move(t));
  return out;
}

CommandOutput GhReport(const RunConfig& cfg, const ThresholdRegistry& reg) {
  CommandOutput out;
  ReportDocument& doc = out.report;
  const DoubleDiskSpace space = SpaceOf(cfg);
  const Rng root(cfg.seed);
  const double tol = reg.Get("tol.identity");
  doc.Cite(reg, "tol.identity");

  Stopwatch disk_watch;
  const DiskSample disk = SampleFiniteSpace(space, cfg.net, root.Split(1).NextU64());
  const int nd = disk.space.size();
  doc.Add(Compare("identity_correspondence", GhUpper(disk.space, disk.space,
                                                     IdentityCorrespondence(nd)),
                  Relation::kEq, 0.0));
  const SmoothedEmbedding emb(
      EmbeddingConfig::Make(space, cfg.d, cfg.eta, cfg.samples, cfg.seed));
  const double disk_ms = disk_watch.Millis();
  doc.checks.back().millis = disk_ms;

  const std::vector<double> rhos = Descending(cfg.rho_list);
  std::vector<double> gh, ghq, gh_fixed, defect, lambda, eps, sep;
  std::vector<int> vertex_count;
  CsvTable t;
  t.header = {"rho", "vertices", "gh_upper", "gh_quotient", "equivariance_defect",
              "mesh_lambda", "lift_error", "mesh_min_separation"};
  Stopwatch mesh_watch;
  for (std::size_t level = 0; level < rhos.size(); ++level) {
    const double rho = rhos[level] * cfg.r;
    const MeshSurface mesh = PancakeSurface(cfg.r, rho, cfg.resolution);
    std::vector<std::vector<double>> rows;
    const std::vector<int> mnet = MeshNet(mesh, cfg.net, root.Split(2).NextU64(), &rows);
    const int nm = static_cast<int>(mnet.size());
    Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(nm, nm);
    Eigen::MatrixXd dmq = Eigen::MatrixXd::Zero(nm, nm);
    for (int i = 0; i < nm; ++i) {
      for (int j = i + 1; j < nm; ++j) {
        dm(i, j) = dm(j, i) = std::min(rows[i][mnet[j]], rows[j][mnet[i]]);
        dmq(i, j) = dmq(j, i) = std::min({dm(i, j), rows[i][mesh.involution[mnet[j]]],
                                          rows[j][mesh.involution[mnet[i]]]});
      }
    }
    std::vector<std::string> labels;
    for (int v : mnet) labels.push_back("v" + std::to_string(v));
    const FiniteMetricSpace ms = FiniteMetricSpace::Make(labels, dm);
    const FiniteMetricSpace msq = FiniteMetricSpace::Make(labels, dmq);
    // The double-disk side is sampled at the collapse images of the mesh
    // net, so the bound measures the collapse distortion rather than the
    // mismatch between two unrelated nets.
    std::vector<DoublePoint> images;
    std::vector<CrosscapPoint> images_q;
    for (int v : mnet) {
      images.push_back(CollapseVertex(mesh, v, space));
      images_q.emplace_back(images.back());
    }
    const FiniteMetricSpace ds = FiniteMetricSpace::Make(
        labels, DistanceMatrix(DefaultExec(), images,
                               [](const DoublePoint& a, const DoublePoint& b) {
                                 return DoubleDist(a, b);
                               }));
    const FiniteMetricSpace dsq = FiniteMetricSpace::Make(
        labels, DistanceMatrix(DefaultExec(), images_q,
                               [](const CrosscapPoint& a, const CrosscapPoint& b) {
                                 return CrosscapDist(a, b);
                               }));
    const Correspondence corr = NaturalCorrespondence(mesh, mnet, images);
    gh.push_back(GhUpper(ms, ds, corr));
    ghq.push_back(GhUpper(msq, dsq, corr));
    gh_fixed.push_back(GhUpper(ms, disk.space, NaturalCorrespondence(mesh, mnet, disk.points)));

    const LiftedEmbedding lift = LiftEmbedding(mesh, cfg.d, cfg.samples, cfg.seed);
    defect.push_back(lift.equivariance_defect);
    lambda.push_back(MeshLambda(mesh, lift));
    const std::vector<double> err = MapIndex<double>(DefaultExec(), nm, [&](int a) {
      const DoublePoint x = CollapseVertex(mesh, mnet[a], space);
      double worst = 0.0;
      for (std::size_t i = 0; i < lift.values.size(); ++i) {
        worst = std::max(worst, std::abs(lift.values[i][mnet[a]] -
                                         emb.SmoothedF(static_cast<int>(i), x).value));
      }
      return worst;
    });
    eps.push_back(*std::max_element(err.begin(), err.end()));
    double min_sep = kInf;
    for (int a = 0; a < nm; ++a) {
      for (int b = a + 1; b < nm; ++b) {
        if (dm(a, b) <= kScanNu * cfg.r) continue;
        double s2 = 0.0;
        for (const Eigen::VectorXd& f : lift.values) {
          s2 += (f[mnet[a]] - f[mnet[b]]) * (f[mnet[a]] - f[mnet[b]]);
        }
        min_sep = std::min(min_sep, std::sqrt(s2));
      }
    }
    sep.push_back(min_sep);
    vertex_count.push_back(static_cast<int>(mesh.vertices.size()));
    t.rows.push_back({Str(rho), Str(vertex_count.back()), Str(gh.back()), Str(ghq.back()),
                      Str(defect.back()), Str(lambda.back()), Str(eps.back()),
                      Str(sep.back())});
  }
  const double mesh_ms = mesh_watch.Millis();

  double ratio = 0.0, ratio_q = 0.0;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    ratio = std::max(ratio, gh[i] / (rhos[i] * cfg.r));
    ratio_q = std::max(ratio_q, ghq[i] / (rhos[i] * cfg.r));
  }
  const std::size_t begin = doc.checks.size();
  doc.Add(Flag("gh_strictly_decreasing", StrictlyDecreasing(gh)));
  doc.AddFrozen("gh_over_rho", ratio, Relation::kLe, reg, "gh.C");
  doc.Add(Flag("gh_quotient_strictly_decreasing", StrictlyDecreasing(ghq)));
  doc.AddFrozen("gh_quotient_over_rho", ratio_q, Relation::kLe, reg, "gh.C_quotient");
  doc.Add(Compare("mesh_equivariance_defect", *std::max_element(defect.begin(), defect.end()),
                  Relation::kLe, tol, "tol.identity"));
  doc.AddFrozen("lift_error_finest", eps.back(), Relation::kLe, reg, "gh.lift_error");

  // Double-disk lambda over the collapse images of the finest mesh net.
  const MeshSurface finest = PancakeSurface(cfg.r, rhos.back() * cfg.r, cfg.resolution);
  const std::vector<int> fnet = MeshNet(finest, cfg.net, root.Split(2).NextU64(), nullptr);
  std::vector<DoublePoint> images;
  for (int v : fnet) images.push_back(CollapseVertex(finest, v, space));
  const double disk_lambda =
      LowerBoundLambda(emb, LambdaSample(images, 2, root.Split(4)), kRelativeStep * cfg.r)
          .lambda_est;
  doc.Add(Compare("mesh_lambda_vs_disk", lambda.back(), Relation::kGe, 0.5 * disk_lambda));
  doc.checks.back().detail = "0.5 x double-disk lambda " + Str(disk_lambda);
  for (std::size_t c = begin; c < doc.checks.size(); ++c) doc.checks[c].millis = mesh_ms;

  doc.extra = {{"rho", rhos},          {"ghUpper", gh},
               {"ghQuotient", ghq},    {"ghFixedDiskNet", gh_fixed},
               {"equivarianceDefect", defect},
               {"meshLambda", lambda}, {"liftError", eps},
               {"meshMinSeparation", sep}, {"vertices", vertex_count},
               {"diskLambda", disk_lambda}, {"ghOverRho", ratio},
               {"ghQuotientOverRho", ratio_q}};
  out.tables.emplace_back("", std::move(t));
  return out;
}

CommandOutput SwissCheese(const RunConfig& cfg, const ThresholdRegistry& reg) {
  CommandOutput out;
  ReportDocument& doc = out.report;
  const double pi = std::numbers::pi;

  Stopwatch kappa_watch;
  CsvTable kt;
  kt.header = {"k", "n", "d", "kappa"};
  bool exact2 = true, exact3 = true, inside = true, trend = true;
  const std::vector<double> ds = {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5};
  for (int k = -1; k <= 1; ++k) {
    for (int n = 2; n <= 3; ++n) {
      double prev = kInf;
      for (double d : ds) {
        if (k == 1 && 2.0 * d > pi) continue;
        const double kappa = KappaRatio(CurvatureFromInt(k), n, d * cfg.r);
        kt.rows.push_back({Str(k), Str(n), Str(d * cfg.r), Str(kappa)});
        inside = inside && kappa > 0.0 && kappa < 1.0;
        if (k == 0 && n == 2) exact2 = exact2 && kappa == 0.75;
        if (k == 0 && n == 3) exact3 = exact3 && kappa == 0.875;
        if (k == 1) trend = trend && kappa < prev;
        prev = kappa;
      }
    }
  }
  doc.Add(Flag("kappa_flat_2d_exact", exact2, "kappa(0, 2, d) == 0.75"));
  doc.Add(Flag("kappa_flat_3d_exact", exact3, "kappa(0, 3, d) == 0.875"));
  doc.Add(Flag("kappa_in_unit_interval", inside));
  doc.Add(Flag("kappa_spherical_decreasing", trend));
  for (Check& c : doc.checks) c.millis = kappa_watch.Millis();

  Stopwatch mesh_watch;
  const double rho = Descending(cfg.rho_list).back() * cfg.r;
  const MeshSurface mesh = PancakeSurface(cfg.r, rho, cfg.resolution);
  const LiftedEmbedding lift = LiftEmbedding(mesh, cfg.d, cfg.samples, cfg.seed);
  const Eigen::VectorXd& f0 = lift.values[0];
  const std::vector<double> from_top = MeshDistancesFrom(mesh, mesh.top_center);
  const std::vector<double> from_bottom = MeshDistancesFrom(mesh, mesh.bottom_center);
  const double pole = kPoleBall * cfg.r;
  int stray = 0;
  const std::vector<int> extrema = LocalExtrema(mesh, f0);
  for (int v : extrema) {
    if (from_top[v] > pole && from_bottom[v] > pole) ++stray;
  }
  const std::size_t begin = doc.checks.size();
  doc.Add(Compare("f0_extrema_outside_poles", stray, Relation::kEq, 0));

  auto extract = [&](double level) {
    try {
      return LevelSetExtract(mesh, f0, level);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPerturbLevel) throw;
      return LevelSetExtract(mesh, f0, level + 1e-6);
    }
  };
  const LevelSet zero = extract(0.0);
  const bool one_closed = zero.components.size() == 1 && zero.components[0].closed;
  doc.Add(Compare("zero_level_components", static_cast<double>(zero.components.size()),
                  Relation::kEq, 1.0));
  doc.Add(Flag("zero_level_closed_invariant",
               one_closed && zero.components[0].image == 0,
               one_closed ? std::string("orientation kept: ") +
                                (zero.components[0].orientation_kept ? "yes" : "no")
                          : std::string()));
  const double top = f0.maxCoeff();
  const double depth = 0.05 * (top - f0.minCoeff());
  const LevelSet cap = extract(top - depth);
  double cap_reach = 0.0;
  for (const auto& line : cap.polylines) {
    for (const Eigen::Vector3d& p : line) {
      cap_reach = std::max(cap_reach, (p - mesh.vertices[mesh.top_center]).norm());
    }
  }
  doc.Add(Flag("near_max_level_single_cap",
               cap.components.size() == 1 && cap.components[0].closed && cap_reach < pole,
               "cap around the top center, reach " + Str(cap_reach)));

  const std::vector<CriticalVertex> critical = CriticalityScan(mesh, mesh.top_center, 0.1);
  double crit_reach = 0.0;
  for (const CriticalVertex& c : critical) crit_reach = std::max(crit_reach, from_bottom[c.vertex]);
  doc.Add(Compare("critical_count", static_cast<double>(critical.size()), Relation::kGe, 1.0));
  doc.AddFrozen("critical_radius", crit_reach / cfg.r, Relation::kLe, reg,
                "swiss.critical_radius");
  const MeshSurface flat = FlatDiskMesh(cfg.r, cfg.resolution);
  const std::vector<CriticalVertex> flat_critical = CriticalityScan(flat, flat.top_center, 0.1);
  const std::vector<double> flat_dist = MeshDistancesFrom(flat, flat.top_center);
  double flat_inner = kInf;
  for (const CriticalVertex& c : flat_critical) flat_inner = std::min(flat_inner, flat_dist[c.vertex]);
  doc.Add(Compare("flat_critical_near_boundary", flat_inner, Relation::kGe,
                  cfg.r - 2.0 * flat.spacing));
  for (std::size_t c = begin; c < doc.checks.size(); ++c) doc.checks[c].millis = mesh_watch.Millis();

  doc.extra = {{"rho", rho},
               {"vertices", mesh.vertices.size()},
               {"extrema", extrema},
               {"zeroLevelNodes", zero.components.empty() ? 0 : zero.components[0].nodes},
               {"capReach", cap_reach},
               {"criticalCount", critical.size()},
               {"criticalRadius", crit_reach},
               {"flatCriticalCount", flat_critical.size()},
               {"flatCriticalInnerRadius", flat_inner}};
  out.tables.emplace_back("", std::move(kt));
  return out;
}

CommandOutput SelfTest(const RunConfig& cfg, const ThresholdRegistry& reg) {
  CommandOutput out;
  ReportDocument& doc = out.report;
  struct Case {
    std::string command;
    int net;
    int samples;
    int resolution;
    std::vector<double> rho;
  };
  const std::vector<Case> cases = {
      {"embedding-report", 40, 64, 64, {0.2, 0.1, 0.05}},
      {"immersion-report", 12, 64, 64, {0.2, 0.1, 0.05}},
      {"gh-report", 40, 32, 32, {0.2, 0.1}},
      {"swiss-cheese", 0, 32, 32, {0.1}},
  };
  const Exec saved = DefaultExec();
  nlohmann::json runs = nlohmann::json::array();
  for (const Case& c : cases) {
    Stopwatch watch;
    RunConfig base = cfg;
    base.command = c.command;
    base.k = 0;
    base.n = 2;
    base.net = c.net;
    base.samples = c.samples;
    base.resolution = c.resolution;
    base.rho_list = c.rho;
    SetDefaultExec(Exec::kSerial);
    const CommandOutput first = RunCommand(base, reg);
    SetDefaultExec(Exec::kParallel);
    const RunConfig again = RunConfigFromJson(first.report.config);
    const CommandOutput second = RunCommand(again, reg);
    bool same = first.report.ToJson(false).dump() == second.report.ToJson(false).dump() &&
                first.tables.size() == second.tables.size();
    for (std::size_t i = 0; same && i < first.tables.size(); ++i) {
      same = ToCsv(first.tables[i].second) == ToCsv(second.tables[i].second);
    }
    doc.Add(Flag("deterministic " + c.command, same && !first.report.error,
                 first.report.error.value_or("")));
    doc.checks.back().millis = watch.Millis();
    runs.push_back({{"command", c.command},
                    {"passed", first.report.Passed()},
                    {"exitCode", first.exit_code}});
  }
  SetDefaultExec(saved);
  doc.extra = {{"runs", runs}};
  return out;
}

CommandOutput RunCommand(const RunConfig& raw, const ThresholdRegistry& reg) {
  Stopwatch watch;
  CommandOutput out;
  RunConfig cfg = Resolve(raw);
  out.report.command = cfg.command;
  out.report.config = ToJson(cfg);
  out.report.registry_path = reg.path();
  try {
    Validate(cfg);
    if (cfg.command == "embedding-report") out = EmbeddingReport(cfg, reg);
    else if (cfg.command == "immersion-report") out = ImmersionReport(cfg, reg);
    else if (cfg.command == "gh-report") out = GhReport(cfg, reg);
    else if (cfg.command == "swiss-cheese") out = SwissCheese(cfg, reg);
    else if (cfg.command == "self-test") out = SelfTest(cfg, reg);
    else Fail(ErrorCode::kInvalidInput, "unknown command '" + cfg.command + "'");
    out.report.command = cfg.command;
    out.report.config = ToJson(cfg);
    if (out.report.registry_path.empty()) out.report.registry_path = reg.path();
    out.exit_code = out.report.Passed() ? kExitPass : kExitCheckFailed;
  } catch (const Error& e) {
    out.report.error = e.what();
    const ErrorCode code = e.code();
    out.exit_code = code == ErrorCode::kInvalidInput || code == ErrorCode::kUnreachable ||
                            code == ErrorCode::kCorruptMetric
                        ? kExitInvalid
                        : kExitCheckFailed;
  }
  out.report.millis = watch.Millis();
  return out;
}

void WriteOutputs(const CommandOutput& result, const std::string& out) {
  if (out.empty()) return;
  const std::filesystem::path dir(out);
  const std::string stem = result.report.command.empty() ? "report" : result.report.command;
  WriteFileAtomic((dir / (stem + ".json")).string(), result.report.ToJson().dump(2) + "\n");
  for (const auto& [suffix, table] : result.tables) {
    WriteFileAtomic((dir / (stem + suffix + ".csv")).string(), ToCsv(table));
  }
}

}  // namespace crosscap
