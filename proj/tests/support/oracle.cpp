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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>

namespace crosscap::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

double Route(const DoublePoint& x, const DoublePoint& y, const Vec& u) {
  const DoublePoint sx = SeamPoint(x.space, u, x.half);
  const DoublePoint sy = SeamPoint(y.space, u, y.half);
  return ModelDist(x.z, sx.z) + ModelDist(sy.z, y.z);
}

Vec Circle(double phi) {
  Vec u(2);
  u << std::cos(phi), std::sin(phi);
  return u;
}

Vec SphereDir(double theta, double phi) {
  Vec u(3);
  u << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
  return u;
}

// Ternary search of a unimodal restriction.
double Ternary(const std::function<double(double)>& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (f(a) < f(b)) hi = b;
    else lo = a;
  }
  return f(0.5 * (lo + hi));
}

// Compass search in (theta, phi) with shrinking steps.
double Compass(const std::function<double(double, double)>& f, double theta, double phi,
               double step) {
  double best = f(theta, phi);
  while (step > 1e-12) {
    bool moved = false;
    for (auto [dt, dp] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1},
                          {1, -1}, {-1, 1}}) {
      const double v = f(theta + dt * step, phi + dp * step);
      if (v < best) {
        best = v;
        theta += dt * step;
        phi += dp * step;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace

std::vector<Vec> SpiralSphere(int count) {
  std::vector<Vec> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    Vec u(3);
    u << rad * std::cos(golden * i), rad * std::sin(golden * i), z;
    out.push_back(u);
  }
  return out;
}

double SeamSearchDist(const DoublePoint& x, const DoublePoint& y, int grid, int refine) {
  const int n = x.space.n();
  std::vector<std::pair<double, int>> scored;
  if (n == 2) {
    const double cell = 2.0 * kPi / grid;
    for (int i = 0; i < grid; ++i) scored.emplace_back(Route(x, y, Circle(i * cell)), i);
    std::partial_sort(scored.begin(), scored.begin() + refine, scored.end());
    double best = scored.front().first;
    for (int c = 0; c < refine; ++c) {
      const double mid = scored[c].second * cell;
      best = std::min(best, Ternary([&](double p) { return Route(x, y, Circle(p)); },
                                    mid - cell, mid + cell));
    }
    return best;
  }
  if (n != 3) return std::numeric_limits<double>::quiet_NaN();
  const std::vector<Vec> dirs = SpiralSphere(grid);
  for (int i = 0; i < grid; ++i) scored.emplace_back(Route(x, y, dirs[i]), i);
  std::partial_sort(scored.begin(), scored.begin() + refine, scored.end());
  double best = scored.front().first;
  const auto f = [&](double t, double p) { return Route(x, y, SphereDir(t, p)); };
  const double spacing = std::sqrt(4.0 * kPi / grid);
  for (int c = 0; c < refine; ++c) {
    const Vec& u = dirs[scored[c].second];
    const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
    const double phi = std::atan2(u[1], u[0]);
    best = std::min(best, Compass(f, theta, phi, spacing));
  }
  return best;
}

double BruteDist(const DoublePoint& x, const DoublePoint& y) {
  if (x.half == y.half) return ModelDist(x.z, y.z);
  return SeamSearchDist(x, y);
}

double ClosedBallVolume(Curvature k, int n, double rho) {
  if (n == 2) {
    switch (k) {
      case Curvature::kFlat: return kPi * rho * rho;
      case Curvature::kSpherical: return 2.0 * kPi * (1.0 - std::cos(rho));
      case Curvature::kHyperbolic: return 2.0 * kPi * (std::cosh(rho) - 1.0);
    }
  }
  if (n == 3) {
    switch (k) {
      case Curvature::kFlat: return 4.0 / 3.0 * kPi * rho * rho * rho;
      case Curvature::kSpherical: return kPi * (2.0 * rho - std::sin(2.0 * rho));
      case Curvature::kHyperbolic: return kPi * (std::sinh(2.0 * rho) - 2.0 * rho);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double SimpsonBallVolume(Curvature k, int n, double rho, int panels) {
  const auto sn = [k](double t) {
    switch (k) {
      case Curvature::kFlat: return t;
      case Curvature::kSpherical: return std::sin(t);
      case Curvature::kHyperbolic: return std::sinh(t);
    }
    return 0.0;
  };
  const double area = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
  const double h = rho / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::pow(sn(i * h), n - 1);
  }
  return area * sum * h / 3.0;
}

}  // namespace crosscap::oracle
