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
// Index-parallel loops. Every kernel writes results by index and reduces
// serially, so serial and parallel execution give identical bits.

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <exception>
#include <limits>
#include <mutex>
#include <vector>

namespace crosscap {

enum class Exec { kSerial, kParallel };

// Runs f(i) for i in [0, count). The first exception thrown by any
// iteration is rethrown after the loop.
template <class F>
void ForEachIndex(Exec exec, int count, F&& f) {
  if (exec == Exec::kSerial) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      f(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

template <class T, class F>
std::vector<T> MapIndex(Exec exec, int count, F&& f) {
  std::vector<T> out(count);
  ForEachIndex(exec, count, [&](int i) { out[i] = f(i); });
  return out;
}

// Symmetric matrix of dist(points[i], points[j]); the upper triangle is
// computed and mirrored so symmetry is exact.
template <class P, class Dist>
Eigen::MatrixXd DistanceMatrix(Exec exec, const std::vector<P>& points,
                               Dist&& dist) {
  const int m = static_cast<int>(points.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  ForEachIndex(exec, m, [&](int i) {
    for (int j = i + 1; j < m; ++j) d(i, j) = dist(points[i], points[j]);
  });
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) d(j, i) = d(i, j);
  }
  return d;
}

struct PairMin {
  double value = std::numeric_limits<double>::infinity();
  int i = -1;
  int j = -1;
  long pairs = 0;
};

// Minimum of value(i, j) over i < j with keep(i, j).
template <class Keep, class Value>
PairMin MinOverPairs(Exec exec, int count, Keep&& keep, Value&& value) {
  std::vector<PairMin> rows(count);
  ForEachIndex(exec, count, [&](int i) {
    PairMin& row = rows[i];
    for (int j = i + 1; j < count; ++j) {
      if (!keep(i, j)) continue;
      ++row.pairs;
      const double v = value(i, j);
      if (v < row.value) {
        row.value = v;
        row.i = i;
        row.j = j;
      }
    }
  });
  PairMin out;
  for (const PairMin& row : rows) {
    out.pairs += row.pairs;
    if (row.value < out.value) {
      out.value = row.value;
      out.i = row.i;
      out.j = row.j;
    }
  }
  return out;
}

// Process-wide default used by the library entry points.
Exec DefaultExec();
void SetDefaultExec(Exec exec);

}  // namespace crosscap
