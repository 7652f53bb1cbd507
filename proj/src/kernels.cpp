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

#include "crosscap/kernels.hpp"

#include <atomic>

namespace crosscap {
namespace {
std::atomic<Exec> g_exec{Exec::kParallel};
}  // namespace

Exec DefaultExec() { return g_exec.load(); }
void SetDefaultExec(Exec exec) { g_exec.store(exec); }

}  // namespace crosscap
