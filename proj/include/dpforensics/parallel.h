/*
 * Copyright 2026 The dpforensics Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Trial loops with an OpenMP path and a serial reference path. Both visit
// every index exactly once; callers derive per-index randomness so results do
// not depend on the schedule.

#ifndef DPFORENSICS_PARALLEL_H_
#define DPFORENSICS_PARALLEL_H_

#include <cstdint>

namespace dpforensics {

enum class Execution { kSerial, kParallel };

// Number of i in [0, n) with pred(i) true.
template <typename Pred>
int64_t CountTrials(int64_t n, Execution exec, const Pred& pred) {
  int64_t count = 0;
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (int64_t i = 0; i < n; ++i) {
      if (pred(i)) ++count;
    }
  } else {
    for (int64_t i = 0; i < n; ++i) {
      if (pred(i)) ++count;
    }
  }
  return count;
}

// Calls fn(i) for i in [0, n). fn must only write to slot i of its outputs.
template <typename Fn>
void ForEachTrial(int64_t n, Execution exec, const Fn& fn) {
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int64_t i = 0; i < n; ++i) fn(i);
  } else {
    for (int64_t i = 0; i < n; ++i) fn(i);
  }
}

}  // namespace dpforensics

#endif  // DPFORENSICS_PARALLEL_H_
