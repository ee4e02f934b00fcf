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

#include "dpforensics/rng.h"

// RngStream is header-only; this translation unit pins the constants that
// reports and replays depend on.
namespace dpforensics {

static_assert(Mix64(0) == 0, "splitmix64 finalizer fixes zero");
static_assert(RngStream::kWeyl == 0x9e3779b97f4a7c15ULL);

}  // namespace dpforensics
