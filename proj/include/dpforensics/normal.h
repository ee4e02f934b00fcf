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

// Standard normal CDF and quantile.

#ifndef DPFORENSICS_NORMAL_H_
#define DPFORENSICS_NORMAL_H_

namespace dpforensics {

// 0.5 * erfc(-x / sqrt(2)). Full relative accuracy in both tails.
double NormalCdf(double x);

// Inverse of NormalCdf on (0, 1): Acklam's rational approximation followed by
// one Halley step, ~1e-15 relative. Returns -inf at 0 and +inf at 1.
double NormalQuantile(double p);

}  // namespace dpforensics

#endif  // DPFORENSICS_NORMAL_H_
