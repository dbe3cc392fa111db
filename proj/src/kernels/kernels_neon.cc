// Copyright 2026 The ctrlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <arm_neon.h>

#include <limits>

#include "ctrlgame/kernels.h"

namespace ctrlgame::kernels::detail {
namespace {

void ScaleByComplementNeon(double* survival, const double* eff, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t e = vld1q_f64(eff + j);
    const float64x2_t s = vld1q_f64(survival + j);
    vst1q_f64(survival + j, vmulq_f64(s, vsubq_f64(one, e)));
  }
  for (; j < n; ++j) survival[j] *= (1.0 - eff[j]);
}

void ComplementNeon(double* values, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) vst1q_f64(values + j, vsubq_f64(one, vld1q_f64(values + j)));
  for (; j < n; ++j) values[j] = 1.0 - values[j];
}

void AccumulateNeon(double* totals, const double* column, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(totals + i, vaddq_f64(vld1q_f64(totals + i), vld1q_f64(column + i)));
  }
  for (; i < n; ++i) totals[i] += column[i];
}

double MaxValueNeon(const double* values, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vdupq_n_f64(best);
    for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vld1q_f64(values + i));
    best = vmaxvq_f64(acc);
  }
  for (; i < n; ++i) {
    if (values[i] > best) best = values[i];
  }
  return best;
}

void MaskAtLeastNeon(unsigned char* keep, const double* values, double threshold,
                     std::size_t n) {
  const float64x2_t t = vdupq_n_f64(threshold);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t ge = vcgeq_f64(vld1q_f64(values + i), t);
    keep[i] = keep[i] && vgetq_lane_u64(ge, 0) != 0;
    keep[i + 1] = keep[i + 1] && vgetq_lane_u64(ge, 1) != 0;
  }
  for (; i < n; ++i) keep[i] = keep[i] && values[i] >= threshold;
}

}  // namespace

const KernelTable kNeonTable{Backend::kNeon, ScaleByComplementNeon, ComplementNeon,
                             AccumulateNeon, MaxValueNeon,          MaskAtLeastNeon};

}  // namespace ctrlgame::kernels::detail
