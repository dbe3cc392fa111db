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

#include <immintrin.h>

#include <limits>

#include "ctrlgame/kernels.h"

// Compiled with -mavx2 only; reached through the dispatcher after a cpuid
// check. No FMA: 1 - e and the product stay two separately rounded ops.
namespace ctrlgame::kernels::detail {
namespace {

void ScaleByComplementAvx2(double* survival, const double* eff, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d e = _mm256_loadu_pd(eff + j);
    const __m256d s = _mm256_loadu_pd(survival + j);
    _mm256_storeu_pd(survival + j, _mm256_mul_pd(s, _mm256_sub_pd(one, e)));
  }
  for (; j < n; ++j) survival[j] *= (1.0 - eff[j]);
}

void ComplementAvx2(double* values, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    _mm256_storeu_pd(values + j, _mm256_sub_pd(one, _mm256_loadu_pd(values + j)));
  }
  for (; j < n; ++j) values[j] = 1.0 - values[j];
}

void AccumulateAvx2(double* totals, const double* column, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(totals + i);
    _mm256_storeu_pd(totals + i, _mm256_add_pd(t, _mm256_loadu_pd(column + i)));
  }
  for (; i < n; ++i) totals[i] += column[i];
}

double MaxValueAvx2(const double* values, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_set1_pd(best);
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(values + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (double v : lanes) {
      if (v > best) best = v;
    }
  }
  for (; i < n; ++i) {
    if (values[i] > best) best = values[i];
  }
  return best;
}

void MaskAtLeastAvx2(unsigned char* keep, const double* values, double threshold,
                     std::size_t n) {
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ge = _mm256_cmp_pd(_mm256_loadu_pd(values + i), t, _CMP_GE_OQ);
    const int bits = _mm256_movemask_pd(ge);
    for (int k = 0; k < 4; ++k) keep[i + k] = keep[i + k] && ((bits >> k) & 1);
  }
  for (; i < n; ++i) keep[i] = keep[i] && values[i] >= threshold;
}

}  // namespace

const KernelTable kAvx2Table{Backend::kAvx2, ScaleByComplementAvx2, ComplementAvx2,
                             AccumulateAvx2, MaxValueAvx2,          MaskAtLeastAvx2};

}  // namespace ctrlgame::kernels::detail
