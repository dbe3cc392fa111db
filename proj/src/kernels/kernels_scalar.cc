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

#include <limits>

#include "ctrlgame/kernels.h"

namespace ctrlgame::kernels::detail {
namespace {

void ScaleByComplementScalar(double* survival, const double* eff, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) survival[j] *= (1.0 - eff[j]);
}

void ComplementScalar(double* values, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) values[j] = 1.0 - values[j];
}

void AccumulateScalar(double* totals, const double* column, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) totals[i] += column[i];
}

double MaxValueScalar(const double* values, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] > best) best = values[i];
  }
  return best;
}

void MaskAtLeastScalar(unsigned char* keep, const double* values, double threshold,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) keep[i] = keep[i] && values[i] >= threshold;
}

}  // namespace

const KernelTable kScalarTable{Backend::kScalar, ScaleByComplementScalar,
                               ComplementScalar,   AccumulateScalar,
                               MaxValueScalar,     MaskAtLeastScalar};

}  // namespace ctrlgame::kernels::detail
