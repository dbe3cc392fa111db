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

#ifndef CTRLGAME_KERNELS_H_
#define CTRLGAME_KERNELS_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops of the game-matrix build and of the solver.
//
// Every kernel is elementwise along the vectorized axis and performs the same
// IEEE operations in the same order per element as the scalar reference, so
// all backends produce bit-identical results. Spans passed together must have
// equal length.
namespace ctrlgame::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  // survival[j] *= (1 - effectiveness[j])
  void (*scale_by_complement)(double* survival, const double* effectiveness,
                              std::size_t n);
  // values[j] = 1 - values[j]
  void (*complement)(double* values, std::size_t n);
  // totals[i] += column[i]
  void (*accumulate)(double* totals, const double* column, std::size_t n);
  // max over values; -inf for n == 0
  double (*max_value)(const double* values, std::size_t n);
  // keep[i] = keep[i] && values[i] >= threshold
  void (*mask_at_least)(unsigned char* keep, const double* values, double threshold,
                        std::size_t n);
};

std::string_view BackendName(Backend b);

// Backends compiled in and supported by the running CPU; scalar is always
// first.
std::vector<Backend> AvailableBackends();
const KernelTable& Table(Backend b);

// The table used by the library. Chosen once at first use: the widest
// supported backend, unless CTRLGAME_SIMD=scalar|avx2|neon names another.
const KernelTable& Active();

inline void ScaleByComplement(std::span<double> survival,
                              std::span<const double> effectiveness) {
  Active().scale_by_complement(survival.data(), effectiveness.data(), survival.size());
}
inline void Complement(std::span<double> values) {
  Active().complement(values.data(), values.size());
}
inline void Accumulate(std::span<double> totals, std::span<const double> column) {
  Active().accumulate(totals.data(), column.data(), totals.size());
}
inline double MaxValue(std::span<const double> values) {
  return Active().max_value(values.data(), values.size());
}
inline void MaskAtLeast(std::span<unsigned char> keep, std::span<const double> values,
                        double threshold) {
  Active().mask_at_least(keep.data(), values.data(), threshold, keep.size());
}

namespace detail {
extern const KernelTable kScalarTable;
#if defined(CTRLGAME_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(CTRLGAME_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace ctrlgame::kernels

#endif  // CTRLGAME_KERNELS_H_
