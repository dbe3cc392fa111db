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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ctrlgame/kernels.h"

namespace ctrlgame::kernels {
namespace {

bool Supported(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(CTRLGAME_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(CTRLGAME_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& Choose() {
  const auto available = AvailableBackends();
  if (const char* env = std::getenv("CTRLGAME_SIMD")) {
    const std::string want(env);
    for (Backend b : available) {
      if (BackendName(b) == want) return Table(b);
    }
  }
  return Table(available.back());
}

}  // namespace

std::string_view BackendName(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

std::vector<Backend> AvailableBackends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
    if (Supported(b)) out.push_back(b);
  }
  return out;
}

const KernelTable& Table(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return detail::kScalarTable;
#if defined(CTRLGAME_HAVE_AVX2)
    case Backend::kAvx2:
      return detail::kAvx2Table;
#endif
#if defined(CTRLGAME_HAVE_NEON)
    case Backend::kNeon:
      return detail::kNeonTable;
#endif
    default:
      throw std::invalid_argument("kernel backend '" + std::string(BackendName(b)) +
                                  "' is not compiled in");
  }
}

const KernelTable& Active() {
  static const KernelTable& table = Choose();
  return table;
}

}  // namespace ctrlgame::kernels
