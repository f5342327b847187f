// Copyright 2026 The qdist Authors
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

#pragma once

// Dense inner loops shared by the partitioners and the mapping solvers.
//
// Every kernel has a scalar reference and (on x86-64) an AVX2 variant. Both
// accumulate in four interleaved lanes that are folded as (l0 + l1) + (l2 + l3)
// before the tail is added in order, so the two variants return bit-identical
// results. The active variant is chosen once at startup from CPUID and can be
// overridden with QDIST_ISA=scalar|avx2.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace qdist::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();
/// Switches the dispatch table. Throws DomainError if the CPU lacks `isa`.
void set_isa(Isa isa);

/// Sum of row[i] over the i with labels[i] == label. Spans must match in size.
double masked_row_sum(std::span<const double> row,
                      std::span<const std::int32_t> labels, std::int32_t label);

/// Sum over i of a[i] * b[index[i]]. `index` must match `a` in size and
/// every entry must address `b`.
double gather_dot(std::span<const double> a, std::span<const double> b,
                  std::span<const std::int32_t> index);

namespace scalar {
double masked_row_sum(const double* row, const std::int32_t* labels,
                      std::size_t n, std::int32_t label);
double gather_dot(const double* a, const double* b, const std::int32_t* index,
                  std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define QDIST_HAVE_AVX2_KERNELS 1
namespace avx2 {
double masked_row_sum(const double* row, const std::int32_t* labels,
                      std::size_t n, std::int32_t label);
double gather_dot(const double* a, const double* b, const std::int32_t* index,
                  std::size_t n);
}  // namespace avx2
#else
#define QDIST_HAVE_AVX2_KERNELS 0
#endif

}  // namespace qdist::kernels
