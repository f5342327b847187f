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

#include <atomic>
#include <cstdlib>
#include <string>

#include "qdist/error.hpp"
#include "qdist/kernels.hpp"

namespace qdist::kernels {

namespace {

struct Table {
  Isa isa;
  double (*masked_row_sum)(const double*, const std::int32_t*, std::size_t,
                           std::int32_t);
  double (*gather_dot)(const double*, const double*, const std::int32_t*,
                       std::size_t);
};

constexpr Table kScalarTable{Isa::kScalar, &scalar::masked_row_sum,
                             &scalar::gather_dot};
#if QDIST_HAVE_AVX2_KERNELS
constexpr Table kAvx2Table{Isa::kAvx2, &avx2::masked_row_sum,
                           &avx2::gather_dot};
#endif

const Table* table_for(Isa isa) {
#if QDIST_HAVE_AVX2_KERNELS
  if (isa == Isa::kAvx2) return &kAvx2Table;
#endif
  (void)isa;
  return &kScalarTable;
}

const Table* initial_table() {
  if (const char* env = std::getenv("QDIST_ISA")) {
    const std::string want(env);
    if (want == "scalar") return &kScalarTable;
    if (want == "avx2" && isa_supported(Isa::kAvx2)) return table_for(Isa::kAvx2);
  }
  return isa_supported(Isa::kAvx2) ? table_for(Isa::kAvx2) : &kScalarTable;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

bool isa_supported(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if QDIST_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load()->isa; }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError("kernel ISA not supported on this CPU: " +
                      std::string(isa_name(isa)));
  }
  current().store(table_for(isa));
}

double masked_row_sum(std::span<const double> row,
                      std::span<const std::int32_t> labels,
                      std::int32_t label) {
  if (labels.size() != row.size()) throw DomainError("masked_row_sum: size mismatch");
  return current().load()->masked_row_sum(row.data(), labels.data(), row.size(),
                                          label);
}

double gather_dot(std::span<const double> a, std::span<const double> b,
                  std::span<const std::int32_t> index) {
  if (index.size() != a.size()) throw DomainError("gather_dot: size mismatch");
  return current().load()->gather_dot(a.data(), b.data(), index.data(),
                                      a.size());
}

}  // namespace qdist::kernels
