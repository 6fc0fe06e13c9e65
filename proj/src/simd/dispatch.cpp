// Copyright 2026 The DST Augment Authors
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

#include "dst/errors.hpp"
#include "dst/simd/kernels.hpp"

namespace dst::simd {

#if defined(DST_HAVE_AVX2)
const Kernels& avx2_kernel_table() noexcept;
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(DST_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() noexcept {
    const Isa best = detected_isa();
    if (const char* env = std::getenv("DST_ISA")) {
        const std::string want(env);
        if (want == "scalar") return Isa::scalar;
        if (want == "avx2" && best == Isa::avx2) return Isa::avx2;
    }
    return best;
}

std::atomic<Isa>& active_slot() noexcept {
    static std::atomic<Isa> slot{initial_isa()};
    return slot;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

const Kernels* avx2_kernels() noexcept {
#if defined(DST_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &avx2_kernel_table() : nullptr;
#else
    return nullptr;
#endif
}

Isa detected_isa() noexcept { return avx2_kernels() != nullptr ? Isa::avx2 : Isa::scalar; }

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (isa == Isa::avx2 && avx2_kernels() == nullptr)
        throw InvalidParameter("AVX2 kernels are not available on this machine");
    active_slot().store(isa, std::memory_order_relaxed);
}

const Kernels& kernels(Isa isa) {
    if (isa == Isa::avx2) {
        if (const Kernels* k = avx2_kernels()) return *k;
        throw InvalidParameter("AVX2 kernels are not available on this machine");
    }
    return scalar_kernels();
}

const Kernels& active_kernels() noexcept {
    if (active_isa() == Isa::avx2) return *avx2_kernels();
    return scalar_kernels();
}

}  // namespace dst::simd
