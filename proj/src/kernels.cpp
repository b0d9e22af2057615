// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace fdmimo::kernels {
namespace {

const KernelTable* initial_choice() {
    if (const char* env = std::getenv("FDMIMO_KERNELS"); env && std::strcmp(env, "scalar") == 0)
        return &scalar_table();
    if (const KernelTable* t = avx2_table()) return t;
    return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{initial_choice()};
    return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(const char* name) {
    if (std::strcmp(name, "scalar") == 0) {
        current().store(&scalar_table());
        return true;
    }
    if (std::strcmp(name, "avx2") == 0) {
        if (const KernelTable* t = avx2_table()) {
            current().store(t);
            return true;
        }
    }
    return false;
}

}  // namespace fdmimo::kernels
