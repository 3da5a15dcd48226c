#include "kernels_internal.hpp"

namespace qnm::kernels {

namespace detail {

const KernelTable scalar_table = {
    scalar::caxpy, scalar::caxpyc, scalar::cscal, scalar::cdotc,
    scalar::cdotu, scalar::rank1_herm, scalar::rank1, scalar::diag_axpy};

namespace {
const KernelTable* resolve() {
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        if (const KernelTable* t = avx2_table()) return t;
    }
#endif
    return &scalar_table;
}
const KernelTable* resolved = resolve();
}

const KernelTable* active = resolved;

}  // namespace detail

const char* active_isa() {
    return detail::active == &detail::scalar_table ? "scalar" : "avx2";
}

const char* force_scalar(bool on) {
    const char* prev = active_isa();
    detail::active = on ? &detail::scalar_table : detail::resolved;
    return prev;
}

}  // namespace qnm::kernels
