#pragma once
#include "qnm/kernels.hpp"

namespace qnm::kernels::detail {
// Returns the AVX2 table, or nullptr when this build has no AVX2 TU.
const KernelTable* avx2_table();
}
