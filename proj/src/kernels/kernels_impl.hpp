#pragma once

#include "psaga/kernels.hpp"

namespace psaga::kernels::detail {

extern const Table scalar_table;
#if defined(PSAGA_HAVE_AVX2)
extern const Table avx2_table;
#endif

}  // namespace psaga::kernels::detail
