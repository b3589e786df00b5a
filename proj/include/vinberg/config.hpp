#pragma once

#include <mpfr.h>

namespace vinberg {

// Starting precision for certified interval refinement. Overridable through
// the LOBELL_PRECISION_BITS environment variable; refinement loops double
// from here until a decision is reached, so this only affects speed.
mpfr_prec_t start_precision_bits();

// Hard ceiling for refinement loops. Reaching it means a zero value slipped
// past an exact zero test, i.e. a bug, so we throw instead of spinning.
inline constexpr mpfr_prec_t kMaxPrecisionBits = 1 << 24;

}  // namespace vinberg
