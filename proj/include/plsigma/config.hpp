#pragma once

#include <cstdlib>
#include <mpfr.h>
#include <string>

namespace plsigma {

/// Engine-wide resource knobs. The precision cap bounds interval refinement
/// in ray comparison; sign decisions on single LogReals refine past it
/// because they always terminate.
struct RunConfig {
  int radius = 6;
  size_t element_cap = 1000000;
  mpfr_prec_t precision_cap = 4096;

  static RunConfig from_env() {
    RunConfig c;
    if (const char* s = std::getenv("PLSIGMA_PRECISION_BITS")) {
      long v = std::strtol(s, nullptr, 10);
      if (v > 0) c.precision_cap = static_cast<mpfr_prec_t>(v);
    }
    return c;
  }
};

}  // namespace plsigma
