#include "inversio/numeric.hpp"

#include <string>

#include "inversio/errors.hpp"

namespace inversio {

NumericMode NumericMode::floating(int precision_bits) {
  if (precision_bits != 53) {
    throw UnsupportedError("float precision of " + std::to_string(precision_bits) +
                           " bits is not available; only 53 (IEEE double)");
  }
  return NumericMode(Kind::Float, precision_bits);
}

}  // namespace inversio
