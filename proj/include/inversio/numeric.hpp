#ifndef INVERSIO_NUMERIC_HPP
#define INVERSIO_NUMERIC_HPP

#include <optional>

#include "inversio/rational.hpp"

namespace inversio {

/// Selects exact rational evaluation or IEEE double evaluation.
class NumericMode {
 public:
  enum class Kind { Exact, Float };

  static NumericMode exact() { return NumericMode(Kind::Exact, 0); }
  /// Only 53-bit (double) precision is implemented.
  static NumericMode floating(int precision_bits = 53);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  int float_precision() const { return precision_bits_; }

  friend bool operator==(const NumericMode&, const NumericMode&) = default;

 private:
  NumericMode(Kind kind, int bits) : kind_(kind), precision_bits_(bits) {}
  Kind kind_;
  int precision_bits_;
};

/// A probability produced in either mode. `exact` is set only by Exact mode;
/// `value` is always populated (rounded from the exact value when present).
struct Probability {
  std::optional<Rational> exact;
  double value = 0.0;

  static Probability from_exact(Rational q) {
    Probability p;
    p.value = q.to_double();
    p.exact = std::move(q);
    return p;
  }
  static Probability from_float(double v) {
    Probability p;
    p.value = v;
    return p;
  }
  bool is_exact() const { return exact.has_value(); }
};

}  // namespace inversio

#endif  // INVERSIO_NUMERIC_HPP
