#pragma once

#include <cmath>
#include <string>

#include "error.hpp"

namespace bucketwheel::detail {

template <class E = ValidationError>
inline void require(bool ok, const std::string& message) {
  if (!ok) throw E(message);
}

inline void require_finite(double value, const std::string& name) {
  if (!std::isfinite(value)) throw ValidationError(name + " must be finite");
}

inline void require_positive(double value, const std::string& name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ValidationError(name + " must be positive and finite (got " + std::to_string(value) + ")");
}

inline void require_non_negative(double value, const std::string& name) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw ValidationError(name + " must be non-negative and finite (got " + std::to_string(value) + ")");
}

}  // namespace bucketwheel::detail
