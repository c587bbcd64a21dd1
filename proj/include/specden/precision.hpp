#pragma once

#include <string>

#include "specden/errors.hpp"

namespace specden {

// Element precision of vector storage. Scalars that gate the Lanczos
// recurrence (dot products, alpha, beta) are always accumulated in f64;
// the precision here only controls how vector elements are rounded after
// each elementwise operation. In f32 mode every stored element is rounded
// to the nearest IEEE-754 single, so the pipeline reproduces a genuine
// float32 storage path bit-for-bit while keeping one code path.
enum class Precision { f32, f64 };

inline double round_elem(double x, Precision p) {
  return p == Precision::f32 ? static_cast<double>(static_cast<float>(x)) : x;
}

// Unit roundoff: half an ulp at 1.0.
inline double unit_roundoff(Precision p) {
  return p == Precision::f32 ? 0x1p-24 : 0x1p-53;
}

inline const char* precision_name(Precision p) {
  return p == Precision::f32 ? "f32" : "f64";
}

inline Precision parse_precision(const std::string& s) {
  if (s == "f32") return Precision::f32;
  if (s == "f64") return Precision::f64;
  throw config_error("unknown precision '" + s + "' (expected f32 or f64)");
}

}  // namespace specden
