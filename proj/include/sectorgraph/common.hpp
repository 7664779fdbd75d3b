#pragma once

#include <cmath>
#include <string_view>

namespace sg {

/// A numeric value with a standard error (0 for exactly evaluated quantities).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

enum class DegreeKind { Out, In };

inline std::string_view to_string(DegreeKind kind) { return kind == DegreeKind::Out ? "out" : "in"; }

}  // namespace sg
