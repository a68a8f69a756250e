#pragma once

#include <string>

namespace variety {

/// printf("%.{digits}g"), with infinities spelled "inf" and NaN "nan" so the
/// output does not depend on the C library's spelling.
[[nodiscard]] std::string format_real(double value, int significant_digits = 6);

/// Fixed-point with `decimals` digits after the point.
[[nodiscard]] std::string format_fixed(double value, int decimals);

}  // namespace variety
