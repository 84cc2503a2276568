// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <string>

namespace pontdm {

// Ratios print with 6 significant digits so reports stay byte-stable.
inline std::string format_ratio(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

}  // namespace pontdm
