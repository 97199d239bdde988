// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace breather {

// Compensated accumulator. The energy, derivative and inner-product sums feed
// central-difference identity checks at the 1e-10 level, where plain
// summation error (~N eps) would dominate.
struct Kahan {
  double sum = 0.0;
  double c = 0.0;

  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

} // namespace breather
