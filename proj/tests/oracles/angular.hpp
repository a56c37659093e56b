#pragma once

// Clebsch-Gordan coefficients from the Racah closed form, all arguments given
// as twice their value.

#include <algorithm>
#include <cmath>

namespace oracle {

inline double fact(int n) { return std::tgamma(n + 1.0); }

inline double clebsch_gordan(int j1, int m1, int j2, int m2, int j, int m) {
  if (m1 + m2 != m) return 0.0;
  if (j < std::abs(j1 - j2) || j > j1 + j2) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m) > j) return 0.0;
  // Integer versions of the usual half-integer combinations.
  const int a = (j1 + j2 - j) / 2, b = (j1 - j2 + j) / 2, c = (-j1 + j2 + j) / 2;
  const double pre = std::sqrt((j + 1.0) * fact(a) * fact(b) * fact(c) / fact((j1 + j2 + j) / 2 + 1)) *
                     std::sqrt(fact((j + m) / 2) * fact((j - m) / 2) * fact((j1 - m1) / 2) * fact((j1 + m1) / 2) *
                               fact((j2 - m2) / 2) * fact((j2 + m2) / 2));
  double sum = 0.0;
  for (int k = 0; k <= 2 * (j1 + j2 + j); ++k) {
    const int d1 = k, d2 = (j1 + j2 - j) / 2 - k, d3 = (j1 - m1) / 2 - k, d4 = (j2 + m2) / 2 - k;
    const int d5 = (j - j2 + m1) / 2 + k, d6 = (j - j1 - m2) / 2 + k;
    if (d2 < 0 || d3 < 0 || d4 < 0) break;
    if (d5 < 0 || d6 < 0) continue;
    sum += ((k % 2) ? -1.0 : 1.0) / (fact(d1) * fact(d2) * fact(d3) * fact(d4) * fact(d5) * fact(d6));
  }
  return pre * sum;
}

} // namespace oracle
