#pragma once

// Reference I_m(x) from the plain ascending series in long double. Kept
// separate from the library kernel: no scaling, no asymptotic branch.
namespace oracle {

inline long double bessel_i_series(int m, long double x) {
  const long double half = x / 2.0L;
  long double term = 1.0L;
  for (int j = 1; j <= m; ++j) term *= half / j;
  long double sum = 0.0L;
  for (int k = 0; k < 100000; ++k) {
    sum += term;
    term *= half * half / ((k + 1.0L) * (k + 1.0L + m));
    if (term < 1e-22L * sum || term == 0.0L) break;
  }
  return sum;
}

}  // namespace oracle
