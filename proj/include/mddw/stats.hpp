// Copyright 2026 The mddw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <vector>

#include "mddw/errors.hpp"

namespace mddw {

namespace detail {

// Regularized incomplete gamma, series and continued-fraction forms.
inline double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, del = sum, ap = a;
  for (int n = 0; n < 1000; n++) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_cf(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; i++) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

// Upper-tail probability of the chi-square distribution: the p-value of an
// observed statistic `chi2` with `dof` degrees of freedom.
inline double chi_square_p(double chi2, int dof) {
  if (dof < 1) throw Error("chi_square_p: dof must be >= 1");
  if (chi2 <= 0) return 1.0;
  double a = dof / 2.0, x = chi2 / 2.0;
  if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
  return detail::gamma_q_cf(a, x);
}

// Goodness of fit of observed counts against a uniform expectation.
inline double chi_square_uniform_p(const std::vector<size_t>& counts) {
  size_t total = 0;
  for (size_t c : counts) total += c;
  if (counts.size() < 2 || total == 0) throw Error("bad chi-square input");
  double expected = static_cast<double>(total) / counts.size();
  double chi2 = 0;
  for (size_t c : counts) {
    double d = c - expected;
    chi2 += d * d / expected;
  }
  return chi_square_p(chi2, static_cast<int>(counts.size()) - 1);
}

// Two-sample homogeneity test over shared bins.
inline double chi_square_two_sample_p(const std::vector<size_t>& a, const std::vector<size_t>& b) {
  if (a.size() != b.size() || a.size() < 2) throw Error("bad chi-square input");
  double na = 0, nb = 0;
  for (size_t c : a) na += c;
  for (size_t c : b) nb += c;
  if (na == 0 || nb == 0) throw Error("empty sample");
  double chi2 = 0;
  int dof = 0;
  for (size_t i = 0; i < a.size(); i++) {
    double col = static_cast<double>(a[i]) + b[i];
    if (col == 0) continue;  // empty bins carry no information
    double ea = col * na / (na + nb);
    double eb = col * nb / (na + nb);
    double da = a[i] - ea, db = b[i] - eb;
    chi2 += da * da / ea + db * db / eb;
    dof++;
  }
  return chi_square_p(chi2, dof - 1);
}

// Fraction of ones; the monobit statistic.
inline double ones_fraction(size_t ones, size_t total) {
  if (total == 0) throw Error("monobit on empty sample");
  return static_cast<double>(ones) / static_cast<double>(total);
}

}  // namespace mddw
