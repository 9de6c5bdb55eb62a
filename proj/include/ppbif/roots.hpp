#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace ppbif::roots {

/// Bisection on a bracket [lo, hi] with f(lo) * f(hi) <= 0. Stops when the
/// bracket is below abs_tol + rel_tol * |mid| or when it cannot shrink further.
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol = 0.0, double rel_tol = 1e-15,
              int max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= abs_tol + rel_tol * std::abs(mid)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

/// Brackets of strict sign changes of f over a uniform grid of `panels`
/// intervals on [lo, hi]. Non-finite samples break a bracket.
template <class F>
std::vector<std::pair<double, double>> sign_change_brackets(F&& f, double lo, double hi, int panels) {
  std::vector<std::pair<double, double>> out;
  const double width = (hi - lo) / panels;
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i <= panels; ++i) {
    const double x = i == panels ? hi : lo + i * width;
    const double fx = f(x);
    if (std::isfinite(f_prev) && std::isfinite(fx)) {
      if (fx == 0.0 && f_prev != 0.0) {
        out.emplace_back(x_prev, x);
      } else if ((f_prev < 0.0 && fx > 0.0) || (f_prev > 0.0 && fx < 0.0)) {
        out.emplace_back(x_prev, x);
      }
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

/// Same as sign_change_brackets but on a logarithmic grid, lo > 0.
template <class F>
std::vector<std::pair<double, double>> log_sign_change_brackets(F&& f, double lo, double hi, int panels) {
  std::vector<std::pair<double, double>> out;
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / panels;
  double p_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i <= panels; ++i) {
    const double p = i == panels ? hi : std::exp(llo + i * step);
    const double fp = f(p);
    if (std::isfinite(f_prev) && std::isfinite(fp) &&
        ((f_prev < 0.0 && fp >= 0.0) || (f_prev > 0.0 && fp <= 0.0))) {
      out.emplace_back(p_prev, p);
    }
    p_prev = p;
    f_prev = fp;
  }
  return out;
}

}  // namespace ppbif::roots
