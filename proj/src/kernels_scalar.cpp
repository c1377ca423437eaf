#include <algorithm>
#include <cmath>

#include "eqdecomp/kernels.hpp"

namespace eqd::kernels {
namespace {

void caxpy_scalar(std::size_t n, double a_re, double a_im, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[2 * i];
    const double xi = x[2 * i + 1];
    y[2 * i] += a_re * xr - a_im * xi;
    y[2 * i + 1] += a_re * xi + a_im * xr;
  }
}

double abs_sum_scalar(std::size_t n, const double* x) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += std::sqrt(x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
  }
  return s;
}

double max_abs_diff_scalar(std::size_t n, const double* x, const double* y) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = x[2 * i] - y[2 * i];
    const double di = x[2 * i + 1] - y[2 * i + 1];
    m = std::max(m, dr * dr + di * di);
  }
  return std::sqrt(m);
}

bool cell_inside_any_scalar(std::size_t n, const double* cx, const double* cy, const double* r,
                            double x0, double x1, double y0, double y1) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::max(std::abs(cx[i] - x0), std::abs(cx[i] - x1));
    const double dy = std::max(std::abs(cy[i] - y0), std::abs(cy[i] - y1));
    if (dx * dx + dy * dy <= r[i] * r[i]) return true;
  }
  return false;
}

std::size_t cell_touch_mask_scalar(std::size_t n, const double* cx, const double* cy,
                                   const double* r, double x0, double x1, double y0, double y1,
                                   unsigned char* touch) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::max({x0 - cx[i], 0.0, cx[i] - x1});
    const double dy = std::max({y0 - cy[i], 0.0, cy[i] - y1});
    const bool t = dx * dx + dy * dy < r[i] * r[i];
    touch[i] = t ? 1 : 0;
    count += t ? 1 : 0;
  }
  return count;
}

}  // namespace

const Table& scalar_table() {
  static const Table table{caxpy_scalar, abs_sum_scalar, max_abs_diff_scalar,
                           cell_inside_any_scalar, cell_touch_mask_scalar};
  return table;
}

}  // namespace eqd::kernels
