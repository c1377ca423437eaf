#include <algorithm>
#include <cmath>

#include "eqdecomp/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define EQD_HAVE_X86 1
#include <immintrin.h>
#else
#define EQD_HAVE_X86 0
#endif

namespace eqd::kernels {

#if EQD_HAVE_X86
namespace {

#define EQD_AVX2 __attribute__((target("avx2,fma")))

EQD_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

EQD_AVX2 inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

EQD_AVX2 inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

EQD_AVX2 void caxpy_avx2(std::size_t n, double a_re, double a_im, const double* x, double* y) {
  const __m256d vr = _mm256_set1_pd(a_re);
  const __m256d vi = _mm256_set1_pd(a_im);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    // even lanes: re*xr - im*xi, odd lanes: re*xi + im*xr
    const __m256d prod = _mm256_fmaddsub_pd(vr, xv, _mm256_mul_pd(vi, xs));
    _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(_mm256_loadu_pd(y + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[2 * i];
    const double xi = x[2 * i + 1];
    y[2 * i] += a_re * xr - a_im * xi;
    y[2 * i + 1] += a_re * xi + a_im * xr;
  }
}

EQD_AVX2 double abs_sum_avx2(std::size_t n, const double* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x + 2 * i);
    const __m256d b = _mm256_loadu_pd(x + 2 * i + 4);
    const __m256d sq = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(sq));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::sqrt(x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
  return s;
}

EQD_AVX2 double max_abs_diff_avx2(std::size_t n, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_sub_pd(_mm256_loadu_pd(x + 2 * i), _mm256_loadu_pd(y + 2 * i));
    const __m256d b =
        _mm256_sub_pd(_mm256_loadu_pd(x + 2 * i + 4), _mm256_loadu_pd(y + 2 * i + 4));
    acc = _mm256_max_pd(acc, _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double dr = x[2 * i] - y[2 * i];
    const double di = x[2 * i + 1] - y[2 * i + 1];
    m = std::max(m, dr * dr + di * di);
  }
  return std::sqrt(m);
}

EQD_AVX2 bool cell_inside_any_avx2(std::size_t n, const double* cx, const double* cy,
                                   const double* r, double x0, double x1, double y0, double y1) {
  const __m256d vx0 = _mm256_set1_pd(x0), vx1 = _mm256_set1_pd(x1);
  const __m256d vy0 = _mm256_set1_pd(y0), vy1 = _mm256_set1_pd(y1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c_x = _mm256_loadu_pd(cx + i);
    const __m256d c_y = _mm256_loadu_pd(cy + i);
    const __m256d rr = _mm256_loadu_pd(r + i);
    const __m256d dx = _mm256_max_pd(vabs(_mm256_sub_pd(c_x, vx0)), vabs(_mm256_sub_pd(c_x, vx1)));
    const __m256d dy = _mm256_max_pd(vabs(_mm256_sub_pd(c_y, vy0)), vabs(_mm256_sub_pd(c_y, vy1)));
    const __m256d d2 = _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dx, dx));
    if (_mm256_movemask_pd(_mm256_cmp_pd(d2, _mm256_mul_pd(rr, rr), _CMP_LE_OQ)) != 0) return true;
  }
  for (; i < n; ++i) {
    const double dx = std::max(std::abs(cx[i] - x0), std::abs(cx[i] - x1));
    const double dy = std::max(std::abs(cy[i] - y0), std::abs(cy[i] - y1));
    if (dx * dx + dy * dy <= r[i] * r[i]) return true;
  }
  return false;
}

EQD_AVX2 std::size_t cell_touch_mask_avx2(std::size_t n, const double* cx, const double* cy,
                                          const double* r, double x0, double x1, double y0,
                                          double y1, unsigned char* touch) {
  const __m256d vx0 = _mm256_set1_pd(x0), vx1 = _mm256_set1_pd(x1);
  const __m256d vy0 = _mm256_set1_pd(y0), vy1 = _mm256_set1_pd(y1);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c_x = _mm256_loadu_pd(cx + i);
    const __m256d c_y = _mm256_loadu_pd(cy + i);
    const __m256d rr = _mm256_loadu_pd(r + i);
    const __m256d dx =
        _mm256_max_pd(_mm256_max_pd(_mm256_sub_pd(vx0, c_x), _mm256_sub_pd(c_x, vx1)), zero);
    const __m256d dy =
        _mm256_max_pd(_mm256_max_pd(_mm256_sub_pd(vy0, c_y), _mm256_sub_pd(c_y, vy1)), zero);
    const __m256d d2 = _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dx, dx));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, _mm256_mul_pd(rr, rr), _CMP_LT_OQ));
    for (int b = 0; b < 4; ++b) {
      const bool t = (mask >> b) & 1;
      touch[i + b] = t ? 1 : 0;
      count += t ? 1 : 0;
    }
  }
  for (; i < n; ++i) {
    const double dx = std::max({x0 - cx[i], 0.0, cx[i] - x1});
    const double dy = std::max({y0 - cy[i], 0.0, cy[i] - y1});
    const bool t = dx * dx + dy * dy < r[i] * r[i];
    touch[i] = t ? 1 : 0;
    count += t ? 1 : 0;
  }
  return count;
}

#undef EQD_AVX2

}  // namespace

const Table* avx2_table() {
  static const Table table{caxpy_avx2, abs_sum_avx2, max_abs_diff_avx2, cell_inside_any_avx2,
                           cell_touch_mask_avx2};
  return &table;
}

#else

const Table* avx2_table() { return nullptr; }

#endif

}  // namespace eqd::kernels
