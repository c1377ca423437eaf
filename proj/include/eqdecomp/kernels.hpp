#pragma once
// Data-parallel inner loops used by the dense complex arithmetic and the
// Gershgorin area code. Every kernel has a scalar reference implementation and
// an AVX2/FMA variant; the variant is picked once at startup from cpuid and can
// be overridden (tests force each backend and compare).
//
// Complex arrays are interleaved (re, im) doubles, which is the layout of
// std::complex<double>[].

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace eqd::kernels {

enum class Backend { scalar, avx2 };

struct Table {
  // y[i] += a * x[i] for n complex values.
  void (*caxpy)(std::size_t n, double a_re, double a_im, const double* x, double* y);
  // sum_i |x[i]| for n complex values.
  double (*abs_sum)(std::size_t n, const double* x);
  // max_i |x[i] - y[i]| for n complex values.
  double (*max_abs_diff)(std::size_t n, const double* x, const double* y);
  // True if the axis-aligned cell [x0,x1]x[y0,y1] lies inside one of the n
  // disks given in structure-of-arrays form.
  bool (*cell_inside_any)(std::size_t n, const double* cx, const double* cy, const double* r,
                          double x0, double x1, double y0, double y1);
  // touch[i] = 1 if disk i meets the open interior of the cell, else 0.
  // Returns the number of touching disks.
  std::size_t (*cell_touch_mask)(std::size_t n, const double* cx, const double* cy, const double* r,
                                 double x0, double x1, double y0, double y1, unsigned char* touch);
};

const Table& scalar_table();
// Null when the binary was built without AVX2 support (non-x86 targets).
const Table* avx2_table();

bool backend_available(Backend b);
Backend active_backend();
// Throws ValidationError if the backend is unavailable on this CPU.
void set_backend(Backend b);
const Table& active();
std::string_view backend_name(Backend b);

using Complex = std::complex<double>;

inline const double* interleaved(std::span<const Complex> v) {
  return reinterpret_cast<const double*>(v.data());
}
inline double* interleaved(std::span<Complex> v) { return reinterpret_cast<double*>(v.data()); }

inline void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  active().caxpy(x.size(), a.real(), a.imag(), interleaved(x), interleaved(y));
}
inline double abs_sum(std::span<const Complex> x) {
  return active().abs_sum(x.size(), interleaved(x));
}
inline double max_abs_diff(std::span<const Complex> x, std::span<const Complex> y) {
  return active().max_abs_diff(x.size(), interleaved(x), interleaved(y));
}

}  // namespace eqd::kernels
