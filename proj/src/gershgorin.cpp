#include "eqdecomp/gershgorin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "eqdecomp/error.hpp"
#include "eqdecomp/kernels.hpp"

namespace eqd {
namespace {

constexpr double kPi = std::numbers::pi;

double lens_union(const Disk& a, const Disk& b) {
  const double r1 = a.radius, r2 = b.radius;
  const double d = std::abs(a.center - b.center);
  if (d >= r1 + r2) return kPi * (r1 * r1 + r2 * r2);
  if (d <= std::abs(r1 - r2)) return kPi * std::max(r1, r2) * std::max(r1, r2);
  const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0);
  const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0);
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  const double lens = r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(0.0, k));
  return kPi * (r1 * r1 + r2 * r2) - lens;
}

// Structure-of-arrays copy of a subset of disks, as the cell kernels expect.
struct DiskSoA {
  std::vector<double> cx, cy, r;
  void clear() {
    cx.clear();
    cy.clear();
    r.clear();
  }
  void push(const Disk& d) {
    cx.push_back(d.center.real());
    cy.push_back(d.center.imag());
    r.push_back(d.radius);
  }
};

// Area of the disk of radius r at the origin inside [0,x]x[0,y], x, y >= 0.
double quadrant_area(double x, double y, double r) {
  x = std::min(x, r);
  y = std::min(y, r);
  if (x * x + y * y <= r * r) return x * y;
  auto s = [r](double t) { return 0.5 * (t * std::sqrt(std::max(0.0, r * r - t * t)) + r * r * std::asin(t / r)); };
  const double a = std::min(x, std::sqrt(std::max(0.0, r * r - y * y)));
  return y * a + s(x) - s(a);
}

double signed_quadrant_area(double x, double y, double r) {
  const double sx = x < 0 ? -1.0 : 1.0, sy = y < 0 ? -1.0 : 1.0;
  return sx * sy * quadrant_area(std::abs(x), std::abs(y), r);
}

// Exact area of a disk intersected with an axis-aligned rectangle.
double disk_rect_area(const Disk& d, double x0, double x1, double y0, double y1) {
  const double cx = d.center.real(), cy = d.center.imag(), r = d.radius;
  const double a = signed_quadrant_area(x1 - cx, y1 - cy, r) - signed_quadrant_area(x0 - cx, y1 - cy, r) -
                   signed_quadrant_area(x1 - cx, y0 - cy, r) + signed_quadrant_area(x0 - cx, y0 - cy, r);
  return std::max(0.0, a);
}

struct Cell {
  double x0, y0;
  std::vector<std::uint32_t> candidates;
};

double quadtree_area(const std::vector<Disk>& disks, double tol) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& d : disks) {
    xmin = std::min(xmin, d.center.real() - d.radius);
    xmax = std::max(xmax, d.center.real() + d.radius);
    ymin = std::min(ymin, d.center.imag() - d.radius);
    ymax = std::max(ymax, d.center.imag() + d.radius);
  }
  double side = std::max(xmax - xmin, ymax - ymin);

  const auto& kt = kernels::active();
  std::vector<Cell> cells;
  {
    Cell root{xmin, ymin, {}};
    for (std::uint32_t i = 0; i < disks.size(); ++i) root.candidates.push_back(i);
    cells.push_back(std::move(root));
  }

  constexpr int kMaxLevel = 26;
  constexpr std::size_t kCellBudget = std::size_t{1} << 21;
  double covered = 0.0;
  DiskSoA soa;
  std::vector<unsigned char> touch;

  for (int level = 0;; ++level) {
    const double area = side * side;
    std::vector<Cell> undecided;
    for (auto& cell : cells) {
      soa.clear();
      for (auto i : cell.candidates) soa.push(disks[i]);
      touch.assign(soa.r.size(), 0);
      const double x1 = cell.x0 + side, y1 = cell.y0 + side;
      const std::size_t hits = kt.cell_touch_mask(soa.r.size(), soa.cx.data(), soa.cy.data(), soa.r.data(),
                                                  cell.x0, x1, cell.y0, y1, touch.data());
      if (hits == 0) continue;
      if (hits == 1) {
        // A single disk meets the cell: its share of the cell is exact.
        const auto t = static_cast<std::size_t>(std::find(touch.begin(), touch.end(), 1) - touch.begin());
        covered += disk_rect_area(disks[cell.candidates[t]], cell.x0, x1, cell.y0, y1);
        continue;
      }
      if (kt.cell_inside_any(soa.r.size(), soa.cx.data(), soa.cy.data(), soa.r.data(), cell.x0, x1, cell.y0, y1)) {
        covered += area;
        continue;
      }
      std::vector<std::uint32_t> kept;
      kept.reserve(hits);
      for (std::size_t t = 0; t < touch.size(); ++t)
        if (touch[t]) kept.push_back(cell.candidates[t]);
      cell.candidates = std::move(kept);
      undecided.push_back(std::move(cell));
    }

    const double open = static_cast<double>(undecided.size()) * area;
    const bool done = open / 2 <= tol * (covered + open / 2) || level == kMaxLevel ||
                      undecided.size() * 4 > kCellBudget;
    if (done) {
      // Estimate the undecided cells from an 8x8 grid of sample points.
      constexpr int g = 8;
      double partial = 0.0;
      for (const auto& cell : undecided) {
        int inside = 0;
        for (int a = 0; a < g; ++a) {
          for (int b = 0; b < g; ++b) {
            const Complex z(cell.x0 + (a + 0.5) * side / g, cell.y0 + (b + 0.5) * side / g);
            for (auto i : cell.candidates) {
              if (std::abs(z - disks[i].center) <= disks[i].radius) {
                ++inside;
                break;
              }
            }
          }
        }
        partial += area * inside / (g * g);
      }
      return covered + partial;
    }

    side /= 2;
    cells.clear();
    cells.reserve(undecided.size() * 4);
    for (auto& cell : undecided) {
      for (int q = 0; q < 4; ++q) {
        cells.push_back(Cell{cell.x0 + (q & 1) * side, cell.y0 + (q >> 1) * side, cell.candidates});
      }
    }
  }
}

}  // namespace

std::string_view mode_name(RegionMode m) { return m == RegionMode::rows ? "rows" : "columns"; }

std::optional<RegionMode> parse_region_mode(std::string_view s) {
  if (s == "rows") return RegionMode::rows;
  if (s == "columns") return RegionMode::columns;
  return std::nullopt;
}

GershRegion region(const ComplexMatrix& m, RegionMode mode) {
  if (!m.is_square()) throw ValidationError("Gershgorin region needs a square matrix");
  const ComplexMatrix src = mode == RegionMode::rows ? m : m.transpose();
  GershRegion g;
  g.mode = mode;
  for (std::size_t i = 0; i < src.rows(); ++i) {
    auto row = src.row(i);
    const double radius = kernels::abs_sum(row.first(i)) + kernels::abs_sum(row.subspan(i + 1));
    g.disks.push_back({src(i, i), radius});
  }
  return g;
}

bool disk_contained(const Disk& inner, const Disk& outer) {
  const double slack = 1e-12 * (1.0 + outer.radius + std::abs(outer.center));
  return std::abs(inner.center - outer.center) <= outer.radius - inner.radius + slack;
}

bool region_contained(const GershRegion& inner, const GershRegion& outer) {
  return std::all_of(inner.disks.begin(), inner.disks.end(), [&](const Disk& d) {
    return std::any_of(outer.disks.begin(), outer.disks.end(), [&](const Disk& o) { return disk_contained(d, o); });
  });
}

double distance_outside(Complex z, std::span<const Disk> disks) {
  double best = INFINITY;
  for (const auto& d : disks) best = std::min(best, std::abs(z - d.center) - d.radius);
  return std::max(0.0, best);
}

bool region_contained_sampled(const GershRegion& inner, const GershRegion& outer, std::size_t samples) {
  for (const auto& d : inner.disks) {
    const double slack = 1e-12 * (1.0 + d.radius + std::abs(d.center));
    if (distance_outside(d.center, outer.disks) > slack) return false;
    if (d.radius == 0.0) continue;
    for (std::size_t s = 0; s < samples; ++s) {
      const double theta = 2.0 * kPi * static_cast<double>(s) / static_cast<double>(samples);
      const Complex z = d.center + std::polar(d.radius, theta);
      if (distance_outside(z, outer.disks) > slack) return false;
    }
  }
  return true;
}

double union_area(std::span<const Disk> disks, double tol) {
  if (!(tol > 0.0)) throw ValidationError("union_area: tolerance must be positive");
  std::vector<Disk> live;
  for (const auto& d : disks) {
    if (d.radius < 0.0) throw ValidationError("disk with negative radius");
    if (d.radius > 0.0) live.push_back(d);
  }
  if (live.empty()) return 0.0;
  if (live.size() == 1) return kPi * live[0].radius * live[0].radius;
  if (live.size() == 2) return lens_union(live[0], live[1]);
  // Disks inside another disk add nothing; dropping them keeps the candidate
  // lists short for regions with many nested disks.
  std::vector<Disk> outer;
  for (std::size_t i = 0; i < live.size(); ++i) {
    bool nested = false;
    for (std::size_t j = 0; j < live.size() && !nested; ++j) {
      if (i == j) continue;
      const bool inside = std::abs(live[i].center - live[j].center) <= live[j].radius - live[i].radius;
      // Identical disks: keep the first.
      nested = inside && (live[i] != live[j] || j < i);
    }
    if (!nested) outer.push_back(live[i]);
  }
  if (outer.size() == 1) return kPi * outer[0].radius * outer[0].radius;
  if (outer.size() == 2) return lens_union(outer[0], outer[1]);
  return quadtree_area(outer, tol);
}

}  // namespace eqd
