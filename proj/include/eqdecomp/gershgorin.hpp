#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eqdecomp/matrix.hpp"

namespace eqd {

struct Disk {
  Complex center;
  double radius = 0.0;

  friend bool operator==(const Disk&, const Disk&) = default;
};

enum class RegionMode { rows, columns };

std::string_view mode_name(RegionMode m);
std::optional<RegionMode> parse_region_mode(std::string_view s);

// One disk per row (or column), in index order.
struct GershRegion {
  std::vector<Disk> disks;
  RegionMode mode = RegionMode::rows;

  friend bool operator==(const GershRegion&, const GershRegion&) = default;
};

// Disk i: center M_ii, radius sum_{j != i} |M_ij| (rows) or |M_ji| (columns).
GershRegion region(const ComplexMatrix& m, RegionMode mode = RegionMode::rows);

// Closed containment |c_in - c_out| <= r_out - r_in, with rounding slack of
// 1e-12 (1 + r_out + |c_out|).
bool disk_contained(const Disk& inner, const Disk& outer);

// Every inner disk lies inside a single outer disk. Sufficient, not necessary,
// for set containment.
bool region_contained(const GershRegion& inner, const GershRegion& outer);

// Diagnostic set containment test: `samples` points on each inner circle (and
// its center) must lie in the outer union.
bool region_contained_sampled(const GershRegion& inner, const GershRegion& outer, std::size_t samples = 10000);

// Distance from z to the union of the disks; 0 inside.
double distance_outside(Complex z, std::span<const Disk> disks);

// Area of the union of the disks within relative error tol. Up to two disks
// use the exact lens formula; more use adaptive quadtree refinement.
double union_area(std::span<const Disk> disks, double tol = 1e-4);
inline double union_area(const GershRegion& g, double tol = 1e-4) { return union_area(g.disks, tol); }

}  // namespace eqd
