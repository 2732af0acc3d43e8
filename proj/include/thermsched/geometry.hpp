#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace thermsched {

/// Axis-aligned rectangle; (x, y) is the lower-left corner. Meters.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
  double right() const { return x + width; }
  double top() const { return y + height; }
  double cx() const { return x + 0.5 * width; }
  double cy() const { return y + 0.5 * height; }
};

/// Contact tolerance for shared-boundary and overlap tests, meters.
inline constexpr double kGeometryTolerance = 1e-9;

/// Placed PE blocks on a chip outline, keyed by PE instance id.
struct Floorplan {
  std::map<std::size_t, Rect> blocks;
  double chipWidth = 0.0;
  double chipHeight = 0.0;

  double blockArea() const;
  double chipArea() const { return chipWidth * chipHeight; }
};

/// Length of the boundary two rectangles share (0 when they only touch at
/// a corner or are apart).
double shared_boundary(const Rect &a, const Rect &b,
                       double tol = kGeometryTolerance);

/// Violations of the floorplan invariants (degenerate blocks, overlaps,
/// blocks outside the chip); empty when valid.
std::vector<std::string> floorplan_violations(const Floorplan &fp);

/// Throws GeometryError listing the first violation.
void validate_floorplan(const Floorplan &fp);

/// Bounding-box area over total block area (>= 1 for valid floorplans).
double dead_space_ratio(const Floorplan &fp);

} // namespace thermsched
