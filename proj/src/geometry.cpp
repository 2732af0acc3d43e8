#include "thermsched/geometry.hpp"

#include "thermsched/errors.hpp"

#include <algorithm>
#include <cmath>

namespace thermsched {

double Floorplan::blockArea() const {
  double sum = 0.0;
  for (const auto &[id, r] : blocks) {
    sum += r.area();
  }
  return sum;
}

double shared_boundary(const Rect &a, const Rect &b, double tol) {
  // vertical contact: a's right edge on b's left edge or vice versa
  if (std::abs(a.right() - b.x) <= tol || std::abs(b.right() - a.x) <= tol) {
    double len = std::min(a.top(), b.top()) - std::max(a.y, b.y);
    if (len > tol) {
      return len;
    }
  }
  if (std::abs(a.top() - b.y) <= tol || std::abs(b.top() - a.y) <= tol) {
    double len = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    if (len > tol) {
      return len;
    }
  }
  return 0.0;
}

std::vector<std::string> floorplan_violations(const Floorplan &fp) {
  std::vector<std::string> out;
  const double tol = kGeometryTolerance;
  if (!(fp.chipWidth > 0.0) || !(fp.chipHeight > 0.0)) {
    out.push_back("chip outline is degenerate");
  }
  for (const auto &[id, r] : fp.blocks) {
    const std::string name = "block " + std::to_string(id);
    if (!(r.width > 0.0) || !(r.height > 0.0) || !std::isfinite(r.width) ||
        !std::isfinite(r.height) || !std::isfinite(r.x) || !std::isfinite(r.y)) {
      out.push_back(name + " is degenerate");
      continue;
    }
    if (r.x < -tol || r.y < -tol || r.right() > fp.chipWidth + tol ||
        r.top() > fp.chipHeight + tol) {
      out.push_back(name + " lies outside the chip");
    }
  }
  for (auto a = fp.blocks.begin(); a != fp.blocks.end(); ++a) {
    for (auto b = std::next(a); b != fp.blocks.end(); ++b) {
      const Rect &ra = a->second;
      const Rect &rb = b->second;
      double ox = std::min(ra.right(), rb.right()) - std::max(ra.x, rb.x);
      double oy = std::min(ra.top(), rb.top()) - std::max(ra.y, rb.y);
      if (ox > tol && oy > tol) {
        out.push_back("blocks " + std::to_string(a->first) + " and " +
                      std::to_string(b->first) + " overlap");
      }
    }
  }
  return out;
}

void validate_floorplan(const Floorplan &fp) {
  auto v = floorplan_violations(fp);
  if (!v.empty()) {
    throw GeometryError("invalid floorplan: " + v.front());
  }
}

double dead_space_ratio(const Floorplan &fp) {
  return fp.chipArea() / fp.blockArea();
}

} // namespace thermsched
