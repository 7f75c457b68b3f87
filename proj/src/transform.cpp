#include "mems/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mems {

namespace {
constexpr double kDomainTol = 1e-12;

void check_reference_point(const PhysicalParams& p, Point2 ref) {
  if (ref.z < -p.H - kDomainTol || ref.z > p.d + kDomainTol)
    throw std::domain_error("map_to_physical: z outside [-H, d]");
  if (ref.x < -p.L - kDomainTol || ref.x > p.L + kDomainTol)
    throw std::domain_error("map_to_physical: x outside [-L, L]");
}
}  // namespace

Point2 map_to_physical(const DeflectionProfile& u, const PhysicalParams& p,
                       Point2 ref) {
  check_reference_point(p, ref);
  const double uv = u.value(ref.x);
  if (ref.z <= 0.0) return {ref.x, ref.z + uv * (ref.z + p.H) / p.H};
  return {ref.x, ref.z + uv};
}

Point2 map_to_reference(const DeflectionProfile& u, const PhysicalParams& p,
                        Point2 phys) {
  const double uv = u.value(phys.x);
  if (phys.z < -p.H - kDomainTol || phys.z > uv + p.d + kDomainTol)
    throw std::domain_error("map_to_reference: z outside [-H, u(x)+d]");
  if (phys.z <= uv) return {phys.x, (phys.z - uv) * p.H / (p.H + uv)};
  return {phys.x, phys.z - uv};
}

Vec2 physical_gradient(const DeflectionProfile& u, const PhysicalParams& p,
                       Point2 ref, Region region, Vec2 g) {
  const double uv = u.value(ref.x);
  const double us = u.slope(ref.x);
  if (region == Region::upper) {
    // DTheta^T = [[1, u'], [0, 1]]
    return {g.x - us * g.z, g.z};
  }
  // DTheta^T = [[1, w], [0, j]] with w = (z+H) u'/H, j = (H+u)/H.
  const double w = (ref.z + p.H) * us / p.H;
  const double j = (p.H + uv) / p.H;
  return {g.x - (w / j) * g.z, g.z / j};
}

CoefficientSample coefficient_at(const DeflectionProfile& u,
                                 const PhysicalParams& p, double x, double z) {
  CoefficientSample s;
  const double uv = u.value(x);
  const double us = u.slope(x);
  const double eps_gap = p.H + u.gap_floor();
  if (p.H + uv <= 0.5 * eps_gap)
    throw DegenerateGeometryError(
        "coefficient_at: gap H + u = " + std::to_string(p.H + uv) +
        " collapsed at x = " + std::to_string(x));
  if (z > 0.0) {
    s.region = Region::upper;
    s.jac = 1.0;
    s.a11 = p.sigma2;
    s.a12 = -p.sigma2 * us;
    s.a22 = p.sigma2 * (1.0 + us * us);
  } else {
    s.region = Region::lower;
    const double j = (p.H + uv) / p.H;
    const double w = (z + p.H) * us / p.H;
    s.jac = j;
    s.a11 = p.sigma1 * j;
    s.a12 = -p.sigma1 * w;
    s.a22 = p.sigma1 * (w * w + 1.0) / j;
  }
  return s;
}

CoefficientField::CoefficientField(const DeflectionProfile& u,
                                   const PhysicalParams& p,
                                   const std::vector<QuadPoint>& points) {
  data_.reserve(points.size());
  for (const QuadPoint& q : points)
    data_.push_back(coefficient_at(u, p, q.x, q.z));
}

}  // namespace mems
