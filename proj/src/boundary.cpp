#include "mems/boundary.hpp"

#include <cmath>

#include "mems/transform.hpp"

namespace mems {

double zeta(double r, const PhysicalParams& p) {
  if (r <= 1.0) return 0.0;
  const double s = (r - 1.0) / p.d;
  if (s >= 1.0) return p.V;
  return p.V * std::pow(s, p.m);
}

double zeta_prime(double r, const PhysicalParams& p) {
  if (r <= 1.0) return 0.0;
  const double s = (r - 1.0) / p.d;
  if (s >= 1.0) return 0.0;
  return p.V * p.m * std::pow(s, p.m - 1.0) / p.d;
}

BoundaryData BoundaryData::model(const PhysicalParams& p) {
  BoundaryData b;
  b.params_ = p;
  return b;
}

BoundaryData BoundaryData::custom(const PhysicalParams& p, TraceFn trace) {
  BoundaryData b;
  b.params_ = p;
  b.custom_ = std::move(trace);
  return b;
}

double BoundaryData::value_physical(const DeflectionProfile& u, double x,
                                    double zbar) const {
  if (custom_) return custom_(x, zbar);
  return zeta(zbar - u.value(x) + 1.0, params_);
}

double BoundaryData::value_reference(const DeflectionProfile& u, double x,
                                     double z) const {
  if (custom_) {
    const Point2 phys = map_to_physical(u, params_, {x, z});
    return custom_(phys.x, phys.z);
  }
  // h_u pulled back to the reference rectangle collapses to zeta(z+1):
  // below the interface both sides vanish, above it the shift by u
  // cancels. params_.H only enters through the map, which drops out.
  return zeta(z + 1.0, params_);
}

}  // namespace mems
