#pragma once

#include <stdexcept>
#include <vector>

#include "mems/deflection.hpp"
#include "mems/params.hpp"

namespace mems {

struct Point2 {
  double x = 0.0;
  double z = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double z = 0.0;
};

enum class Region { lower, upper };

// The fixed reference domain is the rectangle (-L,L) x (-H,d) with the
// material interface on the line z = 0. The pullback map sends it onto
// the deflected configuration:
//   lower region: zbar = z + u(x) (z + H) / H
//   upper region: zbar = z + u(x)
// It fixes the ground plate and the side walls, moves the interface
// line onto zbar = u(x) and is a bijection whenever H + u > 0.
Point2 map_to_physical(const DeflectionProfile& u, const PhysicalParams& p,
                       Point2 ref);
Point2 map_to_reference(const DeflectionProfile& u, const PhysicalParams& p,
                        Point2 phys);

// Physical gradient from the reference gradient of the transformed
// field, i.e. the inverse-transpose Jacobian applied at the reference
// point. The region resolves the interface ambiguity at z = 0.
Vec2 physical_gradient(const DeflectionProfile& u, const PhysicalParams& p,
                       Point2 ref, Region region, Vec2 grad_ref);

// Signals a configuration whose remaining gap is too small for the
// pullback to stay uniformly invertible.
class DegenerateGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transformed permittivity tensor sigma * J * (DTheta)^-1 (DTheta^-T)
// at one reference point, stored as its symmetric entries, plus the
// Jacobian determinant and the region tag.
struct CoefficientSample {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;
  double jac = 1.0;
  Region region = Region::lower;
};

CoefficientSample coefficient_at(const DeflectionProfile& u,
                                 const PhysicalParams& p, double x, double z);

// Quadrature point with its area weight, produced by the mesh module.
struct QuadPoint {
  double x = 0.0;
  double z = 0.0;
  double w = 0.0;
};

// Coefficient samples for a fixed list of quadrature points, evaluated
// once per deflection and shared by assembly and energy quadrature.
class CoefficientField {
 public:
  CoefficientField() = default;
  CoefficientField(const DeflectionProfile& u, const PhysicalParams& p,
                   const std::vector<QuadPoint>& points);

  const CoefficientSample& operator[](std::size_t i) const { return data_[i]; }
  std::size_t size() const { return data_.size(); }

 private:
  std::vector<CoefficientSample> data_;
};

}  // namespace mems
