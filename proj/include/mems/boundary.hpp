#pragma once

#include <functional>

#include "mems/deflection.hpp"
#include "mems/params.hpp"

namespace mems {

// Boundary-data profile: zeta(r) = V * min(1, ((r-1)/d)^m) for r > 1 and
// zeta = 0 for r <= 1. For m > 2 it is C1 (in fact C2) at r = 1, ramps
// from 0 to V across the plate thickness and is constant beyond.
double zeta(double r, const PhysicalParams& p);
double zeta_prime(double r, const PhysicalParams& p);

// Dirichlet data for the potential. The model mode realises
// h_u(x, zbar) = zeta(zbar - u(x) + 1): zero on the ground plate, V on
// top of the plate. The custom mode carries an arbitrary trace in
// physical coordinates; it exists for oracle and manufactured-solution
// runs only.
class BoundaryData {
 public:
  using TraceFn = std::function<double(double, double)>;

  static BoundaryData model(const PhysicalParams& p);
  static BoundaryData custom(const PhysicalParams& p, TraceFn trace);

  bool is_model() const { return !custom_; }

  // h at a physical point (x, zbar) in the closure of Omega(u).
  double value_physical(const DeflectionProfile& u, double x, double zbar) const;

  // Dirichlet value for the transformed unknown at a reference point
  // (x, z), i.e. h composed with the pullback map. In model mode this
  // is zeta(z + 1), independent of u.
  double value_reference(const DeflectionProfile& u, double x, double z) const;

 private:
  BoundaryData() = default;
  PhysicalParams params_;
  TraceFn custom_;
};

}  // namespace mems
