#include "mems/params.hpp"

#include <stdexcept>
#include <string>

namespace mems {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("PhysicalParams: " + what);
}
}  // namespace

void PhysicalParams::validate() const {
  require(L > 0.0, "L must be positive");
  require(H > 0.0, "H must be positive");
  require(d > 0.0, "d must be positive");
  require(beta > 0.0, "beta must be positive");
  require(tau >= 0.0, "tau must be nonnegative");
  require(a >= 0.0, "a must be nonnegative");
  require(sigma1 > 0.0, "sigma1 must be positive");
  require(sigma2 > 0.0, "sigma2 must be positive");
  require(V >= 0.0, "V must be nonnegative");
  require(m > 2.0, "m must be greater than 2");
}

}  // namespace mems
