#include "mems/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace mems {

namespace {

GaussRule make_rule(int n) {
  GaussRule r;
  r.n = n;
  // Nodes on [-1,1], mapped to [0,1] below.
  switch (n) {
    case 1:
      r.xi = {0.0};
      r.w = {2.0};
      break;
    case 2: {
      const double p = 1.0 / std::sqrt(3.0);
      r.xi = {-p, p};
      r.w = {1.0, 1.0};
      break;
    }
    case 3: {
      const double p = std::sqrt(3.0 / 5.0);
      r.xi = {-p, 0.0, p};
      r.w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    }
    case 4: {
      const double p1 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double p2 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double w1 = (18.0 + std::sqrt(30.0)) / 36.0;
      const double w2 = (18.0 - std::sqrt(30.0)) / 36.0;
      r.xi = {-p2, -p1, p1, p2};
      r.w = {w2, w1, w1, w2};
      break;
    }
    case 5: {
      const double p1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double p2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double w0 = 128.0 / 225.0;
      const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      r.xi = {-p2, -p1, 0.0, p1, p2};
      r.w = {w2, w1, w0, w1, w2};
      break;
    }
    default:
      throw std::invalid_argument("GaussRule: 1..5 points supported");
  }
  for (int i = 0; i < n; ++i) {
    r.xi[i] = 0.5 * (r.xi[i] + 1.0);
    r.w[i] *= 0.5;
  }
  return r;
}

}  // namespace

const GaussRule& GaussRule::points(int n) {
  static const GaussRule rules[5] = {make_rule(1), make_rule(2), make_rule(3),
                                     make_rule(4), make_rule(5)};
  if (n < 1 || n > 5) throw std::invalid_argument("GaussRule: 1..5 points supported");
  return rules[n - 1];
}

}  // namespace mems
