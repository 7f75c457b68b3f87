#include "mems/catalogue.hpp"

#include <cmath>
#include <stdexcept>

namespace mems {

namespace {

struct Shape {
  const char* id;
  bool nonnegative;
  double (*f)(double);
  double (*df)(double);  // d/ds
};

double sq(double v) { return v * v; }

const Shape kShapes[] = {
    {"quartic", true, [](double s) { return sq(1.0 - s * s); },
     [](double s) { return -4.0 * s * (1.0 - s * s); }},
    {"sextic", true, [](double s) { return sq(1.0 - s * s) * (1.0 - s * s); },
     [](double s) { return -6.0 * s * sq(1.0 - s * s); }},
    {"plateau", true, [](double s) { return sq(sq(1.0 - s * s)); },
     [](double s) { return -8.0 * s * sq(1.0 - s * s) * (1.0 - s * s); }},
    {"tilted", true,
     [](double s) { return sq(1.0 - s * s) * (1.0 + 0.5 * s); },
     [](double s) {
       return -4.0 * s * (1.0 - s * s) * (1.0 + 0.5 * s) +
              0.5 * sq(1.0 - s * s);
     }},
    {"asym", false, [](double s) { return s * sq(1.0 - s * s); },
     [](double s) { return (1.0 - s * s) * (1.0 - 5.0 * s * s); }},
    {"wiggle", false,
     [](double s) { return sq(1.0 - s * s) * std::sin(2.0 * M_PI * s); },
     [](double s) {
       return -4.0 * s * (1.0 - s * s) * std::sin(2.0 * M_PI * s) +
              2.0 * M_PI * sq(1.0 - s * s) * std::cos(2.0 * M_PI * s);
     }},
};

}  // namespace

std::vector<std::string> catalogue_ids() {
  std::vector<std::string> ids;
  for (const Shape& s : kShapes) ids.emplace_back(s.id);
  return ids;
}

std::vector<std::string> catalogue_nonnegative_ids() {
  std::vector<std::string> ids;
  for (const Shape& s : kShapes)
    if (s.nonnegative) ids.emplace_back(s.id);
  return ids;
}

DeflectionProfile catalogue_profile(const std::string& id, double amplitude,
                                    double L, int n_cells, double gap_floor,
                                    BcMode bc) {
  for (const Shape& s : kShapes) {
    if (id == s.id) {
      auto value = [&s, amplitude, L](double x) {
        return amplitude * s.f(x / L);
      };
      auto slope = [&s, amplitude, L](double x) {
        return amplitude * s.df(x / L) / L;
      };
      return DeflectionProfile::from_function(value, slope, L, n_cells,
                                              gap_floor, bc);
    }
  }
  throw std::invalid_argument("catalogue_profile: unknown shape id '" + id +
                              "'");
}

}  // namespace mems
