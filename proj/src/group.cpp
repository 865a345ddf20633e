#include "symcg/group.hpp"

#include <cmath>
#include <stdexcept>

#include "symcg/errors.hpp"

namespace symcg {

double jet_coordinate(const JetImage& z, int coord) {
  if (coord == 0) return z.t;
  const int n = static_cast<int>(z.u.size());
  if (coord <= n) return z.u[coord - 1];
  if (coord <= 2 * n) return z.ut[coord - 1 - n];
  throw ParameterError("jet_coordinate: index out of range");
}

double equivariance_defect(const GroupAction& action, const MovingFrame& frame,
                           const GroupElement& g, double t, const Vec& u, const Vec& ut) {
  const JetImage z = action.apply_jet(g, t, u, ut);
  const GroupElement lhs = frame.frame(z.t, z.u, z.ut);
  const GroupElement rhs = action.compose(action.inverse(g), frame.frame(t, u, ut));

  auto gap = [&](double sign) {
    double d = 0.0;
    for (int i = 0; i < action.r; ++i) d = std::max(d, std::abs(lhs.params[i] - sign * rhs.params[i]));
    return d;
  };
  double d = gap(1.0);
  if (frame.double_cover) d = std::min(d, gap(-1.0));
  return d;
}

double cross_section_defect(const GroupAction& action, const MovingFrame& frame,
                            const std::vector<CrossSectionEntry>& section, double t, const Vec& u,
                            const Vec& ut) {
  const GroupElement rho = frame.frame(t, u, ut);
  const JetImage z = action.apply_jet(rho, t, u, ut);
  double d = 0.0;
  for (const auto& e : section) {
    double c = jet_coordinate(z, e.coord);
    if (e.use_abs) c = std::abs(c);
    d = std::max(d, std::abs(c - e.target));
  }
  return d;
}

}  // namespace symcg
