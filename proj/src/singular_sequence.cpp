#include "rpspec/singular_sequence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rpspec {

using std::numbers::pi;

double RampProfile::value(double x) const {
  if (x <= up_lo) return 0.0;
  if (x < up_hi) return 0.5 * (1.0 - std::cos(pi * (x - up_lo) / (up_hi - up_lo)));
  if (x <= down_lo) return 1.0;
  if (x < down_hi) return 0.5 * (1.0 + std::cos(pi * (x - down_lo) / (down_hi - down_lo)));
  return 0.0;
}

double RampProfile::derivative(double x) const {
  if (x > up_lo && x < up_hi) {
    const double w = up_hi - up_lo;
    return 0.5 * pi / w * std::sin(pi * (x - up_lo) / w);
  }
  if (x > down_lo && x < down_hi) {
    const double w = down_hi - down_lo;
    return -0.5 * pi / w * std::sin(pi * (x - down_lo) / w);
  }
  return 0.0;
}

double RampProfile::max_derivative_up() const { return 0.5 * pi / (up_hi - up_lo); }
double RampProfile::max_derivative_down() const { return 0.5 * pi / (down_hi - down_lo); }

RampProfile build_profile(const RpDomain& domain, int j) {
  if (!domain.is_geometric())
    throw std::invalid_argument("singular: profile needs the geometric family");
  if (j < 1) throw std::invalid_argument("singular: j must be >= 1");
  if (domain.size() < 4 * j)
    throw std::invalid_argument("singular: need at least " + std::to_string(4 * j) +
                                " pieces for j=" + std::to_string(j) + ", domain has " +
                                std::to_string(domain.size()));
  const Piece& up = domain.piece(2 * j);
  const Piece& down = domain.piece(4 * j);
  RampProfile r;
  r.j = j;
  r.up_lo = up.x_lo;
  r.up_hi = up.x_hi;
  r.down_lo = down.x_lo;
  r.down_hi = down.x_hi;
  r.up_half_height = up.half_height;
  r.down_half_height = down.half_height;
  return r;
}

RayleighReport rayleigh_report(const RpDomain& domain, int j) {
  build_profile(domain, j);  // validates j against the piece count
  RayleighReport rep;
  rep.j = j;
  for (int i = 2 * j + 1; i <= 4 * j - 1; ++i) rep.plateau_area += domain.piece(i).area();
  const Piece& up = domain.piece(2 * j);
  const Piece& down = domain.piece(4 * j);
  // int_0^1 ((1 - cos pi t)/2)^2 dt = 3/8 and int |phi'|^2 over a ramp of
  // length w and height d is pi^2 d / (8 w)
  const double ramp_mass = 3.0 / 8.0 * (up.area() + down.area());
  const double grad2 = pi * pi / 8.0 * (up.height() / up.width() + down.height() / down.width());
  rep.norm_phi = std::sqrt(rep.plateau_area + ramp_mass);
  rep.norm_phi_prime = std::sqrt(grad2);
  rep.rayleigh = rep.norm_phi_prime / rep.norm_phi;
  return rep;
}

}  // namespace rpspec
