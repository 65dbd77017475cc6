#pragma once

#include "rpspec/domain.hpp"

namespace rpspec {

/// Cut-off profile phi_j(x): zero up to passage 2j, cosine ramp up across
/// passage 2j, one on pieces 2j+1 .. 4j-1, cosine ramp down across passage 4j,
/// zero afterwards. It depends on x only.
struct RampProfile {
  int j{1};
  double up_lo{0.0}, up_hi{0.0};      // passage 2j
  double down_lo{0.0}, down_hi{0.0};  // passage 4j
  double up_half_height{0.0};
  double down_half_height{0.0};

  double value(double x) const;
  double derivative(double x) const;
  /// Maximum of |phi'| over the rising ramp, pi / (2 h_2j).
  double max_derivative_up() const;
  double max_derivative_down() const;
};

RampProfile build_profile(const RpDomain& domain, int j);

struct RayleighReport {
  int j{1};
  double norm_phi{0.0};        // ||phi_j||_{L2(Omega)}
  double norm_phi_prime{0.0};  // ||grad phi_j||_{L2(Omega)}
  double rayleigh{0.0};        // ratio of the two, equal to ||grad f_j|| for f_j = phi_j/||phi_j||
  double plateau_area{0.0};
};

/// Norms by exact piecewise integration over the pieces.
RayleighReport rayleigh_report(const RpDomain& domain, int j);

}  // namespace rpspec
