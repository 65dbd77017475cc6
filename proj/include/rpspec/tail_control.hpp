#pragma once

#include "rpspec/domain.hpp"

namespace rpspec {

struct TailPolicy {
  double c{1.0};  // constant in K(T_2M) <= c C^((3-alpha) M)
};

/// Upper bound c C^((3-alpha) M) for the Poincare constant of the tail T_2M.
double poincare_bound(const DomainParams& p, int M, const TailPolicy& policy = {});

struct TailDepth {
  int M{1};
  double threshold{0.0};     // log(c^2 lambda) / (2 (3-alpha) log(1/C))
  double tail_area{0.0};     // |T_2M|
  double scaled_tail{0.0};   // |T_2M| * lambda^(2/(3-alpha))
  double tail_bound{0.0};    // K_max (c^2 lambda)^(-2/(3-alpha)), an a priori bound on |T_2M|
};

/// Smallest M >= 1 with 1/poincare_bound(M)^2 > lambda.
TailDepth min_M_for_lambda(const DomainParams& p, double lambda, const TailPolicy& policy = {});

/// |T_2M| in closed form for the geometric family.
double tail_area(const DomainParams& p, int M);

}  // namespace rpspec
