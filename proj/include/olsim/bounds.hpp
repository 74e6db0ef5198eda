#ifndef OLSIM_BOUNDS_HPP
#define OLSIM_BOUNDS_HPP

#include <utility>

namespace olsim {

// Closed-form competitive-ratio terms for a waiting scale theta, solver
// guarantee rho and confidence level lambda:
//
//   A = theta            B = rho*(1 + 1/(theta-1))        C = theta/2 + rho
//
// and their lambda-scaled variants
//
//   lambda_A     = lambda*theta
//   B_lambda     = rho*(1 + 1/(theta/lambda - 1))
//   C_lambda     = lambda*theta/2 + rho
//   A_over_lambda = theta/lambda
//   B_inv_lambda = rho*(1 + 1/(lambda*theta - 1))
//   C_inv_lambda = theta/(2*lambda) + rho
//
// At lambda = 1 every variant reduces to its plain form. Construction
// accepts lambda in [1/theta, 1]; at the open end lambda = 1/theta the
// B_inv_lambda denominator vanishes and the field becomes +infinity.
struct BoundSet {
  double theta = 0.0;
  double rho = 0.0;
  double lambda = 1.0;

  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double lambda_A = 0.0;
  double B_lambda = 0.0;
  double C_lambda = 0.0;
  double A_over_lambda = 0.0;
  double B_inv_lambda = 0.0;
  double C_inv_lambda = 0.0;

  BoundSet(double theta, double rho, double lambda);
};

// max{A, B, C}; the SmartStart guarantee. Requires theta > 1 and
// theta >= rho.
double smartstart_bound(double theta, double rho);

// theta minimizing smartstart_bound for a given rho: (1 + sqrt(1+8rho))/2.
double smartstart_best_theta(double rho);

// Cost bounds (not ratios) for one SSOP run:
//   consistency = max{lambda*theta*(opt + eps_f),
//                     B_lambda*opt + eps_f,
//                     C_lambda*opt}
//   robustness  = max{A/lambda, B_inv_lambda, C_inv_lambda} * opt
// Requires lambda in (1/theta, 1], opt > 0, eps_f >= 0.
std::pair<double, double> ssop_bounds(double theta, double rho, double lambda,
                                      double eps_f, double opt);

}  // namespace olsim

#endif
