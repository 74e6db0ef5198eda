#include "olsim/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "olsim/error.hpp"

namespace olsim {

BoundSet::BoundSet(double theta_in, double rho_in, double lambda_in)
    : theta(theta_in), rho(rho_in), lambda(lambda_in) {
  if (!(theta > 1.0)) throw ConfigError("theta must exceed 1");
  if (!(rho >= 1.0)) throw ConfigError("rho must be at least 1");
  if (!(lambda >= 1.0 / theta) || !(lambda <= 1.0)) {
    throw ConfigError("lambda must lie in [1/theta, 1]");
  }
  A = theta;
  B = rho * (1.0 + 1.0 / (theta - 1.0));
  C = theta / 2.0 + rho;
  lambda_A = lambda * theta;
  B_lambda = rho * (1.0 + 1.0 / (theta / lambda - 1.0));
  C_lambda = lambda * theta / 2.0 + rho;
  A_over_lambda = theta / lambda;
  B_inv_lambda = rho * (1.0 + 1.0 / (lambda * theta - 1.0));
  C_inv_lambda = theta / (2.0 * lambda) + rho;
}

double smartstart_bound(double theta, double rho) {
  if (!(theta > 1.0)) throw ConfigError("theta must exceed 1");
  if (!(theta >= rho)) throw ConfigError("theta must be at least rho");
  const BoundSet b(theta, rho, 1.0);
  return std::max({b.A, b.B, b.C});
}

double smartstart_best_theta(double rho) {
  return (1.0 + std::sqrt(1.0 + 8.0 * rho)) / 2.0;
}

std::pair<double, double> ssop_bounds(double theta, double rho, double lambda,
                                      double eps_f, double opt) {
  if (!(lambda > 1.0 / theta) || !(lambda <= 1.0)) {
    throw ConfigError("lambda must lie in (1/theta, 1]");
  }
  if (!(opt > 0.0)) throw ConfigError("opt must be positive");
  if (!(eps_f >= 0.0)) throw ConfigError("eps_f must be nonnegative");
  const BoundSet b(theta, rho, lambda);
  const double consistency =
      std::max({b.lambda_A * opt + b.lambda_A * eps_f,
                b.B_lambda * opt + eps_f, b.C_lambda * opt});
  const double robustness =
      std::max({b.A_over_lambda, b.B_inv_lambda, b.C_inv_lambda}) * opt;
  return {consistency, robustness};
}

}  // namespace olsim
