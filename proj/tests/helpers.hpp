#pragma once

#include <cmath>

#include "ppbif/model.hpp"

namespace testing_support {

inline ppbif::ModelInstance bazykin(double r, double k, double a, double b, double e, double d, double sigma) {
  return ppbif::ModelInstance::bazykin({r, k, a, b, e, d, sigma});
}

inline ppbif::ModelInstance reference_bazykin() { return bazykin(1, 3, 1, 1, 1, 0.1, 1); }

inline ppbif::CrowleyMartinParams cm_params(double rho, double k, double a, double b, double c, double gamma,
                                            double d) {
  return {rho, k, a, b, c, gamma, d};
}

inline ppbif::ModelInstance crowley_martin(double rho, double k, double a, double b, double c, double gamma,
                                           double d) {
  return ppbif::ModelInstance::crowley_martin(cm_params(rho, k, a, b, c, gamma, d));
}

inline ppbif::ModelInstance discrete_cm(double rho, double k, double a, double b, double c, double gamma, double d) {
  return ppbif::ModelInstance::discrete_crowley_martin(cm_params(rho, k, a, b, c, gamma, d));
}

inline ppbif::ModelInstance holling(double h10, double beta, double delta, double h2 = 0.0) {
  return ppbif::ModelInstance::holling_iv({h10, h2, delta, beta});
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace testing_support
