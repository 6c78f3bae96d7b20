#pragma once

namespace sas::specfun {

// Gamma function on (0, 60].  Arguments outside that range throw
// std::domain_error; nothing in this library evaluates beyond it.
double gamma_fn(double x);

// Uniform bound on |d^n p_N / du^n| for the standard symmetric alpha-stable
// density: Gamma((n+1)/alpha) / (pi * alpha).
double global_deriv_bound(double alpha, int n);

}  // namespace sas::specfun
