#pragma once

#include <string>

#include "alphasun/errors.hpp"

namespace alphasun {

// Distribution parameters. alpha in [0,1), gamma > 0. alpha = 0 is the
// Frechet limit and is legal everywhere; alpha = 1 never is.
struct Params {
  double alpha;
  double gamma;

  Params(double alpha_, double gamma_) : alpha(alpha_), gamma(gamma_) {
    if (!(alpha >= 0.0) || !(alpha < 1.0))
      throw DomainError("Params: alpha must lie in [0,1), got " +
                        std::to_string(alpha));
    if (!(gamma > 0.0))
      throw DomainError("Params: gamma must be positive, got " +
                        std::to_string(gamma));
  }

  // ln(1/alpha). Infinite at alpha = 0; callers that need it finite must
  // reject alpha = 0 themselves.
  double log_inv_alpha() const;
};

// Shared truncation controls. rel_tol steers series stopping rules,
// max_terms bounds any single summation, product_cutoff caps the length
// of infinite-product truncations a caller may request.
struct Precision {
  double rel_tol = 1e-12;
  long max_terms = 1000000;
  long product_cutoff = 100000;

  void validate() const {
    if (!(rel_tol > 0.0))
      throw DomainError("Precision: rel_tol must be positive");
    if (max_terms < 1) throw DomainError("Precision: max_terms must be >= 1");
    if (product_cutoff < 1)
      throw DomainError("Precision: product_cutoff must be >= 1");
  }
};

}  // namespace alphasun
