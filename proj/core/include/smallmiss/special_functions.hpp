#ifndef SMALLMISS_SPECIAL_FUNCTIONS_HPP
#define SMALLMISS_SPECIAL_FUNCTIONS_HPP

namespace smallmiss {

/// ln Gamma(x) for x > 0, accurate to ~1e-13 relative over [0.5, 1e6].
/// Lanczos approximation below 10, Stirling series above.
/// Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Gamma(a)/Gamma(b) for a, b > 0, evaluated in log space so that
/// arguments up to ~1e6 cannot overflow the intermediate values.
double gamma_ratio(double a, double b);

}  // namespace smallmiss

#endif
