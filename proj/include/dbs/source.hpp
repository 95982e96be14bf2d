#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dbs/errors.hpp"

namespace dbs {

// Heralded PDC source with squeezing parameter lambda in [0, 1).
// Photon-number law P(i) = (1 - lambda^2) * lambda^(2i).
struct PdcSource {
  double lambda = 0.0;

  explicit PdcSource(double lam) : lambda(lam) {
    if (!(lam >= 0.0 && lam < 1.0))
      throw configuration_error("PdcSource: lambda must lie in [0, 1)");
  }
};

inline double p_vacuum(const PdcSource& src) {
  return 1.0 - src.lambda * src.lambda;
}

inline double p_single(const PdcSource& src) {
  const double l2 = src.lambda * src.lambda;
  return (1.0 - l2) * l2;
}

// Probability that a heralded state is a single photon.
inline double p_single_given_herald(const PdcSource& src) {
  return 1.0 - src.lambda * src.lambda;
}

enum class Scheme { BS, SBS, DBS };

inline std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::BS: return "BS";
    case Scheme::SBS: return "SBS";
    case Scheme::DBS: return "DBS";
  }
  return "?";
}

// Target photon number n, network width m, generation layers k. SBS is the
// k = 1 special case; BS has n fixed input positions.
struct SchemeParams {
  int n = 1;
  long long m = 1;
  long long k = 1;
  Scheme scheme = Scheme::SBS;

  // Number of positions a source can fire in.
  long long input_positions() const {
    switch (scheme) {
      case Scheme::BS: return n;
      case Scheme::SBS: return m;
      case Scheme::DBS: return k * m;
    }
    return 0;
  }
};

inline void validate_params(const SchemeParams& p) {
  if (p.n < 1) throw configuration_error("SchemeParams: n must be >= 1");
  if (p.m < 1 || p.k < 1)
    throw configuration_error("SchemeParams: m and k must be >= 1");
  if (p.scheme == Scheme::SBS && p.k != 1)
    throw configuration_error("SchemeParams: SBS requires k = 1");
  if (p.n > p.input_positions())
    throw configuration_error("SchemeParams: n exceeds possible input positions");
}

inline double log_binomial(long long q, long long n) {
  return std::lgamma(double(q) + 1.0) - std::lgamma(double(n) + 1.0) -
         std::lgamma(double(q - n) + 1.0);
}

// log P_s: BS -> n log P_1; SBS/DBS -> log C(q, n) + n log P_1 + (q-n) log P_0
// with q the number of possible input positions. Log-space keeps m up to 1e7
// finite.
inline double log_success_probability(const SchemeParams& p, const PdcSource& src) {
  validate_params(p);
  const double p1 = p_single(src);
  const double p0 = p_vacuum(src);
  if (p1 == 0.0) return -std::numeric_limits<double>::infinity();
  const long long q = p.input_positions();
  double lp = p.n * std::log(p1);
  if (p.scheme != Scheme::BS)
    lp += log_binomial(q, p.n) + double(q - p.n) * std::log(p0);
  return lp;
}

inline double success_probability(const SchemeParams& p, const PdcSource& src) {
  const double lp = log_success_probability(p, src);
  if (lp < -700.0) return 0.0;  // explicit underflow-to-zero
  return std::exp(lp);
}

// Squeezing that maximizes P_s: sqrt(n / (q + n)).
inline double lambda_opt(const SchemeParams& p) {
  validate_params(p);
  const double q = double(p.input_positions());
  return std::sqrt(double(p.n) / (q + double(p.n)));
}

// SNR at explicit lambda: (1-lambda^2)^n / (1 - (1-lambda^2)^n).
inline double snr_at(const SchemeParams& p, double lambda) {
  validate_params(p);
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw configuration_error("snr_at: lambda must lie in [0, 1)");
  const double s = std::pow(1.0 - lambda * lambda, p.n);
  if (s >= 1.0) return std::numeric_limits<double>::infinity();
  return s / (1.0 - s);
}

// SNR at lambda_opt: (q/(q+n))^n / (1 - (q/(q+n))^n) with q = k*m inputs.
inline double snr(const SchemeParams& p) {
  validate_params(p);
  const double q = double(p.input_positions());
  const double s = std::pow(q / (q + double(p.n)), p.n);
  return s / (1.0 - s);
}

// Smallest m giving SNR >= 1 at k = 1: n / (2^(1/n) - 1).
inline double min_modes_for_unit_snr(int n) {
  if (n < 1) throw configuration_error("min_modes_for_unit_snr: n must be >= 1");
  return double(n) / (std::pow(2.0, 1.0 / double(n)) - 1.0);
}

// Smallest k giving SNR >= 1 at m = n^2: 1 / (n (2^(1/n) - 1)).
inline double min_layers_for_unit_snr(int n) {
  if (n < 1) throw configuration_error("min_layers_for_unit_snr: n must be >= 1");
  return 1.0 / (double(n) * (std::pow(2.0, 1.0 / double(n)) - 1.0));
}

// Large-n optimal generation probability, 1 / (b sqrt(2 pi n)); b = e at the
// m = n^2 boundary and 1 for m >> n^2.
inline double asymptotic_pmax(int n, double b) {
  if (n < 1) throw configuration_error("asymptotic_pmax: n must be >= 1");
  if (b <= 0.0) throw configuration_error("asymptotic_pmax: b must be positive");
  return 1.0 / (b * std::sqrt(2.0 * std::numbers::pi * double(n)));
}

}  // namespace dbs
