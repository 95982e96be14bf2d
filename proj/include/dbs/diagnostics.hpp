#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "dbs/errors.hpp"
#include "dbs/linalg.hpp"
#include "dbs/network.hpp"
#include "dbs/random.hpp"

namespace dbs {

enum class KsComponent { RealPart, ImaginaryPart, ModulusSquared };

inline std::string ks_component_name(KsComponent c) {
  switch (c) {
    case KsComponent::RealPart: return "real-part";
    case KsComponent::ImaginaryPart: return "imaginary-part";
    case KsComponent::ModulusSquared: return "modulus-squared";
  }
  return "?";
}

struct KsReport {
  KsComponent component = KsComponent::RealPart;
  double statistic = 0.0;
  double p_value = 0.0;
  std::size_t samples = 0;
};

// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 x^2).
inline double kolmogorov_q(double x) {
  if (x < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * double(j) * double(j) * x * x);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// One-sample KS test against a continuous CDF. The p-value uses the
// finite-sample corrected argument (sqrt(N) + 0.12 + 0.11/sqrt(N)) * D.
inline KsReport ks_test(std::vector<double> samples,
                        const std::function<double(double)>& cdf,
                        KsComponent component) {
  if (samples.size() < 2)
    throw configuration_error("ks_test: need at least 2 samples");
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max(double(i + 1) / n - f, f - double(i) / n));
  }
  const double sqrt_n = std::sqrt(n);
  KsReport rep;
  rep.component = component;
  rep.statistic = d;
  rep.p_value = kolmogorov_q((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
  rep.samples = samples.size();
  return rep;
}

// CDF of N(0, 1/2) per component of a standard complex Gaussian.
inline double normal_half_variance_cdf(double x) { return 0.5 * std::erfc(-x); }

inline double unit_exponential_cdf(double x) {
  return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x);
}

// Run the three element-distribution tests on pooled complex samples that
// should look like standard complex Gaussians.
inline std::vector<KsReport> gaussian_element_tests(
    const std::vector<Complex>& entries) {
  std::vector<double> re, im, mod2;
  re.reserve(entries.size());
  im.reserve(entries.size());
  mod2.reserve(entries.size());
  for (const Complex& z : entries) {
    re.push_back(z.real());
    im.push_back(z.imag());
    mod2.push_back(std::norm(z));
  }
  return {ks_test(std::move(re), normal_half_variance_cdf, KsComponent::RealPart),
          ks_test(std::move(im), normal_half_variance_cdf,
                  KsComponent::ImaginaryPart),
          ks_test(std::move(mod2), unit_exponential_cdf,
                  KsComponent::ModulusSquared)};
}

enum class ColumnSelection { CrossBlock, SingleBlock };

// Collect entries of random n x n submatrices scaled by sqrt(m) and test
// them against the i.i.d. complex Gaussian null: real and imaginary parts
// against N(0, 1/2), modulus squared against Exp(1). Requires the dilution
// condition n^2 <= m/4.
inline std::vector<KsReport> submatrix_element_test(
    const EvolutionMatrix& ev, int n, int draws, RandomSeed rs,
    ColumnSelection selection = ColumnSelection::CrossBlock) {
  if (n < 1) throw configuration_error("submatrix_element_test: n must be >= 1");
  if (n * n > ev.m / 4)
    throw configuration_error(
        "submatrix_element_test: dilution condition n^2 <= m/4 violated");
  if (draws < 100)
    throw configuration_error("submatrix_element_test: draws must be >= 100");

  auto engine = make_engine(rs);
  const double scale = std::sqrt(double(ev.m));
  std::vector<Complex> pooled;
  pooled.reserve(static_cast<std::size_t>(draws) * n * n);

  std::vector<int> all_rows(static_cast<std::size_t>(ev.m));
  std::iota(all_rows.begin(), all_rows.end(), 0);

  for (int d = 0; d < draws; ++d) {
    // Collision-free input: n distinct virtual input columns.
    int col_lo = 0, col_hi = ev.cols();
    if (selection == ColumnSelection::SingleBlock) {
      std::uniform_int_distribution<int> pick_block(0, ev.k - 1);
      const int q = pick_block(engine);
      col_lo = q * ev.m;
      col_hi = col_lo + ev.m;
    }
    std::vector<int> cols(static_cast<std::size_t>(col_hi - col_lo));
    std::iota(cols.begin(), cols.end(), col_lo);
    std::shuffle(cols.begin(), cols.end(), engine);
    cols.resize(static_cast<std::size_t>(n));

    std::shuffle(all_rows.begin(), all_rows.end(), engine);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        pooled.push_back(scale * ev.entry(all_rows[static_cast<std::size_t>(r)],
                                          cols[static_cast<std::size_t>(c)]));
  }
  return gaussian_element_tests(pooled);
}

inline void write_ks_csv(std::ostream& os, const std::vector<KsReport>& reports) {
  os << "component,statistic,pvalue,samples\n";
  for (const auto& r : reports)
    os << ks_component_name(r.component) << ',' << r.statistic << ','
       << r.p_value << ',' << r.samples << '\n';
}

}  // namespace dbs
