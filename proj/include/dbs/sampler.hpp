#pragma once

#include <cmath>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "dbs/errors.hpp"
#include "dbs/linalg.hpp"
#include "dbs/network.hpp"
#include "dbs/occupation.hpp"
#include "dbs/random.hpp"

namespace dbs {

// Unnormalized outcome weight |Per(sub)|^2 / prod_j(s_out[j]!). Input
// factorials are all 1 since inputs are binary.
inline double outcome_weight(const EvolutionMatrix& ev, const Occupation& s_in,
                             const Occupation& s_out) {
  const int n = total_photons(s_in);
  if (n > 12) throw size_limit_error("outcome_weight: n > 12 unsupported");
  const ComplexMatrix sub = submatrix(ev, s_in, s_out);
  const Complex per = permanent_ryser(sub);
  double fact = 1.0;
  for (int t : s_out)
    for (int i = 2; i <= t; ++i) fact *= i;
  return std::norm(per) / fact;
}

// Exact output distribution over all length-m occupation vectors with total
// n, in the fixed enumeration order of next_occupation. The normalizer N
// equals Per of the Gram matrix of the selected input columns; both routes
// are computed and compared.
struct OutcomeDistribution {
  std::vector<std::pair<Occupation, double>> entries;  // probability per outcome
  double normalizer = 0.0;
};

inline ComplexMatrix selected_columns(const EvolutionMatrix& ev,
                                      const Occupation& s_in) {
  const int n = total_photons(s_in);
  ComplexMatrix v(ev.m, n);
  int c_out = 0;
  for (int c = 0; c < ev.cols(); ++c)
    if (s_in[static_cast<std::size_t>(c)]) {
      for (int r = 0; r < ev.m; ++r) v(r, c_out) = ev.entry(r, c);
      ++c_out;
    }
  return v;
}

inline OutcomeDistribution full_distribution(const EvolutionMatrix& ev,
                                             const Occupation& s_in) {
  const int n = total_photons(s_in);
  if (n > 6) throw size_limit_error("full_distribution: n > 6 unsupported");
  if (occupation_count(ev.m, n) > 1e6)
    throw size_limit_error("full_distribution: outcome space exceeds 1e6");
  if (!is_binary(s_in))
    throw configuration_error("full_distribution: input occupations must be 0 or 1");

  OutcomeDistribution dist;
  Occupation occ = first_occupation(ev.m, n);
  do {
    dist.entries.emplace_back(occ, outcome_weight(ev, s_in, occ));
  } while (next_occupation(occ));

  double total = 0.0;
  for (const auto& [o, w] : dist.entries) total += w;
  dist.normalizer = total;
  if (total <= 0.0)
    throw numeric_error("full_distribution: zero total weight");

  // Cross-check against the permanent-Gram identity.
  const double gram_per =
      permanent_ryser(gram_matrix(selected_columns(ev, s_in))).real();
  if (std::abs(total - gram_per) > 1e-8 * std::max(1.0, std::abs(gram_per)))
    throw numeric_error("full_distribution: normalizer disagrees with Gram permanent");

  for (auto& [o, w] : dist.entries) w /= total;
  return dist;
}

// Inverse-CDF sampling in the distribution's enumeration order.
inline std::vector<Occupation> sample_outcomes(const EvolutionMatrix& ev,
                                               const Occupation& s_in, int shots,
                                               RandomSeed rs) {
  const OutcomeDistribution dist = full_distribution(ev, s_in);
  std::vector<double> cdf;
  cdf.reserve(dist.entries.size());
  double acc = 0.0;
  for (const auto& [o, p] : dist.entries) {
    acc += p;
    cdf.push_back(acc);
  }
  auto engine = make_engine(rs);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Occupation> out;
  out.reserve(static_cast<std::size_t>(shots));
  for (int s = 0; s < shots; ++s) {
    const double u = uni(engine);
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf[mid] > u)
        hi = mid;
      else
        lo = mid + 1;
    }
    out.push_back(dist.entries[lo].first);
  }
  return out;
}

inline void write_distribution_csv(std::ostream& os,
                                   const OutcomeDistribution& dist) {
  os << "occupation,probability\n";
  for (const auto& [occ, p] : dist.entries)
    os << occupation_to_string(occ) << ',' << p << '\n';
}

}  // namespace dbs
