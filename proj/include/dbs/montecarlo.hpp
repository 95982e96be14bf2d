#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dbs/errors.hpp"
#include "dbs/random.hpp"
#include "dbs/source.hpp"

namespace dbs {

// One simulated shot over all k*m sources.
struct TrialRecord {
  std::vector<int> photon_counts;  // per source
  std::vector<bool> heralds;       // count >= 1
  bool valid = false;              // exactly n heralds
  bool noisy = false;              // valid and some heralded count >= 2
};

// Inverse-CDF draw from P(i) = (1-lambda^2) lambda^(2i) given u in (0,1):
// the survival function is P(X >= i) = lambda^(2i).
inline int geometric_photon_count(const PdcSource& src, double u) {
  const double l2 = src.lambda * src.lambda;
  if (l2 == 0.0) return 0;
  const int i = static_cast<int>(std::floor(std::log(u) / std::log(l2)));
  return i < 0 ? 0 : i;
}

inline int geometric_photon_count(const PdcSource& src, RandomSeed rs) {
  return geometric_photon_count(src, counter_uniform(rs, 0, 0));
}

// Threshold heralds fire on count >= 1 (the baseline detector model);
// number-resolving heralds fire only on exactly 1.
enum class HeraldMode { Threshold, NumberResolving };

inline TrialRecord simulate_trial(const SchemeParams& p, const PdcSource& src,
                                  RandomSeed rs, std::uint64_t trial_index,
                                  HeraldMode mode = HeraldMode::Threshold) {
  const long long q = p.input_positions();
  TrialRecord rec;
  rec.photon_counts.resize(static_cast<std::size_t>(q));
  rec.heralds.resize(static_cast<std::size_t>(q));
  int heralds = 0;
  bool higher_order = false;
  for (long long s = 0; s < q; ++s) {
    const double u = counter_uniform(rs, trial_index, static_cast<std::uint64_t>(s));
    const int count = geometric_photon_count(src, u);
    rec.photon_counts[static_cast<std::size_t>(s)] = count;
    const bool fired = mode == HeraldMode::Threshold ? count >= 1 : count == 1;
    rec.heralds[static_cast<std::size_t>(s)] = fired;
    if (fired) ++heralds;
    if (fired && count >= 2) higher_order = true;
  }
  rec.valid = heralds == p.n;
  rec.noisy = rec.valid && higher_order;
  return rec;
}

// The paper's success probability counts clean generation events (n exact
// single photons, vacuum elsewhere), so p_s estimates clean/shots. With
// threshold heralds the raw herald-coincidence rate p_valid = valid/shots is
// larger by the factor 1/(1-lambda^2)^n.
struct TrialSummary {
  std::uint64_t shots = 0;
  std::uint64_t valid = 0;
  std::uint64_t noisy = 0;
  std::uint64_t clean = 0;  // valid and all heralded counts exactly 1
  double p_s = 0.0;         // clean / shots
  double p_s_err = 0.0;
  double p_valid = 0.0;     // valid / shots
  double p_valid_err = 0.0;
  double snr = 0.0;         // clean / noisy among valid trials
  double snr_err = 0.0;
};

// Trials are keyed by (seed, stream, trial index), so any contiguous
// partition over workers accumulates the same integer tallies.
inline TrialSummary simulate_trials(const SchemeParams& p, const PdcSource& src,
                                    std::uint64_t shots, RandomSeed rs,
                                    unsigned workers = 0,
                                    HeraldMode mode = HeraldMode::Threshold) {
  validate_params(p);
  if (shots < 1) throw configuration_error("simulate_trials: shots must be >= 1");
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t chunk = (shots + workers - 1) / workers;

  std::vector<std::uint64_t> valid_w(workers, 0), noisy_w(workers, 0);
  auto run_range = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t valid = 0, noisy = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      const TrialRecord rec = simulate_trial(p, src, rs, t, mode);
      if (rec.valid) ++valid;
      if (rec.noisy) ++noisy;
    }
    valid_w[w] = valid;
    noisy_w[w] = noisy;
  };

  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, shots);
    const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, shots);
    pool.emplace_back(run_range, w, lo, hi);
  }
  for (auto& th : pool) th.join();

  TrialSummary sum;
  sum.shots = shots;
  for (unsigned w = 0; w < workers; ++w) {
    sum.valid += valid_w[w];
    sum.noisy += noisy_w[w];
  }
  sum.clean = sum.valid - sum.noisy;
  sum.p_s = double(sum.clean) / double(shots);
  sum.p_s_err = std::sqrt(sum.p_s * (1.0 - sum.p_s) / double(shots));
  sum.p_valid = double(sum.valid) / double(shots);
  sum.p_valid_err = std::sqrt(sum.p_valid * (1.0 - sum.p_valid) / double(shots));
  if (sum.noisy > 0) {
    const double f = double(sum.clean) / double(sum.valid);  // P(clean | valid)
    sum.snr = double(sum.clean) / double(sum.noisy);
    // Delta method on the binomial fraction f: d(f/(1-f))/df = 1/(1-f)^2.
    const double f_err = std::sqrt(f * (1.0 - f) / double(sum.valid));
    sum.snr_err = f_err / ((1.0 - f) * (1.0 - f));
  } else {
    sum.snr = sum.valid > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    sum.snr_err = std::numeric_limits<double>::quiet_NaN();
  }
  return sum;
}

inline nlohmann::json summary_to_json(const TrialSummary& s) {
  return nlohmann::json{{"shots", s.shots},     {"valid", s.valid},
                        {"noisy", s.noisy},     {"clean", s.clean},
                        {"p_s", s.p_s},         {"p_s_err", s.p_s_err},
                        {"p_valid", s.p_valid}, {"p_valid_err", s.p_valid_err},
                        {"snr", s.snr},         {"snr_err", s.snr_err}};
}

}  // namespace dbs
