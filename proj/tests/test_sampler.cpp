#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "dbs/sampler.hpp"

using dbs::ComplexMatrix;
constexpr double kPi = std::numbers::pi;

namespace {

// Balanced two-mode splitter, identity U_H: the Hong-Ou-Mandel benchmark.
dbs::EvolutionMatrix hom_network() {
  const auto net = dbs::uniform_network(2, 1, kPi / 4);
  return dbs::evolution_matrix(net, ComplexMatrix::Identity(2, 2));
}

}  // namespace

TEST_CASE("outcome weights on the HOM benchmark") {
  const auto ev = hom_network();
  const dbs::Occupation s_in{1, 1};

  // Per([[t, r], [-r, t]]) = t^2 - r^2 = 0 at theta = pi/4.
  CHECK(dbs::outcome_weight(ev, s_in, {1, 1}) < 1e-12);
  // Repeated-row permanent gives 2 t r = 1, weight 1/2! = 1/2.
  CHECK(dbs::outcome_weight(ev, s_in, {2, 0}) == doctest::Approx(0.5));
  CHECK(dbs::outcome_weight(ev, s_in, {0, 2}) == doctest::Approx(0.5));

  // Cross-check the nonzero weight against the naive permanent oracle.
  const ComplexMatrix sub = dbs::submatrix(ev, s_in, {2, 0});
  CHECK(std::norm(dbs::permanent_naive(sub)) / 2.0 == doctest::Approx(0.5));

  CHECK_THROWS_AS(dbs::outcome_weight(ev, s_in, {1, 0}), dbs::configuration_error);
}

TEST_CASE("identity network is a point mass for a single photon") {
  const auto flat = dbs::uniform_network(4, 2, 0.0);
  const auto ev = dbs::evolution_matrix(flat, ComplexMatrix::Identity(4, 4));
  dbs::Occupation s_in(8, 0);
  s_in[2] = 1;
  dbs::Occupation hit(4, 0);
  hit[2] = 1;
  CHECK(dbs::outcome_weight(ev, s_in, hit) == doctest::Approx(1.0));

  const auto dist = dbs::full_distribution(ev, s_in);
  for (const auto& [occ, p] : dist.entries)
    CHECK(p == doctest::Approx(occ == hit ? 1.0 : 0.0));
}

TEST_CASE("full distribution: HOM probabilities and normalization") {
  const auto ev = hom_network();
  const auto dist = dbs::full_distribution(ev, {1, 1});
  std::map<dbs::Occupation, double> probs;
  for (const auto& [occ, p] : dist.entries) probs[occ] = p;
  CHECK(probs.at({2, 0}) == doctest::Approx(0.5));
  CHECK(probs.at({1, 1}) == doctest::Approx(0.0));
  CHECK(probs.at({0, 2}) == doctest::Approx(0.5));
  // Single-block input: the proportionality constant is exactly 1.
  CHECK(std::abs(dist.normalizer - 1.0) < 1e-9);
}

TEST_CASE("normalization over random cross-layer configurations") {
  for (std::uint64_t trial = 0; trial < 6; ++trial) {
    const int m = 4 + 2 * int(trial % 3);
    const int k = 1 + int(trial % 4);
    const int n = 1 + int(trial % 4);
    const auto net = dbs::random_network(m, k, {300 + trial, 0});
    const auto ev = dbs::evolution_matrix(net, dbs::haar_unitary(m, {300 + trial, 1}));

    // Spread photons across layers round-robin.
    dbs::Occupation s_in(static_cast<std::size_t>(k * m), 0);
    for (int i = 0; i < n; ++i)
      s_in[static_cast<std::size_t>((i * m + i) % (k * m))] = 1;

    const auto dist = dbs::full_distribution(ev, s_in);
    double total = 0.0;
    for (const auto& [occ, p] : dist.entries) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(std::abs(total - 1.0) < 1e-9);

    // Same-layer injection has orthonormal columns, so N = 1.
    dbs::Occupation single(static_cast<std::size_t>(k * m), 0);
    for (int i = 0; i < n; ++i) single[static_cast<std::size_t>(i)] = 1;
    CHECK(std::abs(dbs::full_distribution(ev, single).normalizer - 1.0) < 1e-9);
  }
}

TEST_CASE("permutation equivariance of output labels") {
  const int m = 4;
  const auto net = dbs::random_network(m, 2, {41, 0});
  const ComplexMatrix u_h = dbs::haar_unitary(m, {41, 1});

  // Swap output modes 0 and 2 of U_H.
  ComplexMatrix p = ComplexMatrix::Zero(m, m);
  p(0, 2) = p(2, 0) = p(1, 1) = p(3, 3) = 1.0;

  dbs::Occupation s_in(static_cast<std::size_t>(2 * m), 0);
  s_in[1] = s_in[6] = 1;

  const auto base = dbs::full_distribution(dbs::evolution_matrix(net, u_h), s_in);
  const auto perm = dbs::full_distribution(dbs::evolution_matrix(net, p * u_h), s_in);

  std::map<dbs::Occupation, double> perm_probs;
  for (const auto& [occ, prob] : perm.entries) perm_probs[occ] = prob;
  for (const auto& [occ, prob] : base.entries) {
    dbs::Occupation swapped = occ;
    std::swap(swapped[0], swapped[2]);
    CHECK(perm_probs.at(swapped) == doctest::Approx(prob).epsilon(1e-9));
  }
}

TEST_CASE("size limits") {
  const auto flat = dbs::uniform_network(4, 2, 0.0);
  const auto ev = dbs::evolution_matrix(flat, ComplexMatrix::Identity(4, 4));
  dbs::Occupation s_in(8, 1);  // n = 8 > 6
  CHECK_THROWS_AS(dbs::full_distribution(ev, s_in), dbs::size_limit_error);
}

TEST_CASE("sampling matches the exact distribution") {
  const auto ev = hom_network();
  const int shots = 100000;
  const auto draws = dbs::sample_outcomes(ev, {1, 1}, shots, {7, 7});

  int n20 = 0, n11 = 0;
  for (const auto& occ : draws) {
    if (occ == dbs::Occupation{2, 0}) ++n20;
    if (occ == dbs::Occupation{1, 1}) ++n11;
  }
  CHECK(n11 == 0);  // zero-probability outcome never drawn
  const double se = std::sqrt(0.25 / shots);
  CHECK(std::abs(double(n20) / shots - 0.5) < 3.0 * se);

  // Point mass: every shot identical.
  const auto flat = dbs::uniform_network(4, 1, 0.0);
  const auto evi = dbs::evolution_matrix(flat, ComplexMatrix::Identity(4, 4));
  dbs::Occupation one(4, 0);
  one[3] = 1;
  for (const auto& occ : dbs::sample_outcomes(evi, one, 100, {1, 1})) {
    dbs::Occupation expect(4, 0);
    expect[3] = 1;
    CHECK(occ == expect);
  }
}

TEST_CASE("empirical frequencies within 4 binomial errors per outcome") {
  const int m = 4;
  const auto net = dbs::random_network(m, 2, {62, 0});
  const auto ev = dbs::evolution_matrix(net, dbs::haar_unitary(m, {62, 1}));
  dbs::Occupation s_in(8, 0);
  s_in[0] = s_in[5] = 1;

  const auto dist = dbs::full_distribution(ev, s_in);
  const int shots = 100000;
  const auto draws = dbs::sample_outcomes(ev, s_in, shots, {62, 2});
  std::map<dbs::Occupation, int> freq;
  for (const auto& occ : draws) ++freq[occ];

  for (const auto& [occ, p] : dist.entries) {
    const double emp = double(freq[occ]) / shots;
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / shots);
    CHECK(std::abs(emp - p) <= 4.0 * se + 1e-9);
  }
}
