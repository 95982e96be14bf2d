#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dbs/errors.hpp"

namespace dbs {

// Photon counts per mode. Inputs are length k*m and binary; outputs are
// length m and may contain collisions.
using Occupation = std::vector<int>;

inline int total_photons(const Occupation& occ) {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

inline bool is_binary(const Occupation& occ) {
  for (int c : occ)
    if (c != 0 && c != 1) return false;
  return true;
}

// Number of occupation vectors of length m with total n: C(m+n-1, n).
inline double occupation_count(int m, int n) {
  double c = 1.0;
  for (int i = 1; i <= n; ++i) c *= double(m - 1 + i) / double(i);
  return c;
}

inline Occupation first_occupation(int m, int n) {
  Occupation occ(static_cast<std::size_t>(m), 0);
  if (m > 0) occ[0] = n;
  return occ;
}

// Advance to the next occupation vector in lexicographically decreasing
// order; returns false after the last one (all mass in the final mode).
inline bool next_occupation(Occupation& occ) {
  const int m = static_cast<int>(occ.size());
  int i = m - 2;
  while (i >= 0 && occ[static_cast<std::size_t>(i)] == 0) --i;
  if (i < 0) return false;
  const int tail = occ[static_cast<std::size_t>(m - 1)];
  occ[static_cast<std::size_t>(i)] -= 1;
  occ[static_cast<std::size_t>(i + 1)] = tail + 1;
  if (i + 1 != m - 1) occ[static_cast<std::size_t>(m - 1)] = 0;
  return true;
}

// "2-0-1" rendering used by the CSV exports.
inline std::string occupation_to_string(const Occupation& occ) {
  std::string s;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(occ[i]);
  }
  return s;
}

}  // namespace dbs
