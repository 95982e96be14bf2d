#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbs/errors.hpp"
#include "dbs/linalg.hpp"
#include "dbs/occupation.hpp"
#include "dbs/random.hpp"

namespace dbs {

// One brick-wall layer of beam splitters. The parity of the 1-based layer
// index fixes the geometry: odd layers hold m/2 splitters spanning all
// modes, even layers hold (m-2)/2 splitters with identity on the first and
// last mode.
struct BeamSplitterLayer {
  int index = 1;                // 1-based
  std::vector<double> angles;   // theta in [0, pi/2], t = cos, r = sin
};

inline int expected_angle_count(int m, int layer_index) {
  return (layer_index % 2 == 1) ? m / 2 : (m - 2) / 2;
}

struct GenerationNetwork {
  int m = 2;
  int k = 1;
  std::vector<BeamSplitterLayer> layers;
  RandomSeed provenance;
};

inline void validate_network_geometry(int m, int k) {
  if (m < 2 || m % 2 != 0)
    throw configuration_error("network: mode count m must be even and >= 2");
  if (k < 1) throw configuration_error("network: layer count k must be >= 1");
}

// m x m real orthogonal layer matrix: 2x2 rotation blocks [[t, r], [-r, t]]
// starting at mode 1 for odd layers and mode 2 for even layers.
inline ComplexMatrix coupling_matrix(const BeamSplitterLayer& layer, int m) {
  if (m < 2 || m % 2 != 0)
    throw configuration_error("coupling_matrix: m must be even and >= 2");
  const int want = expected_angle_count(m, layer.index);
  if (static_cast<int>(layer.angles.size()) != want)
    throw configuration_error("coupling_matrix: layer " +
                              std::to_string(layer.index) + " expects " +
                              std::to_string(want) + " angles, got " +
                              std::to_string(layer.angles.size()));
  ComplexMatrix c = ComplexMatrix::Identity(m, m);
  const int start = (layer.index % 2 == 1) ? 0 : 1;
  for (int s = 0; s < want; ++s) {
    const double t = std::cos(layer.angles[static_cast<std::size_t>(s)]);
    const double r = std::sin(layer.angles[static_cast<std::size_t>(s)]);
    const int a = start + 2 * s;
    c(a, a) = t;
    c(a, a + 1) = r;
    c(a + 1, a) = -r;
    c(a + 1, a + 1) = t;
  }
  return c;
}

// B_q = C_k * C_{k-1} * ... * C_q; C_q acts first on column vectors.
inline ComplexMatrix block(const GenerationNetwork& net, int q) {
  if (q < 1 || q > net.k)
    throw configuration_error("block: q out of range [1, k]");
  ComplexMatrix b = ComplexMatrix::Identity(net.m, net.m);
  for (int i = q; i <= net.k; ++i)
    b = coupling_matrix(net.layers[static_cast<std::size_t>(i - 1)], net.m) * b;
  return b;
}

// The m x (k*m) evolution matrix [U_H B_1 | ... | U_H B_k], stored
// block-by-block. Column c = (q-1)*m + j maps to injection layer q (1-based)
// and spatial mode j (0-based).
struct EvolutionMatrix {
  int m = 0;
  int k = 0;
  std::vector<ComplexMatrix> blocks;

  int cols() const { return k * m; }
  Complex entry(int row, int col) const {
    return blocks[static_cast<std::size_t>(col / m)](row, col % m);
  }
};

inline EvolutionMatrix evolution_matrix(const GenerationNetwork& net,
                                        const ComplexMatrix& u_h) {
  if (u_h.rows() != net.m || u_h.cols() != net.m)
    throw dimension_error("evolution_matrix: U_H must be m x m");
  if (unitarity_residual(u_h) > 1e-10)
    throw configuration_error("evolution_matrix: U_H is not unitary");
  EvolutionMatrix ev;
  ev.m = net.m;
  ev.k = net.k;
  ev.blocks.reserve(static_cast<std::size_t>(net.k));
  for (int q = 1; q <= net.k; ++q) ev.blocks.push_back(u_h * block(net, q));
  return ev;
}

// n x n submatrix of Eq-style row/column selection: occupied input indices
// pick columns (once each, s_in is binary), output counts pick rows with
// multiplicity (collisions repeat rows).
inline ComplexMatrix submatrix(const EvolutionMatrix& ev, const Occupation& s_in,
                               const Occupation& s_out) {
  if (static_cast<int>(s_in.size()) != ev.cols())
    throw dimension_error("submatrix: s_in must have length k*m");
  if (static_cast<int>(s_out.size()) != ev.m)
    throw dimension_error("submatrix: s_out must have length m");
  if (!is_binary(s_in))
    throw configuration_error("submatrix: input occupations must be 0 or 1");
  const int n = total_photons(s_in);
  if (total_photons(s_out) != n)
    throw configuration_error("submatrix: photon number not conserved");

  std::vector<int> cols;
  cols.reserve(static_cast<std::size_t>(n));
  for (int c = 0; c < ev.cols(); ++c)
    if (s_in[static_cast<std::size_t>(c)]) cols.push_back(c);
  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < ev.m; ++j)
    for (int rep = 0; rep < s_out[static_cast<std::size_t>(j)]; ++rep)
      rows.push_back(j);

  ComplexMatrix sub(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      sub(r, c) = ev.entry(rows[static_cast<std::size_t>(r)],
                           cols[static_cast<std::size_t>(c)]);
  return sub;
}

// Angles drawn uniformly on [0, pi/2), reproducible from the seed.
inline GenerationNetwork random_network(int m, int k, RandomSeed rs) {
  validate_network_geometry(m, k);
  GenerationNetwork net;
  net.m = m;
  net.k = k;
  net.provenance = rs;
  auto engine = make_engine(rs);
  std::uniform_real_distribution<double> uni(0.0, std::numbers::pi / 2.0);
  for (int i = 1; i <= k; ++i) {
    BeamSplitterLayer layer;
    layer.index = i;
    const int count = expected_angle_count(m, i);
    layer.angles.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) layer.angles.push_back(uni(engine));
    net.layers.push_back(std::move(layer));
  }
  return net;
}

// Every beam splitter at the same angle; handy for benchmark networks such
// as the balanced two-mode splitter.
inline GenerationNetwork uniform_network(int m, int k, double theta) {
  validate_network_geometry(m, k);
  GenerationNetwork net;
  net.m = m;
  net.k = k;
  for (int i = 1; i <= k; ++i) {
    BeamSplitterLayer layer;
    layer.index = i;
    layer.angles.assign(static_cast<std::size_t>(expected_angle_count(m, i)),
                        theta);
    net.layers.push_back(std::move(layer));
  }
  return net;
}

inline nlohmann::json network_to_json(const GenerationNetwork& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : net.layers) layers.push_back(layer.angles);
  return nlohmann::json{{"m", net.m},
                        {"k", net.k},
                        {"seed", {{"seed", net.provenance.seed},
                                  {"stream", net.provenance.stream}}},
                        {"layers", layers}};
}

inline GenerationNetwork network_from_json(const nlohmann::json& j) {
  GenerationNetwork net;
  net.m = j.at("m").get<int>();
  net.k = j.at("k").get<int>();
  validate_network_geometry(net.m, net.k);
  if (j.contains("seed")) {
    net.provenance.seed = j["seed"].value("seed", std::uint64_t(0));
    net.provenance.stream = j["seed"].value("stream", std::uint64_t(0));
  }
  const auto& layers = j.at("layers");
  if (static_cast<int>(layers.size()) != net.k)
    throw configuration_error("network_from_json: layer count mismatch");
  for (int i = 1; i <= net.k; ++i) {
    BeamSplitterLayer layer;
    layer.index = i;
    layer.angles = layers[static_cast<std::size_t>(i - 1)].get<std::vector<double>>();
    if (static_cast<int>(layer.angles.size()) != expected_angle_count(net.m, i))
      throw configuration_error("network_from_json: bad angle count in layer " +
                                std::to_string(i));
    net.layers.push_back(std::move(layer));
  }
  return net;
}

}  // namespace dbs
