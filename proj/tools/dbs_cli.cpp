// Command-line frontend: emits the rate/SNR/bound tables, exact sampling
// data, Monte Carlo summaries, and Gaussian-element diagnostics as CSV/JSON
// files fully determined by an experiment manifest.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dbs/dbs.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitSizeLimit = 3;
constexpr int kExitNumeric = 4;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string manifest_hash(const json& manifest) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0')
     << fnv1a64(manifest.dump());
  return os.str();
}

// File manifest wins over flags; overridden keys are reported on stderr.
json merge_manifest(json flags, const std::string& manifest_path) {
  if (manifest_path.empty()) return flags;
  std::ifstream in(manifest_path);
  if (!in) throw dbs::configuration_error("cannot open manifest " + manifest_path);
  json file = json::parse(in);
  for (auto& [key, value] : file.items()) {
    if (flags.contains(key) && flags[key] != value)
      std::cerr << "warning: manifest overrides --" << key << '\n';
    flags[key] = value;
  }
  return flags;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dbs::configuration_error("cannot open output file " + path);
  out << text;
}

std::ostringstream make_csv_stream(const json& manifest, const char* header) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << header << '\n' << "# manifest " << manifest_hash(manifest) << '\n';
  return os;
}

unsigned worker_count() {
  if (const char* env = std::getenv("DBS_WORKERS")) {
    const long w = std::atol(env);
    if (w > 0) return static_cast<unsigned>(w);
  }
  return 0;  // library default: available parallelism
}

dbs::SchemeParams scheme_params(dbs::Scheme scheme, int n, long long m,
                                long long k) {
  dbs::SchemeParams p;
  p.scheme = scheme;
  p.n = n;
  p.m = m > 0 ? m : static_cast<long long>(n) * n;  // default m = n^2
  if (scheme == dbs::Scheme::SBS)
    p.k = 1;
  else
    p.k = k > 0 ? k : n;  // default k = n for DBS
  return p;
}

int cmd_rates(const json& mf) {
  auto os = make_csv_stream(mf, "n,scheme,lambda,p_success");
  const double fixed_lambda = mf.value("lambda", -1.0);
  for (int n = mf.at("n_min").get<int>(); n <= mf.at("n_max").get<int>(); ++n) {
    for (dbs::Scheme scheme : {dbs::Scheme::SBS, dbs::Scheme::DBS}) {
      const auto p = scheme_params(scheme, n, mf.value("m", 0ll), mf.value("k", 0ll));
      const double lam = dbs::lambda_opt(p);
      os << n << ',' << dbs::scheme_name(scheme) << ',' << lam << ','
         << dbs::success_probability(p, dbs::PdcSource(lam)) << '\n';
      if (fixed_lambda >= 0.0)
        os << n << ',' << dbs::scheme_name(scheme) << "_fixed," << fixed_lambda
           << ',' << dbs::success_probability(p, dbs::PdcSource(fixed_lambda))
           << '\n';
    }
  }
  write_text(mf.value("out", "-"), os.str());
  return 0;
}

int cmd_lambda(const json& mf) {
  auto os = make_csv_stream(mf, "n,scheme,lambda_opt");
  for (int n = mf.at("n_min").get<int>(); n <= mf.at("n_max").get<int>(); ++n)
    for (dbs::Scheme scheme : {dbs::Scheme::SBS, dbs::Scheme::DBS}) {
      const auto p = scheme_params(scheme, n, mf.value("m", 0ll), mf.value("k", 0ll));
      os << n << ',' << dbs::scheme_name(scheme) << ',' << dbs::lambda_opt(p)
         << '\n';
    }
  write_text(mf.value("out", "-"), os.str());
  return 0;
}

int cmd_snr(const json& mf) {
  auto os = make_csv_stream(mf, "n,scheme,snr");
  for (int n = mf.at("n_min").get<int>(); n <= mf.at("n_max").get<int>(); ++n)
    for (dbs::Scheme scheme : {dbs::Scheme::SBS, dbs::Scheme::DBS}) {
      const auto p = scheme_params(scheme, n, mf.value("m", 0ll), mf.value("k", 0ll));
      os << n << ',' << dbs::scheme_name(scheme) << ',' << dbs::snr(p) << '\n';
    }
  write_text(mf.value("out", "-"), os.str());
  return 0;
}

int cmd_bounds(const json& mf) {
  auto os = make_csv_stream(
      mf, "n,min_m,min_k,asymptote_b1,asymptote_be,exact_pmax_sbs,exact_pmax_dbs,ratio");
  const double e = std::exp(1.0);
  for (int n = mf.at("n_min").get<int>(); n <= mf.at("n_max").get<int>(); ++n) {
    const auto sbs = scheme_params(dbs::Scheme::SBS, n, 0, 0);
    const auto dbsp = scheme_params(dbs::Scheme::DBS, n, 0, 0);
    const double p_sbs =
        dbs::success_probability(sbs, dbs::PdcSource(dbs::lambda_opt(sbs)));
    const double p_dbs =
        dbs::success_probability(dbsp, dbs::PdcSource(dbs::lambda_opt(dbsp)));
    os << n << ',' << dbs::min_modes_for_unit_snr(n) << ','
       << dbs::min_layers_for_unit_snr(n) << ',' << dbs::asymptotic_pmax(n, 1.0)
       << ',' << dbs::asymptotic_pmax(n, e) << ',' << p_sbs << ',' << p_dbs
       << ',' << p_dbs / p_sbs << '\n';
  }
  write_text(mf.value("out", "-"), os.str());
  return 0;
}

dbs::Occupation parse_occupation(const std::string& text) {
  dbs::Occupation occ;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    occ.push_back(std::stoi(item));
  return occ;
}

int cmd_sample(const json& mf) {
  const dbs::RandomSeed net_seed{mf.value("seed", std::uint64_t(0)),
                                 mf.value("stream", std::uint64_t(0))};
  const int m = mf.at("m").get<int>();
  const int k = mf.at("k").get<int>();
  dbs::GenerationNetwork net;
  if (mf.contains("network")) {
    std::ifstream in(mf["network"].get<std::string>());
    if (!in) throw dbs::configuration_error("cannot open network file");
    net = dbs::network_from_json(json::parse(in));
  } else if (mf.contains("theta")) {
    net = dbs::uniform_network(m, k, mf["theta"].get<double>());
  } else {
    net = dbs::random_network(m, k, net_seed);
  }
  const dbs::ComplexMatrix u_h =
      mf.value("uh", std::string("haar")) == "identity"
          ? dbs::ComplexMatrix::Identity(net.m, net.m)
          : dbs::haar_unitary(net.m, {net_seed.seed, net_seed.stream + 1});
  const auto ev = dbs::evolution_matrix(net, u_h);

  const dbs::Occupation s_in = parse_occupation(mf.at("input").get<std::string>());
  if (static_cast<int>(s_in.size()) != ev.cols())
    throw dbs::configuration_error("sample: input must have length k*m");

  const auto dist = dbs::full_distribution(ev, s_in);
  const int shots = mf.value("shots", 0);
  const std::string prefix = mf.value("out", std::string("sample"));

  auto dist_os = make_csv_stream(mf, "occupation,probability");
  for (const auto& [occ, p] : dist.entries)
    dist_os << dbs::occupation_to_string(occ) << ',' << p << '\n';
  write_text(prefix + ".dist.csv", dist_os.str());

  if (shots > 0) {
    const auto shots_list = dbs::sample_outcomes(
        ev, s_in, shots, {net_seed.seed, net_seed.stream + 2});
    auto shot_os = make_csv_stream(mf, "shot,occupation");
    for (std::size_t i = 0; i < shots_list.size(); ++i)
      shot_os << i << ',' << dbs::occupation_to_string(shots_list[i]) << '\n';
    write_text(prefix + ".shots.csv", shot_os.str());
  }

  json sidecar = {{"manifest", mf},
                  {"manifest_hash", manifest_hash(mf)},
                  {"network", dbs::network_to_json(net)},
                  {"normalizer", dist.normalizer}};
  write_text(prefix + ".manifest.json", sidecar.dump(2) + "\n");
  return 0;
}

int cmd_montecarlo(const json& mf) {
  const int n = mf.at("n").get<int>();
  const std::string scheme_str = mf.value("scheme", std::string("DBS"));
  const dbs::Scheme scheme = scheme_str == "BS"    ? dbs::Scheme::BS
                             : scheme_str == "SBS" ? dbs::Scheme::SBS
                                                   : dbs::Scheme::DBS;
  const auto p = scheme_params(scheme, n, mf.value("m", 0ll), mf.value("k", 0ll));
  const double lam = mf.contains("lambda") ? mf["lambda"].get<double>()
                                           : dbs::lambda_opt(p);
  const dbs::PdcSource src(lam);
  const std::uint64_t shots = mf.value("shots", std::uint64_t(0));
  if (shots == 0) throw dbs::configuration_error("montecarlo: shots must be >= 1");
  const dbs::RandomSeed rs{mf.value("seed", std::uint64_t(0)),
                           mf.value("stream", std::uint64_t(0))};

  const auto sum = dbs::simulate_trials(p, src, shots, rs, worker_count());
  const double p_s = dbs::success_probability(p, src);
  const double snr = dbs::snr_at(p, lam);
  const double z_ps = sum.p_s_err > 0 ? (sum.p_s - p_s) / sum.p_s_err : 0.0;
  const double z_snr =
      sum.snr_err > 0 ? (sum.snr - snr) / sum.snr_err : 0.0;

  json out = {{"config",
               {{"n", p.n}, {"m", p.m}, {"k", p.k}, {"scheme", scheme_str},
                {"lambda", lam}}},
              {"manifest_hash", manifest_hash(mf)},
              {"analytic", {{"p_s", p_s}, {"snr", snr}}},
              {"z", {{"p_s", z_ps}, {"snr", z_snr}}}};
  out.update(dbs::summary_to_json(sum));
  write_text(mf.value("out", "-"), out.dump(2) + "\n");
  return 0;
}

int cmd_gauss(const json& mf) {
  const int m = mf.at("m").get<int>();
  const int k = mf.at("k").get<int>();
  const int n = mf.at("n").get<int>();
  const int draws = mf.value("draws", 500);
  const dbs::RandomSeed rs{mf.value("seed", std::uint64_t(0)),
                           mf.value("stream", std::uint64_t(0))};
  const auto net = dbs::random_network(m, k, rs);
  const auto u_h = dbs::haar_unitary(m, {rs.seed, rs.stream + 1});
  const auto ev = dbs::evolution_matrix(net, u_h);
  const auto selection = mf.value("selection", std::string("cross")) == "single"
                             ? dbs::ColumnSelection::SingleBlock
                             : dbs::ColumnSelection::CrossBlock;
  const auto reports =
      dbs::submatrix_element_test(ev, n, draws, {rs.seed, rs.stream + 2}, selection);

  auto os = make_csv_stream(mf, "component,statistic,pvalue,samples");
  for (const auto& r : reports)
    os << dbs::ks_component_name(r.component) << ',' << r.statistic << ','
       << r.p_value << ',' << r.samples << '\n';
  write_text(mf.value("out", "-"), os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven boson sampling toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0, stream = 0;
  std::string out = "-", format = "csv", manifest_path;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--stream", stream, "RNG stream id");
  app.add_option("--out", out, "output path ('-' for stdout)");
  app.add_option("--format", format, "output format (csv|json)");
  app.add_option("--manifest", manifest_path, "JSON manifest file (wins over flags)");

  int n = 0, n_min = 1, n_max = 50, shots = 0, draws = 500, k_net = 1, m_net = 2;
  long long m_ll = 0, k_ll = 0;
  double lambda = -1.0, theta = -1.0;
  std::string scheme = "DBS", input, uh = "haar", selection = "cross",
              network_file;

  auto add_range = [&](CLI::App* cmd) {
    cmd->add_option("--n-min", n_min, "smallest photon number");
    cmd->add_option("--n-max", n_max, "largest photon number");
    cmd->add_option("--m", m_ll, "explicit mode count (default n^2)");
    cmd->add_option("--k", k_ll, "explicit layer count (default n for DBS)");
  };
  auto* rates = app.add_subcommand("rates", "success probabilities per scheme");
  add_range(rates);
  rates->add_option("--lambda", lambda, "additional fixed-lambda curves");
  auto* lam_cmd = app.add_subcommand("lambda", "optimal squeezing per scheme");
  add_range(lam_cmd);
  auto* snr_cmd = app.add_subcommand("snr", "heralding signal-to-noise ratio");
  add_range(snr_cmd);
  auto* bounds = app.add_subcommand("bounds", "unit-SNR bounds and asymptotes");
  add_range(bounds);

  auto* sample = app.add_subcommand("sample", "exact output distribution and shots");
  sample->add_option("--m", m_net, "mode count");
  sample->add_option("--k", k_net, "generation layers");
  sample->add_option("--theta", theta, "uniform beam-splitter angle");
  sample->add_option("--uh", uh, "haar|identity");
  sample->add_option("--input", input, "comma-separated input occupation (length k*m)");
  sample->add_option("--network", network_file, "network JSON file");
  sample->add_option("--shots", shots, "number of sampled shots");

  auto* mc = app.add_subcommand("montecarlo", "source-model Monte Carlo");
  mc->add_option("--n", n, "target photon number");
  mc->add_option("--m", m_ll, "mode count (default n^2)");
  mc->add_option("--k", k_ll, "layers (default n for DBS)");
  mc->add_option("--scheme", scheme, "BS|SBS|DBS");
  mc->add_option("--lambda", lambda, "squeezing (default optimal)");
  mc->add_option("--shots", shots, "trial count");

  auto* gauss = app.add_subcommand("gauss", "submatrix Gaussian-element KS tests");
  gauss->add_option("--m", m_net, "mode count");
  gauss->add_option("--k", k_net, "generation layers");
  gauss->add_option("--n", n, "submatrix size");
  gauss->add_option("--draws", draws, "number of random submatrices");
  gauss->add_option("--selection", selection, "cross|single block columns");

  // Let --seed/--out/... appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    json mf = {{"seed", seed}, {"stream", stream}, {"out", out}, {"format", format}};
    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    mf["command"] = name;

    if (name == "rates" || name == "lambda" || name == "snr" || name == "bounds") {
      mf["n_min"] = n_min;
      mf["n_max"] = n_max;
      if (m_ll > 0) mf["m"] = m_ll;
      if (k_ll > 0) mf["k"] = k_ll;
      if (name == "rates" && lambda >= 0.0) mf["lambda"] = lambda;
    } else if (name == "sample") {
      mf["m"] = m_net;
      mf["k"] = k_net;
      if (theta >= 0.0) mf["theta"] = theta;
      mf["uh"] = uh;
      if (!input.empty()) mf["input"] = input;
      if (!network_file.empty()) mf["network"] = network_file;
      if (shots > 0) mf["shots"] = shots;
    } else if (name == "montecarlo") {
      mf["n"] = n;
      if (m_ll > 0) mf["m"] = m_ll;
      if (k_ll > 0) mf["k"] = k_ll;
      mf["scheme"] = scheme;
      if (lambda >= 0.0) mf["lambda"] = lambda;
      mf["shots"] = static_cast<std::uint64_t>(shots);
    } else if (name == "gauss") {
      mf["m"] = m_net;
      mf["k"] = k_net;
      mf["n"] = n;
      mf["draws"] = draws;
      mf["selection"] = selection;
    }
    mf = merge_manifest(mf, manifest_path);

    const std::string command = mf.value("command", name);
    if (command == "rates") return cmd_rates(mf);
    if (command == "lambda") return cmd_lambda(mf);
    if (command == "snr") return cmd_snr(mf);
    if (command == "bounds") return cmd_bounds(mf);
    if (command == "sample") return cmd_sample(mf);
    if (command == "montecarlo") return cmd_montecarlo(mf);
    if (command == "gauss") return cmd_gauss(mf);
    throw dbs::configuration_error("unknown command " + command);
  } catch (const dbs::size_limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSizeLimit;
  } catch (const dbs::configuration_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const dbs::dimension_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
