// Command-line front end: detect / certify / simulate / pipeline.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ssv/matrix_io.hpp"
#include "ssv/report_json.hpp"

namespace {

ssv::ConstantsConfig load_constants(const std::string& path) {
  if (path.empty()) return {};
  return ssv::ConstantsConfig::load(path);
}

std::vector<std::pair<int, int>> parse_sizes(const std::string& text) {
  std::vector<std::pair<int, int>> sizes;
  std::istringstream is(text);
  std::string piece;
  while (std::getline(is, piece, ',')) {
    const auto x = piece.find('x');
    if (x == std::string::npos)
      throw ssv::ConfigurationError("size '" + piece + "' is not NxN");
    sizes.emplace_back(std::stoi(piece.substr(0, x)),
                       std::stoi(piece.substr(x + 1)));
  }
  if (sizes.empty()) throw ssv::ConfigurationError("no sizes given");
  return sizes;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::istringstream is(text);
  std::string piece;
  while (std::getline(is, piece, ',')) grid.push_back(std::stod(piece));
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructive lower bounds for the smallest singular value of "
               "random rectangular matrices"};
  app.require_subcommand(1);

  // detect ------------------------------------------------------------------
  auto* detect = app.add_subcommand(
      "detect", "find dyadic intervals with a mean-zero centering");
  std::string det_dist, det_constants;
  double det_z = 0, det_gamma = 0;
  int det_N = 0;
  detect->add_option("--dist", det_dist, "entry law spec")->required();
  detect->add_option("--z", det_z, "centering point")->required();
  detect->add_option("--gamma", det_gamma, "window mass level")->required();
  detect->add_option("--N", det_N, "row count")->required();
  detect->add_option("--constants", det_constants, "constants file");

  // certify -----------------------------------------------------------------
  auto* certify = app.add_subcommand(
      "certify", "net certificate for a regular/irregular split");
  std::string cert_matrix, cert_shift, cert_hset, cert_net;
  double cert_lambda = 0, cert_epsilon = 0;
  bool cert_full_space = false;
  certify->add_option("--matrix", cert_matrix, "matrix A (CSV)")->required();
  certify->add_option("--shift", cert_shift, "matrix B (CSV), default zero");
  certify->add_option("--lambda", cert_lambda, "shift lambda")->required();
  certify->add_option("--h-set", cert_hset, "interval union lo:hi,lo:hi")
      ->required();
  certify->add_option("--net", cert_net, "net points (CSV)")->required();
  certify->add_option("--epsilon", cert_epsilon, "covering radius")->required();
  certify->add_flag("--full-space", cert_full_space,
                    "use E = R^n for every net point");

  // simulate ----------------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "seeded Monte Carlo tail experiment for s_min/sqrt(N)");
  std::string sim_dist, sim_sizes, sim_shift = "zero", sim_ugrid;
  std::string sim_out, sim_json;
  double sim_delta = 0, sim_beta = 0.5;
  int sim_trials = 0;
  std::uint64_t sim_seed = 0;
  simulate->add_option("--dist", sim_dist, "entry law spec")->required();
  simulate->add_option("--delta", sim_delta, "aspect ratio floor")->required();
  simulate->add_option("--beta", sim_beta, "anti-concentration level");
  simulate->add_option("--sizes", sim_sizes, "comma list of NxN pairs, e.g. 100x50")
      ->required();
  simulate->add_option("--trials", sim_trials, "trials per size")->required();
  simulate->add_option("--seed", sim_seed, "master seed")->required();
  simulate->add_option("--shift", sim_shift, "zero | identity:L | file:PATH");
  simulate->add_option("--u-grid", sim_ugrid, "thresholds for s_min/sqrt(N)")
      ->required();
  simulate->add_option("--out", sim_out, "results CSV path")->required();
  simulate->add_option("--json", sim_json, "summary JSON path");

  // pipeline ----------------------------------------------------------------
  auto* pipeline = app.add_subcommand(
      "pipeline", "end-to-end certificate construction on one realization");
  std::string pipe_matrix, pipe_shift, pipe_json, pipe_constants;
  double pipe_delta = 0, pipe_beta = 0.5, pipe_tau0 = 0;
  std::uint64_t pipe_seed = 0;
  pipeline->add_option("--matrix", pipe_matrix, "matrix A (CSV)")->required();
  pipeline->add_option("--shift", pipe_shift, "matrix B (CSV), default zero");
  pipeline->add_option("--delta", pipe_delta, "aspect ratio floor")->required();
  pipeline->add_option("--beta", pipe_beta, "anti-concentration level")
      ->required();
  pipeline->add_option("--seed", pipe_seed, "seed for sampled supports")
      ->required();
  pipeline->add_option("--json", pipe_json, "report JSON path");
  pipeline->add_option("--constants", pipe_constants, "constants file");
  pipeline->add_option("--tau0", pipe_tau0,
                       "override the solved sparsity fraction tau0");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*detect) {
      const auto dist = ssv::EntryDistribution::parse(det_dist);
      const auto cfg = load_constants(det_constants);
      const auto result =
          ssv::find_dyadic_intervals(dist, det_z, det_gamma, det_N, cfg);
      std::cout << ssv::detection_to_json(result).dump(2) << "\n";
    } else if (*certify) {
      const ssv::Matrix A = ssv::read_matrix_csv(cert_matrix);
      const ssv::Matrix B = cert_shift.empty()
                                ? ssv::Matrix(ssv::Matrix::Zero(A.rows(), A.cols()))
                                : ssv::read_matrix_csv(cert_shift);
      const auto H = ssv::IntervalUnion::parse(cert_hset);
      const auto net = ssv::Net::parse_csv(ssv::read_text_file(cert_net),
                                           static_cast<int>(A.cols()));
      const auto split = ssv::split_matrix(A, B, cert_lambda, H);
      const auto cert = ssv::certify_general(split, net, {}, cert_epsilon,
                                             cert_full_space, "cli net");
      std::cout << ssv::certificate_to_json(cert).dump(2) << "\n";
    } else if (*simulate) {
      ssv::ExperimentConfig config;
      config.dist = ssv::EntryDistribution::parse(sim_dist);
      config.delta = sim_delta;
      config.beta = sim_beta;
      config.sizes = parse_sizes(sim_sizes);
      config.trials = sim_trials;
      config.master_seed = sim_seed;
      config.shift = ssv::ShiftSource::parse(sim_shift);
      config.u_grid = parse_grid(sim_ugrid);
      const auto [records, summary] = ssv::run_trials(config);
      ssv::write_text_file(ssv::results_csv(records), sim_out);
      if (!sim_json.empty())
        ssv::write_text_file(ssv::summary_to_json(summary).dump(2) + "\n",
                             sim_json);
      for (const auto& s : summary.per_size)
        std::cout << "N=" << s.N << " n=" << s.n << "  p01=" << s.p01
                  << "  p05=" << s.p05 << "  p50=" << s.p50 << "\n";
      for (const auto& d : summary.decay_fit)
        std::cout << "u=" << d.u << "  v_hat=" << d.v_hat
                  << "  r2=" << d.r_squared << "\n";
    } else if (*pipeline) {
      const ssv::Matrix A = ssv::read_matrix_csv(pipe_matrix);
      const ssv::Matrix B = pipe_shift.empty()
                                ? ssv::Matrix(ssv::Matrix::Zero(A.rows(), A.cols()))
                                : ssv::read_matrix_csv(pipe_shift);
      const auto cfg = load_constants(pipe_constants);
      ssv::PipelineOptions options;
      options.tau0_override = pipe_tau0;
      const auto report = ssv::pipeline_certify(A, B, pipe_delta, pipe_beta,
                                                cfg, pipe_seed, options);
      const auto j = ssv::pipeline_to_json(report);
      if (!pipe_json.empty())
        ssv::write_text_file(j.dump(2) + "\n", pipe_json);
      std::cout << j.dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
