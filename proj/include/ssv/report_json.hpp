#pragma once

// JSON views of the reporting types, shared by the CLI and the tests.

#include <json.hpp>

#include "ssv/certify.hpp"
#include "ssv/detect.hpp"
#include "ssv/harness.hpp"

namespace ssv {

inline nlohmann::json detection_to_json(const DetectionResult& r) {
  return nlohmann::json{
      {"ell1", r.ell1},     {"ell2", r.ell2},  {"ell", r.ell},
      {"lambda", r.lambda}, {"h1", r.H1.to_string()},
      {"h2", r.H2.to_string()}, {"mass1", r.mass1}, {"mass2", r.mass2}};
}

inline nlohmann::json certificate_to_json(const Certificate& c) {
  nlohmann::json per_point = nlohmann::json::array();
  for (const auto& [id, distance] : c.per_point)
    per_point.push_back({{"id", id}, {"distance", distance}});
  return nlohmann::json{{"h", c.h},
                        {"epsilon", c.epsilon},
                        {"regular_norm", c.regular_norm},
                        {"lower_bound", c.lower_bound},
                        {"vacuous", c.vacuous},
                        {"per_point", per_point},
                        {"target_set", c.target_set}};
}

inline std::string format_threshold(double u) {
  std::ostringstream os;
  os.precision(17);
  os << u;
  return os.str();
}

inline nlohmann::json summary_to_json(const ExperimentSummary& s) {
  nlohmann::json per_size = nlohmann::json::array();
  for (const auto& ss : s.per_size) {
    nlohmann::json tails = nlohmann::json::object();
    for (const auto& te : ss.tail_estimates)
      tails[format_threshold(te.u)] = {{"count", te.count},
                                       {"smoothed", te.smoothed}};
    per_size.push_back({{"N", ss.N},
                        {"n", ss.n},
                        {"tail_estimates", tails},
                        {"percentiles",
                         {{"p01", ss.p01}, {"p05", ss.p05}, {"p50", ss.p50}}}});
  }
  nlohmann::json decay = nlohmann::json::array();
  for (const auto& d : s.decay_fit)
    decay.push_back(
        {{"u", d.u}, {"v_hat", d.v_hat}, {"r_squared", d.r_squared}});
  return nlohmann::json{{"per_size", per_size}, {"decay_fit", decay}};
}

inline nlohmann::json regime_to_json(const RegimeReport& r) {
  nlohmann::json j{{"name", r.name},
                   {"status", r.status},
                   {"detail", r.detail},
                   {"epsilon_nominal", r.epsilon_nominal},
                   {"epsilon_used", r.epsilon_used},
                   {"net_size", r.net_size},
                   {"target_known_empty", r.target_known_empty},
                   {"supports_complete", r.supports_complete}};
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  return j;
}

inline nlohmann::json pipeline_to_json(const PipelineReport& p) {
  nlohmann::json j{
      {"N", p.N},
      {"n", p.n},
      {"s_min", p.s_min},
      {"s_max", p.s_max},
      {"case",
       {{"z", p.z},
        {"case_id", to_string(p.case_id)},
        {"gamma", p.gamma},
        {"left_mass", p.left_mass},
        {"right_mass", p.right_mass},
        {"q_measured", p.q_measured},
        {"anticoncentration_ok", p.anticoncentration_ok}}},
      {"peaky",
       {{"min_loo_distance", p.min_loo_distance},
        {"whole_sphere_bound", p.whole_sphere_bound},
        {"theta_peaky", p.theta_peaky},
        {"peaky_bound", p.peaky_bound}}},
      {"compressible", regime_to_json(p.compressible)},
      {"incompressible", regime_to_json(p.incompressible)},
      {"tau0", p.tau0},
      {"m_incompressible", p.m_incompressible},
      {"t_incompressible", p.t_incompressible},
      {"h_distance", p.h_distance},
      {"norm_budget", p.norm_budget},
      {"norm_within_budget", p.norm_within_budget},
      {"spread_witness_fits", p.spread_witness_fits}};
  if (p.detection) j["detection"] = detection_to_json(*p.detection);
  if (p.combined_bound) j["combined_bound"] = *p.combined_bound;
  return j;
}

}  // namespace ssv
