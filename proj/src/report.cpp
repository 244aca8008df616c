#include "ndtopt/report.hpp"

#include <stdexcept>

namespace ndtopt {

Json rational_json(const Rat& value) {
  Json j;
  j["exact"] = to_string(value);
  j["decimal"] = to_double(value);
  return j;
}

Json ratios_json(const SplitRatios& s) {
  Json j = Json::object();
  for (const auto& [idx, a] : s.ratios) {
    j[std::to_string(idx.r) + "," + std::to_string(idx.t)] = to_string(a);
  }
  return j;
}

SplitRatios ratios_from_json(const Json& j) {
  SplitRatios s;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = it.key();
    auto comma = key.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("ratios file keys must look like \"r,t\"");
    }
    int r = std::stoi(key.substr(0, comma));
    int t = std::stoi(key.substr(comma + 1));
    s.set(r, t, parse_rational(it.value().get<std::string>()));
  }
  return s;
}

namespace {

const char* gap_class_name(GapBoundClass c) {
  switch (c) {
    case GapBoundClass::TxAtLeastRx:
      return "tx_at_least_rx";
    case GapBoundClass::LargeTxCache:
      return "large_tx_cache";
    default:
      return "small_tx_cache";
  }
}

}  // namespace

const char* scheme_kind_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Neutralize:
      return "neutralize";
    case SchemeKind::NeutralizeAlign:
      return "align";
    case SchemeKind::SplitAlign:
      return "split-align";
    default:
      return "split";
  }
}

Json report_json(const NetworkConfig& cfg, const CachePoint& pt, const NdtReport& report) {
  Json j;
  j["config"] = {{"n_tx", cfg.n_tx}, {"n_rx", cfg.n_rx}, {"n_files", cfg.n_files}};
  j["point"] = {{"mu_r", rational_json(pt.mu_r)}, {"mu_t", rational_json(pt.mu_t)}};
  j["tau_upper"] = rational_json(report.tau_upper);
  j["ratios"] = ratios_json(report.ratios);
  j["tau_lower_coded"] = rational_json(report.tau_lower_coded);
  j["lower_coded_argmax"] = {{"l", report.lower_coded.l},
                             {"s1", report.lower_coded.s1},
                             {"s2", report.lower_coded.s2}};
  j["tau_lower_uncoded"] = rational_json(report.tau_lower_uncoded);
  j["lower_uncoded_argmax"] = {{"l", report.lower_uncoded.l},
                               {"s1", report.lower_uncoded.s1},
                               {"s2", report.lower_uncoded.s2}};
  if (report.optimality) {
    j["optimality"] = {{"case", report.optimality->case_id},
                       {"tau_star", rational_json(report.optimality->tau_star)}};
  } else {
    j["optimality"] = nullptr;
  }
  j["gap"] = rational_json(report.gap.gap);
  j["gap"]["both_zero"] = report.gap.both_zero;
  j["gap_bound"] = {{"class", gap_class_name(report.gap.bound_class)},
                    {"value", rational_json(report.gap.bound_value)}};
  return j;
}

Json simulation_json(const NetworkConfig& cfg, const CachePoint& pt,
                     const SimulationResult& result, std::uint64_t seed) {
  Json j;
  j["config"] = {{"n_tx", cfg.n_tx}, {"n_rx", cfg.n_rx}, {"n_files", cfg.n_files}};
  j["point"] = {{"mu_r", rational_json(pt.mu_r)}, {"mu_t", rational_json(pt.mu_t)}};
  j["seed"] = seed;
  j["file_bits"] = result.f_bits;
  j["ratios"] = ratios_json(result.ratios_used);
  Json groups = Json::array();
  for (const auto& [idx, acc] : result.account.per_group) {
    Json g;
    g["r"] = idx.r;
    g["t"] = idx.t;
    g["messages_per_receiver"] = acc.messages_per_receiver;
    g["messages_total"] = acc.messages_total;
    g["group_ndt"] = rational_json(acc.group_ndt);
    groups.push_back(std::move(g));
  }
  j["groups"] = std::move(groups);
  j["total_ndt"] = rational_json(result.account.total_ndt);
  j["all_decoded"] = result.all_decoded;
  Json per_rx = Json::array();
  for (size_t q = 0; q < result.decodes.size(); ++q) {
    per_rx.push_back({{"receiver", q},
                      {"ok", result.decodes[q].ok},
                      {"first_bad_subfile", result.decodes[q].first_bad_subfile}});
  }
  j["receivers"] = std::move(per_rx);
  return j;
}

Json scheme_check_json(const SchemeCheck& check) {
  Json j;
  j["slots"] = check.slots;
  j["desired_per_receiver"] = check.desired_per_rx;
  j["max_neutralization_residual"] = check.max_neutralization_residual;
  j["min_rank_ratio"] = check.min_rank_ratio;
  j["max_decode_rel_error"] = check.max_decode_rel_error;
  j["neutralization_ok"] = check.neutralization_ok;
  j["rank_ok"] = check.rank_ok;
  j["decode_ok"] = check.decode_ok;
  j["alignment_ok"] = check.alignment_ok;
  j["dof_matches"] = check.dof_matches;
  j["finite_dof"] = rational_json(check.finite_dof);
  j["limit_dof"] = rational_json(check.limit_dof);
  return j;
}

}  // namespace ndtopt
