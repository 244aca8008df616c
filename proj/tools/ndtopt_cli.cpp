// Command-line front end: point queries, grid sweeps, region maps, bit-level
// delivery simulation, and precoder verification. Exit codes: 0 ok,
// 2 infeasible cache point, 3 decode failure, 4 precoder assertion failure,
// 1 anything else.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ndtopt/bounds.hpp"
#include "ndtopt/cachesim.hpp"
#include "ndtopt/dof.hpp"
#include "ndtopt/phyverify.hpp"
#include "ndtopt/regions.hpp"
#include "ndtopt/report.hpp"

namespace {

using namespace ndtopt;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitDecodeFailure = 3;
constexpr int kExitPhyFailure = 4;

struct InfeasiblePoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CachePoint parse_point(const std::string& mur, const std::string& mut) {
  Rat r = parse_rational(mur);
  Rat t = parse_rational(mut);
  if (r < 0 || r > 1 || t < 0 || t > 1) {
    throw InfeasiblePoint("cache sizes must lie in [0, 1]");
  }
  return CachePoint{r, t};
}

void require_feasible(const NetworkConfig& cfg, const CachePoint& pt) {
  if (!feasible_cache_point(cfg, pt)) {
    throw InfeasiblePoint("infeasible cache point: the library no longer fits, need mu_r + " +
                          std::to_string(cfg.n_tx) + "*mu_t >= 1");
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
  }
}

std::vector<Rat> grid_points(const Rat& step) {
  std::vector<Rat> pts;
  for (Rat v(0); v <= 1; v += step) pts.push_back(v);
  return pts;
}

int run_compute(const NetworkConfig& cfg, const CachePoint& pt, bool allow_intra,
                const std::string& out) {
  require_feasible(cfg, pt);
  NdtReport report = compute_report(cfg, pt, allow_intra);
  emit(report_json(cfg, pt, report).dump(2) + "\n", out);
  return kExitOk;
}

int run_sweep(const NetworkConfig& cfg, const Rat& step, const std::string& mode,
              const std::string& out) {
  if (step <= 0 || step > Rat(1, 2)) throw std::runtime_error("step must lie in (0, 1/2]");
  const bool regions_mode = mode == "regions";
  if (regions_mode && !((cfg.n_tx == 2 && cfg.n_rx == 2) || (cfg.n_tx == 3 && cfg.n_rx == 3))) {
    throw std::runtime_error("region sweeps exist only for the 2x2 and 3x3 networks");
  }

  std::string csv;
  if (mode == "upper") {
    csv = "mu_r,mu_t,tau_upper,mu_r_exact,mu_t_exact,tau_upper_exact\n";
  } else if (mode == "lower") {
    csv = "mu_r,mu_t,tau_l1,tau_l2,mu_r_exact,mu_t_exact,tau_l1_exact,tau_l2_exact\n";
  } else if (mode == "gap") {
    csv =
        "mu_r,mu_t,tau_upper,tau_l1,tau_l2,gap,"
        "mu_r_exact,mu_t_exact,tau_upper_exact,tau_l1_exact,tau_l2_exact,gap_exact\n";
  } else if (regions_mode) {
    csv = "mu_r,mu_t,tau_upper,region,mu_r_exact,mu_t_exact,tau_upper_exact\n";
  } else {
    throw std::runtime_error("unknown sweep mode: " + mode);
  }

  for (const Rat& mu_r : grid_points(step)) {
    for (const Rat& mu_t : grid_points(step)) {
      CachePoint pt{mu_r, mu_t};
      if (!feasible_cache_point(cfg, pt)) continue;
      std::string row = to_decimal_string(mu_r) + "," + to_decimal_string(mu_t);
      std::string exact = to_string(mu_r) + "," + to_string(mu_t);
      if (mode == "upper") {
        Rat tau = ndt_upper(cfg, pt).first;
        row += "," + to_decimal_string(tau);
        exact += "," + to_string(tau);
      } else if (mode == "lower") {
        Rat l1 = ndt_lower_coded(cfg, pt).tau;
        Rat l2 = ndt_lower_uncoded(cfg, pt).tau;
        row += "," + to_decimal_string(l1) + "," + to_decimal_string(l2);
        exact += "," + to_string(l1) + "," + to_string(l2);
      } else if (mode == "gap") {
        Rat tau = ndt_upper(cfg, pt).first;
        Rat l1 = ndt_lower_coded(cfg, pt).tau;
        Rat l2 = ndt_lower_uncoded(cfg, pt).tau;
        GapResult g = gap(cfg, pt);
        row += "," + to_decimal_string(tau) + "," + to_decimal_string(l1) + "," +
               to_decimal_string(l2) + "," + to_decimal_string(g.gap);
        exact += "," + to_string(tau) + "," + to_string(l1) + "," + to_string(l2) + "," +
                 to_string(g.gap);
      } else {
        Rat tau = ndt_upper(cfg, pt).first;
        RegionId region = (cfg.n_tx == 2) ? classify_2x2(pt) : classify_3x3(pt);
        row += "," + to_decimal_string(tau) + "," + std::to_string(region.index);
        exact += "," + to_string(tau);
      }
      csv += row + "," + exact + "\n";
    }
  }
  emit(csv, out);
  return kExitOk;
}

int run_regions(const NetworkConfig& cfg, const CachePoint& pt, bool as_json,
                const std::string& out) {
  require_feasible(cfg, pt);
  RegionId region{};
  Rat tau;
  SplitRatios ratios;
  if (cfg.n_tx == 2 && cfg.n_rx == 2) {
    region = classify_2x2(pt);
    tau = closed_form_2x2(pt);
    ratios = optimal_ratios_2x2(pt);
  } else if (cfg.n_tx == 3 && cfg.n_rx == 3) {
    region = classify_3x3(pt);
    tau = closed_form_3x3(pt);
    ratios = optimal_ratios_3x3(pt);
  } else {
    throw std::runtime_error("closed-form regions exist only for the 2x2 and 3x3 networks");
  }
  if (as_json) {
    Json j;
    j["network"] = std::to_string(cfg.n_tx) + "x" + std::to_string(cfg.n_rx);
    j["point"] = {{"mu_r", rational_json(pt.mu_r)}, {"mu_t", rational_json(pt.mu_t)}};
    j["region"] = region.index;
    j["tau"] = rational_json(tau);
    j["ratios"] = ratios_json(ratios);
    emit(j.dump(2) + "\n", out);
  } else {
    std::string text = "region " + std::to_string(region.index) + "\ntau " + to_string(tau) +
                       " (" + to_decimal_string(tau) + ")\n";
    for (const auto& [idx, a] : ratios.ratios) {
      text += "a[" + std::to_string(idx.r) + "," + std::to_string(idx.t) + "] = " + to_string(a) +
              "\n";
    }
    emit(text, out);
  }
  return kExitOk;
}

int run_simulate(const NetworkConfig& cfg, const CachePoint& pt, std::uint64_t seed,
                 const std::string& ratios_file, const std::string& out) {
  require_feasible(cfg, pt);
  std::optional<SplitRatios> ratios;
  if (!ratios_file.empty()) {
    std::ifstream f(ratios_file);
    if (!f) throw std::runtime_error("cannot open ratios file: " + ratios_file);
    Json j = Json::parse(f);
    ratios = ratios_from_json(j);
  }
  SimulationResult result = simulate(cfg, pt, ratios, seed);
  emit(simulation_json(cfg, pt, result, seed).dump(2) + "\n", out);
  return result.all_decoded ? kExitOk : kExitDecodeFailure;
}

int run_verify_phy(const NetworkConfig& cfg, int r, int t, const std::string& scheme_name,
                   int n_levels, std::uint64_t seed_base, int n_seeds, const std::string& out) {
  SchemeKind kind;
  if (scheme_name == "auto") {
    kind = natural_scheme(cfg, r, t);
  } else if (scheme_name == "neutralize") {
    kind = SchemeKind::Neutralize;
  } else if (scheme_name == "align") {
    kind = SchemeKind::NeutralizeAlign;
  } else if (scheme_name == "split-align") {
    kind = SchemeKind::SplitAlign;
  } else if (scheme_name == "split") {
    kind = SchemeKind::SplitNeutralize;
  } else {
    throw std::runtime_error("unknown scheme: " + scheme_name);
  }

  SchemeCheck combined;
  bool first = true;
  for (int s = 0; s < n_seeds; ++s) {
    SchemeBuild build = build_scheme(cfg, r, t, n_levels, kind, seed_base + s);
    const SchemeCheck& c = build.check;
    if (first) {
      combined = c;
      first = false;
    } else {
      combined.max_neutralization_residual =
          std::max(combined.max_neutralization_residual, c.max_neutralization_residual);
      combined.min_rank_ratio = std::min(combined.min_rank_ratio, c.min_rank_ratio);
      combined.max_decode_rel_error = std::max(combined.max_decode_rel_error, c.max_decode_rel_error);
      combined.neutralization_ok &= c.neutralization_ok;
      combined.rank_ok &= c.rank_ok;
      combined.decode_ok &= c.decode_ok;
      combined.alignment_ok &= c.alignment_ok;
      combined.dof_matches &= c.dof_matches;
    }
  }

  Json j = scheme_check_json(combined);
  j["scheme"] = scheme_kind_name(kind);
  j["r"] = r;
  j["t"] = t;
  j["n"] = n_levels;
  j["seeds"] = n_seeds;
  j["seed_base"] = seed_base;
  emit(j.dump(2) + "\n", out);
  return combined.all_ok() ? kExitOk : kExitPhyFailure;
}

int run_dof_table(const NetworkConfig& cfg, bool as_json, const std::string& out) {
  auto table = dof_table(cfg);
  if (as_json) {
    Json rows = Json::array();
    for (const auto& e : table) {
      Json row;
      row["r"] = e.r;
      row["t"] = e.t;
      row["per_user"] = rational_json(e.per_user);
      row["sum"] = rational_json(frac(cfg.n_rx, e.r + 1) * e.per_user);
      row["case"] = (e.dof_case == DofCase::Full)          ? "full"
                    : (e.dof_case == DofCase::OneResidual) ? "one-residual"
                                                           : "split-or-align";
      if (e.best_t_prime) row["best_t_prime"] = *e.best_t_prime;
      rows.push_back(std::move(row));
    }
    emit(rows.dump(2) + "\n", out);
  } else {
    std::string text = "r t per_user sum\n";
    for (const auto& e : table) {
      text += std::to_string(e.r) + " " + std::to_string(e.t) + " " + to_string(e.per_user) +
              " " + to_string(frac(cfg.n_rx, e.r + 1) * e.per_user) + "\n";
    }
    emit(text, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"storage-latency tradeoff toolkit for cache-aided interference networks"};
  app.require_subcommand(1);

  int nt = 3, nr = 3, l = -1, r = 0, t = 1, n_levels = 1, n_seeds = 1;
  std::string mur = "0", mut = "1", mode = "gap", out, ratios_file, scheme = "auto", step = "1/24";
  std::uint64_t seed = 0;
  bool as_json = false, allow_intra = false;

  auto add_network = [&](CLI::App* cmd, bool with_files) {
    cmd->add_option("--nt", nt, "number of transmitters")->required();
    cmd->add_option("--nr", nr, "number of receivers")->required();
    if (with_files) cmd->add_option("--l", l, "number of library files (default n_rx)");
  };
  auto add_point = [&](CLI::App* cmd) {
    cmd->add_option("--mur", mur, "normalized receiver cache size (p/q or decimal)")->required();
    cmd->add_option("--mut", mut, "normalized transmitter cache size (p/q or decimal)")->required();
  };

  CLI::App* compute = app.add_subcommand("compute", "bounds, optimality and gap at one point");
  add_network(compute, true);
  add_point(compute);
  compute->add_flag("--allow-intra-file-coding", allow_intra,
                    "assume caches may code within files (disables one optimality case)");
  compute->add_option("--out", out, "write JSON here instead of stdout");

  CLI::App* sweep = app.add_subcommand("sweep", "CSV grid sweep over feasible cache points");
  add_network(sweep, true);
  sweep->add_option("--step", step, "grid step (rational)");
  sweep->add_option("--mode", mode, "upper | lower | gap | regions");
  sweep->add_option("--out", out, "write CSV here instead of stdout");

  CLI::App* regions = app.add_subcommand("regions", "closed-form region and ratios (2x2/3x3)");
  add_network(regions, false);
  add_point(regions);
  regions->add_flag("--json", as_json, "JSON output");
  regions->add_option("--out", out, "write here instead of stdout");

  CLI::App* simulate = app.add_subcommand("simulate", "bit-level placement and coded delivery");
  add_network(simulate, true);
  add_point(simulate);
  simulate->add_option("--seed", seed, "library RNG seed");
  simulate->add_option("--ratios-file", ratios_file, "JSON map \"r,t\" -> \"p/q\"");
  simulate->add_option("--out", out, "write JSON here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify-phy", "numerically verify a precoder scheme");
  add_network(verify, false);
  verify->add_option("--r", r, "receivers caching each subfile")->required();
  verify->add_option("--t", t, "transmitters caching each subfile")->required();
  verify->add_option("--scheme", scheme, "auto | neutralize | align | split-align | split");
  verify->add_option("--n", n_levels, "alignment level N");
  verify->add_option("--seed", seed, "base channel seed");
  verify->add_option("--seeds", n_seeds, "number of seeds to aggregate");
  verify->add_option("--out", out, "write JSON here instead of stdout");

  CLI::App* dof = app.add_subcommand("dof-table", "per-user and sum DoF of every (r, t) group");
  add_network(dof, false);
  dof->add_flag("--json", as_json, "JSON output");
  dof->add_option("--out", out, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitOther : kExitOk;
  }

  try {
    NetworkConfig cfg(nt, nr, l > 0 ? l : nr);
    if (compute->parsed()) return run_compute(cfg, parse_point(mur, mut), allow_intra, out);
    if (sweep->parsed()) return run_sweep(cfg, parse_rational(step), mode, out);
    if (regions->parsed()) return run_regions(cfg, parse_point(mur, mut), as_json, out);
    if (simulate->parsed()) return run_simulate(cfg, parse_point(mur, mut), seed, ratios_file, out);
    if (verify->parsed()) return run_verify_phy(cfg, r, t, scheme, n_levels, seed, n_seeds, out);
    if (dof->parsed()) return run_dof_table(cfg, as_json, out);
  } catch (const InfeasiblePoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
