// Python bindings for the main operations. Exact rationals cross the
// boundary as fractions.Fraction (or "p/q" strings / ints on the way in);
// report-style results mirror the CLI's JSON schema as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ndtopt/bounds.hpp"
#include "ndtopt/cachesim.hpp"
#include "ndtopt/dof.hpp"
#include "ndtopt/lp.hpp"
#include "ndtopt/phyverify.hpp"
#include "ndtopt/regions.hpp"
#include "ndtopt/report.hpp"

namespace py = pybind11;
using namespace ndtopt;

namespace {

py::object fraction_type() {
  return py::module_::import("fractions").attr("Fraction");
}

py::object to_fraction(const Rat& value) { return fraction_type()(to_string(value)); }

Rat to_rat(const py::handle& obj) {
  if (py::isinstance<py::int_>(obj)) {
    return parse_rational(py::str(obj).cast<std::string>());
  }
  if (py::isinstance<py::str>(obj)) {
    return parse_rational(obj.cast<std::string>());
  }
  if (py::isinstance(obj, fraction_type())) {
    return parse_rational(py::str(obj).cast<std::string>());
  }
  if (py::isinstance<py::float_>(obj)) {
    throw py::type_error("pass exact rationals as Fraction, str or int, not float");
  }
  throw py::type_error("cannot interpret value as an exact rational");
}

CachePoint point_from(const py::handle& mu_r, const py::handle& mu_t) {
  return CachePoint{to_rat(mu_r), to_rat(mu_t)};
}

SplitRatios ratios_from(const py::dict& d) {
  SplitRatios s;
  for (auto item : d) {
    int r, t;
    if (py::isinstance<py::tuple>(item.first)) {
      auto key = item.first.cast<std::pair<int, int>>();
      r = key.first;
      t = key.second;
    } else {
      std::string key = py::str(item.first).cast<std::string>();
      auto comma = key.find(',');
      if (comma == std::string::npos) throw py::value_error("ratio keys are (r, t) or \"r,t\"");
      r = std::stoi(key.substr(0, comma));
      t = std::stoi(key.substr(comma + 1));
    }
    s.set(r, t, to_rat(item.second));
  }
  return s;
}

py::dict ratios_to_py(const SplitRatios& s) {
  py::dict out;
  for (const auto& [idx, a] : s.ratios) {
    out[py::make_tuple(idx.r, idx.t)] = to_fraction(a);
  }
  return out;
}

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) {
        out[py::str(it.key())] = json_to_py(it.value());
      }
      return out;
    }
    default:
      return py::none();
  }
}

SchemeKind kind_from(const std::string& name, const NetworkConfig& cfg, int r, int t) {
  if (name == "auto") return natural_scheme(cfg, r, t);
  if (name == "neutralize") return SchemeKind::Neutralize;
  if (name == "align") return SchemeKind::NeutralizeAlign;
  if (name == "split-align") return SchemeKind::SplitAlign;
  if (name == "split") return SchemeKind::SplitNeutralize;
  throw py::value_error("unknown scheme: " + name);
}

}  // namespace

PYBIND11_MODULE(_ndtopt, m) {
  m.doc() = "storage-latency tradeoff of cache-aided interference networks";

  m.def(
      "binomial",
      [](int n, int k) { return py::int_(py::str(binomial(n, k).get_str())); },
      py::arg("n"), py::arg("k"));

  m.def(
      "feasible",
      [](int nt, int nr, int l, py::object mur, py::object mut) {
        return feasible_cache_point(NetworkConfig(nt, nr, l), point_from(mur, mut));
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("mu_r"), py::arg("mu_t"));

  m.def(
      "index_set",
      [](int nt, int nr, int l) {
        py::list out;
        for (const auto& idx : index_set(NetworkConfig(nt, nr, l))) {
          out.append(py::make_tuple(idx.r, idx.t));
        }
        return out;
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"));

  m.def(
      "validate_split",
      [](int nt, int nr, int l, py::object mur, py::object mut, py::dict ratios) {
        NetworkConfig cfg(nt, nr, l);
        auto v = validate_split(cfg, point_from(mur, mut), ratios_from(ratios));
        py::list out;
        for (const auto& violation : v.violations) {
          out.append(py::make_tuple(violation.constraint, violation.detail,
                                    to_fraction(violation.lhs)));
        }
        return out;
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("mu_r"), py::arg("mu_t"),
      py::arg("ratios"));

  m.def(
      "per_user_dof",
      [](int nt, int nr, int l, int r, int t) {
        return to_fraction(per_user_dof(NetworkConfig(nt, nr, l), r, t).per_user);
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("r"), py::arg("t"));

  m.def(
      "sum_dof",
      [](int nt, int nr, int l, int r, int t) {
        return to_fraction(sum_dof(NetworkConfig(nt, nr, l), r, t));
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("r"), py::arg("t"));

  m.def(
      "ndt_upper",
      [](int nt, int nr, int l, py::object mur, py::object mut) {
        auto [tau, ratios] = ndt_upper(NetworkConfig(nt, nr, l), point_from(mur, mut));
        return py::make_tuple(to_fraction(tau), ratios_to_py(ratios));
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("mu_r"), py::arg("mu_t"));

  m.def(
      "ndt_from_ratios",
      [](int nt, int nr, int l, py::dict ratios) {
        return to_fraction(ndt_from_ratios(NetworkConfig(nt, nr, l), ratios_from(ratios)));
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("ratios"));

  m.def(
      "ndt_lower_coded",
      [](int nt, int nr, int l, py::object mur, py::object mut) {
        auto res = ndt_lower_coded(NetworkConfig(nt, nr, l), point_from(mur, mut));
        return py::make_tuple(to_fraction(res.tau), py::make_tuple(res.l, res.s1, res.s2));
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("mu_r"), py::arg("mu_t"));

  m.def(
      "ndt_lower_uncoded",
      [](int nt, int nr, int l, py::object mur, py::object mut) {
        auto res = ndt_lower_uncoded(NetworkConfig(nt, nr, l), point_from(mur, mut));
        return py::make_tuple(to_fraction(res.tau), py::make_tuple(res.l, res.s1, res.s2));
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("mu_r"), py::arg("mu_t"));

  m.def(
      "compute",
      [](int nt, int nr, int l, py::object mur, py::object mut, bool allow_intra) {
        NetworkConfig cfg(nt, nr, l);
        CachePoint pt = point_from(mur, mut);
        NdtReport report = compute_report(cfg, pt, allow_intra);
        return json_to_py(report_json(cfg, pt, report));
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("mu_r"), py::arg("mu_t"),
      py::arg("allow_intra_file_coding") = false);

  m.def(
      "classify_region",
      [](int nt, int nr, py::object mur, py::object mut) {
        CachePoint pt = point_from(mur, mut);
        if (nt == 2 && nr == 2) return classify_2x2(pt).index;
        if (nt == 3 && nr == 3) return classify_3x3(pt).index;
        throw py::value_error("closed-form regions exist only for 2x2 and 3x3");
      },
      py::arg("nt"), py::arg("nr"), py::arg("mu_r"), py::arg("mu_t"));

  m.def(
      "closed_form",
      [](int nt, int nr, py::object mur, py::object mut) {
        CachePoint pt = point_from(mur, mut);
        if (nt == 2 && nr == 2) return to_fraction(closed_form_2x2(pt));
        if (nt == 3 && nr == 3) return to_fraction(closed_form_3x3(pt));
        throw py::value_error("closed-form regions exist only for 2x2 and 3x3");
      },
      py::arg("nt"), py::arg("nr"), py::arg("mu_r"), py::arg("mu_t"));

  m.def(
      "optimal_ratios",
      [](int nt, int nr, py::object mur, py::object mut) {
        CachePoint pt = point_from(mur, mut);
        if (nt == 2 && nr == 2) return ratios_to_py(optimal_ratios_2x2(pt));
        if (nt == 3 && nr == 3) return ratios_to_py(optimal_ratios_3x3(pt));
        throw py::value_error("closed-form regions exist only for 2x2 and 3x3");
      },
      py::arg("nt"), py::arg("nr"), py::arg("mu_r"), py::arg("mu_t"));

  m.def(
      "simulate",
      [](int nt, int nr, int l, py::object mur, py::object mut, py::object ratios,
         std::uint64_t seed) {
        NetworkConfig cfg(nt, nr, l);
        CachePoint pt = point_from(mur, mut);
        std::optional<SplitRatios> s;
        if (!ratios.is_none()) s = ratios_from(ratios.cast<py::dict>());
        SimulationResult result = simulate(cfg, pt, s, seed);
        return json_to_py(simulation_json(cfg, pt, result, seed));
      },
      py::arg("nt"), py::arg("nr"), py::arg("l"), py::arg("mu_r"), py::arg("mu_t"),
      py::arg("ratios") = py::none(), py::arg("seed") = 0);

  m.def(
      "verify_scheme",
      [](int nt, int nr, int r, int t, int n, const std::string& scheme, std::uint64_t seed) {
        NetworkConfig cfg(nt, nr, nr);
        SchemeKind kind = kind_from(scheme, cfg, r, t);
        SchemeBuild build = build_scheme(cfg, r, t, n, kind, seed);
        Json j = scheme_check_json(build.check);
        j["scheme"] = scheme_kind_name(kind);
        return json_to_py(j);
      },
      py::arg("nt"), py::arg("nr"), py::arg("r"), py::arg("t"), py::arg("n") = 1,
      py::arg("scheme") = "auto", py::arg("seed") = 0);

  m.def(
      "solve_lp",
      [](py::list objective, py::list eq_rows, py::list le_rows, py::list bounds) {
        LinearProgram lp;
        for (auto c : objective) lp.objective.push_back(to_rat(c));
        auto parse_rows = [&](py::list rows, std::vector<std::pair<std::vector<Rat>, Rat>>& out) {
          for (auto row : rows) {
            auto pair = row.cast<py::tuple>();
            std::vector<Rat> coeffs;
            for (auto c : pair[0].cast<py::list>()) coeffs.push_back(to_rat(c));
            out.push_back({std::move(coeffs), to_rat(pair[1])});
          }
        };
        parse_rows(eq_rows, lp.eq_rows);
        parse_rows(le_rows, lp.le_rows);
        for (auto b : bounds) {
          auto pair = b.cast<py::tuple>();
          lp.var_bounds.push_back({to_rat(pair[0]), to_rat(pair[1])});
        }
        LpSolution sol = solve(lp);
        py::dict out;
        out["status"] = (sol.status == LpStatus::optimal)     ? "optimal"
                        : (sol.status == LpStatus::infeasible) ? "infeasible"
                                                               : "unbounded";
        if (sol.status == LpStatus::optimal) {
          out["value"] = to_fraction(sol.value);
          py::list point;
          for (const auto& v : sol.point) point.append(to_fraction(v));
          out["point"] = point;
        }
        return out;
      },
      py::arg("objective"), py::arg("eq_rows"), py::arg("le_rows"), py::arg("bounds"));
}
