#include <doctest.h>

#include "ndtopt/dof.hpp"
#include "ndtopt/phyverify.hpp"

using namespace ndtopt;

TEST_CASE("channel sampling is deterministic, zero-free and centered") {
  NetworkConfig cfg(3, 3, 3);
  auto a = sample_channel(cfg, 3, 1);
  auto b = sample_channel(cfg, 3, 1);
  for (int u = 0; u < 3; ++u) CHECK(a.coeffs[u] == b.coeffs[u]);
  CHECK_THROWS_AS(sample_channel(cfg, 0, 1), std::invalid_argument);

  auto big = sample_channel(NetworkConfig(4, 4, 4), 625, 99);  // 10^4 entries
  Complex mean(0, 0);
  double power = 0;
  for (const auto& h : big.coeffs) {
    for (int q = 0; q < 4; ++q) {
      for (int p = 0; p < 4; ++p) {
        CHECK(h(q, p) != Complex(0, 0));
        mean += h(q, p);
        power += std::norm(h(q, p));
      }
    }
  }
  mean /= 10000.0;
  power /= 10000.0;
  CHECK(std::abs(mean) < 0.05);  // 5 sigma/sqrt(n) for unit-power entries
  CHECK(power == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("cofactor weights cancel exactly at the neutralized receivers") {
  NetworkConfig cfg(3, 3, 3);
  auto ch = sample_channel(cfg, 1, 5);
  const auto& h = ch.coeffs[0];
  std::vector<int> neutralize{1, 2}, txs{0, 1, 2};
  auto c = cofactor_precoder(h, neutralize, txs);
  double scale = c.cwiseAbs().maxCoeff();
  for (int q : neutralize) {
    Complex sum(0, 0);
    for (int p = 0; p < 3; ++p) sum += h(q, txs[p]) * c(p);
    CHECK(std::abs(sum) < 1e-9 * scale);
  }

  // independent bordered-determinant evaluation at the untouched receiver
  Eigen::MatrixXcd bordered(3, 3);
  bordered.row(0) = h.row(1);
  bordered.row(1) = h.row(2);
  bordered.row(2) = h.row(0);
  Complex expect = bordered.determinant();
  Complex got = bordered_received(h, neutralize, txs, 0);
  CHECK(std::abs(got - expect) < 1e-9 * std::abs(expect));
}

TEST_CASE("a lone transmitter gets the unit weight") {
  NetworkConfig cfg(3, 3, 3);
  auto ch = sample_channel(cfg, 1, 6);
  auto c = cofactor_precoder(ch.coeffs[0], {}, {1});
  REQUIRE(c.size() == 1);
  CHECK(c(0) == Complex(1, 0));
}

TEST_CASE("scheme selection follows the group geometry") {
  NetworkConfig cfg(3, 3, 3);
  CHECK(natural_scheme(cfg, 1, 2) == SchemeKind::Neutralize);
  CHECK(natural_scheme(cfg, 0, 2) == SchemeKind::NeutralizeAlign);
  CHECK(natural_scheme(cfg, 0, 1) == SchemeKind::SplitAlign);
  NetworkConfig wide(2, 4, 4);
  CHECK(natural_scheme(wide, 0, 2) == SchemeKind::SplitNeutralize);
}

TEST_CASE("neutralize-only scheme attains per-user DoF 1") {
  NetworkConfig cfg(3, 3, 3);
  auto build = build_scheme(cfg, 1, 2, 1, SchemeKind::Neutralize, 17);
  CHECK(build.check.slots == 2);  // one slot per desired message
  CHECK(build.check.desired_per_rx == 2);
  CHECK(build.check.finite_dof == Rat(1));
  CHECK(build.check.all_ok());
  CHECK(build.scheme.symbols.size() == 3);
  for (const auto& sym : build.scheme.symbols) {
    CHECK(sym.tx_group.size() == 2);  // one of the three cooperating transmitters idles
    CHECK(sym.neutralize_set.size() == 1);
  }
}

TEST_CASE("two-antenna broadcast reduces to zero-forcing") {
  NetworkConfig cfg(2, 2, 2);
  auto build = build_scheme(cfg, 0, 2, 1, SchemeKind::Neutralize, 4);
  CHECK(build.check.slots == 1);
  CHECK(build.check.all_ok());
}

TEST_CASE("wide neutralize-only group cancels at its single undesired receiver") {
  NetworkConfig cfg(3, 2, 3);
  auto build = build_scheme(cfg, 0, 2, 1, SchemeKind::Neutralize, 12);
  CHECK(build.check.neutralization_ok);
  CHECK(build.check.all_ok());
  for (const auto& sym : build.scheme.symbols) CHECK(sym.neutralize_set.size() == 1);
}

TEST_CASE("neutralize-plus-align bookkeeping at alignment level 1") {
  NetworkConfig cfg(3, 3, 3);
  auto build = build_scheme(cfg, 0, 2, 1, SchemeKind::NeutralizeAlign, 3);
  CHECK(build.check.slots == 70);  // 6 desired + 2^6 aligned interference
  CHECK(build.check.desired_per_rx == 6);
  CHECK(build.check.finite_dof == frac(6, 70));
  CHECK(build.check.limit_dof == frac(6, 7));
  CHECK(build.check.alignment_ok);
  CHECK(build.check.neutralization_ok);
  CHECK(build.check.decode_ok);
  CHECK(build.check.dof_matches);
  CHECK(build.check.min_rank_ratio > 0);

  auto small = build_scheme(cfg, 1, 1, 1, SchemeKind::NeutralizeAlign, 3);
  CHECK(small.check.slots == 14);  // 6 desired + 2^3 aligned interference
  CHECK(small.check.desired_per_rx == 6);
  CHECK(small.check.finite_dof == frac(3, 7));
  CHECK(small.check.limit_dof == frac(6, 7));
  CHECK(small.check.all_ok());  // K=3 is small enough for the rank bound
}

TEST_CASE("split-plus-align bookkeeping at alignment level 1") {
  NetworkConfig cfg(3, 3, 3);
  auto build = build_scheme(cfg, 0, 1, 1, SchemeKind::SplitAlign, 3);
  CHECK(build.check.slots == 131);  // 3 desired + 2 * 2^6 aligned interference
  CHECK(build.check.desired_per_rx == 3);
  CHECK(build.check.finite_dof == frac(3, 131));
  CHECK(build.check.limit_dof == frac(3, 5));
  CHECK(build.check.alignment_ok);
  CHECK(build.check.neutralization_ok);
  CHECK(build.check.decode_ok);
  CHECK(build.check.dof_matches);
  CHECK(build.check.min_rank_ratio > 0);
}

TEST_CASE("split-neutralize scheme on a wide network") {
  NetworkConfig cfg(2, 4, 4);
  auto build = build_scheme(cfg, 0, 2, 1, SchemeKind::SplitNeutralize, 3);
  CHECK(build.check.slots == 9);
  CHECK(build.check.desired_per_rx == 3);
  CHECK(build.check.finite_dof == frac(1, 3));
  CHECK(build.check.limit_dof == frac(1, 3));
  CHECK(build.check.all_ok());
}

TEST_CASE("parameter guards") {
  NetworkConfig cfg(3, 3, 3);
  CHECK_THROWS_AS(build_scheme(cfg, 0, 2, 1, SchemeKind::Neutralize, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(cfg, 1, 2, 1, SchemeKind::NeutralizeAlign, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(cfg, 0, 3, 1, SchemeKind::SplitAlign, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(cfg, 0, 2, 0, SchemeKind::NeutralizeAlign, 1),
                  std::invalid_argument);
  // N^K blows past the extension guard already at modest levels
  CHECK_THROWS_AS(build_scheme(cfg, 0, 2, 3, SchemeKind::NeutralizeAlign, 1),
                  std::invalid_argument);
}

TEST_CASE("finite-level DoF bookkeeping matches the construction limits") {
  NetworkConfig cfg(3, 3, 3);
  CHECK(finite_n_dof(cfg, 1, 2, 5, SchemeKind::Neutralize) == Rat(1));
  CHECK(finite_n_dof(cfg, 0, 2, 1, SchemeKind::NeutralizeAlign) == frac(6, 70));
  CHECK(finite_n_dof(cfg, 0, 2, 2, SchemeKind::NeutralizeAlign) == frac(384, 384 + 729));
  CHECK(limit_dof(cfg, 0, 2, SchemeKind::NeutralizeAlign) == frac(6, 7));
}

TEST_CASE("limits of the constructions reassemble the per-user DoF table") {
  for (int nt = 2; nt <= 4; ++nt) {
    for (int nr = 2; nr <= 4; ++nr) {
      NetworkConfig cfg(nt, nr, nr);
      for (int r = 0; r <= nr - 1; ++r) {
        for (int t = 1; t <= nt; ++t) {
          Rat expect = per_user_dof(cfg, r, t).per_user;
          if (r + t >= nr) {
            CHECK(limit_dof(cfg, r, t, SchemeKind::Neutralize) == expect);
          } else if (r + t == nr - 1) {
            CHECK(limit_dof(cfg, r, t, SchemeKind::NeutralizeAlign) == expect);
          } else {
            Rat best = frac(r + t, nr);  // message-splitting route
            for (int tp = 1; tp <= t; ++tp) {
              SchemeKind kind =
                  (tp == nt) ? SchemeKind::SplitNeutralize : SchemeKind::SplitAlign;
              best = std::max(best, limit_dof(cfg, r, tp, kind));
            }
            CHECK(best == expect);
          }
        }
      }
    }
  }
}

TEST_CASE("decode round-trip holds across seeds for every construction") {
  NetworkConfig c33(3, 3, 3), c24(2, 4, 4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CHECK(build_scheme(c33, 1, 2, 1, SchemeKind::Neutralize, seed).check.decode_ok);
    CHECK(build_scheme(c33, 1, 1, 1, SchemeKind::NeutralizeAlign, seed).check.decode_ok);
    CHECK(build_scheme(c33, 0, 1, 1, SchemeKind::SplitAlign, seed).check.decode_ok);
    CHECK(build_scheme(c24, 0, 2, 1, SchemeKind::SplitNeutralize, seed).check.decode_ok);
  }
}
