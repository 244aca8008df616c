#include "ndtopt/cachesim.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "ndtopt/bounds.hpp"
#include "ndtopt/dof.hpp"

namespace ndtopt {

namespace {

constexpr long kMaxFileBits = 1L << 20;

bool contains(const std::vector<int>& sorted_set, int x) {
  return std::binary_search(sorted_set.begin(), sorted_set.end(), x);
}

std::vector<int> without(const std::vector<int>& sorted_set, int x) {
  std::vector<int> out;
  for (int v : sorted_set) {
    if (v != x) out.push_back(v);
  }
  return out;
}

}  // namespace

BitLibrary make_library(int n_files, long f_bits, std::uint64_t seed) {
  if (f_bits < 1) throw std::invalid_argument("file size must be at least one bit");
  BitLibrary lib;
  lib.n_files = n_files;
  lib.f_bits = f_bits;
  std::mt19937_64 rng(seed);
  lib.payloads.resize(n_files);
  for (auto& file : lib.payloads) {
    file.resize(f_bits);
    for (auto& bit : file) bit = static_cast<std::uint8_t>(rng() & 1);
  }
  return lib;
}

long required_file_bits(const SplitRatios& s) {
  mpz_class lcm(1);
  for (const auto& [idx, a] : s.ratios) {
    if (a == 0) continue;
    mpz_class den = a.get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  if (!lcm.fits_slong_p() || lcm.get_si() > kMaxFileBits) {
    throw std::invalid_argument("splitting ratios need more than 2^20 bits per file");
  }
  return lcm.get_si();
}

int Placement::find(const std::vector<int>& rx_set, const std::vector<int>& tx_set) const {
  auto it = index.find({rx_set, tx_set});
  if (it == index.end()) throw std::logic_error("subfile missing from placement");
  return it->second;
}

Placement place(const NetworkConfig& cfg, const CachePoint& pt, const SplitRatios& s,
                const BitLibrary& lib) {
  if (!validate_split(cfg, pt, s).ok()) {
    throw std::invalid_argument("place: splitting ratios fail validation");
  }
  Placement pl;
  pl.f_bits = lib.f_bits;
  long offset = 0;
  for (const auto& [idx, a] : s.ratios) {
    if (a == 0) continue;
    Rat len_exact = a * lib.f_bits;
    if (len_exact.get_den() != 1) {
      throw std::invalid_argument("file size not divisible by a splitting ratio denominator");
    }
    const long len = len_exact.get_num().get_si();
    for (const auto& rx_set : subsets_of_size(cfg.n_rx, idx.r)) {
      for (const auto& tx_set : subsets_of_size(cfg.n_tx, idx.t)) {
        SubfileRange range{idx.r, idx.t, rx_set, tx_set, offset, len};
        pl.index[{rx_set, tx_set}] = static_cast<int>(pl.layout.size());
        pl.layout.push_back(std::move(range));
        offset += len;
      }
    }
  }
  if (offset != lib.f_bits) {
    throw std::logic_error("subfile ranges do not partition the file");
  }

  pl.tx_subfiles.resize(cfg.n_tx);
  pl.rx_subfiles.resize(cfg.n_rx);
  for (size_t i = 0; i < pl.layout.size(); ++i) {
    for (int p : pl.layout[i].tx_set) pl.tx_subfiles[p].push_back(static_cast<int>(i));
    for (int q : pl.layout[i].rx_set) pl.rx_subfiles[q].push_back(static_cast<int>(i));
  }
  // Measured loads: a node caches its layout ranges of every file, so the
  // total is per-file bits times n_files against mu * n_files * F.
  for (int p = 0; p < cfg.n_tx; ++p) {
    long bits = 0;
    for (int i : pl.tx_subfiles[p]) bits += pl.layout[i].length;
    pl.tx_cache_bits = bits * cfg.n_files;
    if (Rat(pl.tx_cache_bits) > pt.mu_t * cfg.n_files * lib.f_bits) {
      throw std::logic_error("transmitter cache over budget");
    }
  }
  for (int q = 0; q < cfg.n_rx; ++q) {
    long bits = 0;
    for (int i : pl.rx_subfiles[q]) bits += pl.layout[i].length;
    pl.rx_cache_bits = bits * cfg.n_files;
    if (Rat(pl.rx_cache_bits) > pt.mu_r * cfg.n_files * lib.f_bits) {
      throw std::logic_error("receiver cache over budget");
    }
  }
  return pl;
}

std::vector<int> worst_case_demand(const NetworkConfig& cfg) {
  std::vector<int> demand(cfg.n_rx);
  for (int q = 0; q < cfg.n_rx; ++q) demand[q] = q;
  return demand;
}

std::vector<CodedMessage> build_group_messages(const NetworkConfig& cfg, const Placement& pl,
                                               const BitLibrary& lib,
                                               const std::vector<int>& demand, int r, int t) {
  std::vector<CodedMessage> out;
  for (const auto& rx_group : subsets_of_size(cfg.n_rx, r + 1)) {
    for (const auto& tx_group : subsets_of_size(cfg.n_tx, t)) {
      CodedMessage msg{r, t, rx_group, tx_group, {}};
      bool first = true;
      for (int q : rx_group) {
        const SubfileRange& sub = pl.layout[pl.find(without(rx_group, q), tx_group)];
        if (sub.tx_set != tx_group) throw std::logic_error("constituent not held by tx group");
        const auto& payload = lib.payloads[demand[q]];
        if (first) {
          msg.bits.assign(payload.begin() + sub.begin, payload.begin() + sub.begin + sub.length);
          first = false;
        } else {
          if (static_cast<long>(msg.bits.size()) != sub.length) {
            throw std::logic_error("constituent subfiles differ in length");
          }
          for (long b = 0; b < sub.length; ++b) msg.bits[b] ^= payload[sub.begin + b];
        }
      }
      out.push_back(std::move(msg));
    }
  }
  return out;
}

std::vector<ReceiverDecode> decode_all(const NetworkConfig& cfg, const Placement& pl,
                                       const BitLibrary& lib,
                                       const std::vector<CodedMessage>& messages,
                                       const std::vector<int>& demand) {
  std::vector<ReceiverDecode> out(cfg.n_rx);
  for (int q = 0; q < cfg.n_rx; ++q) {
    ReceiverDecode& dec = out[q];
    const auto& wanted = lib.payloads[demand[q]];
    dec.file_bits.assign(pl.f_bits, 0);

    // Cached pieces of the demanded file come straight from the cache.
    for (int i : pl.rx_subfiles[q]) {
      const SubfileRange& sub = pl.layout[i];
      std::copy(wanted.begin() + sub.begin, wanted.begin() + sub.begin + sub.length,
                dec.file_bits.begin() + sub.begin);
    }

    // Every other piece arrives inside exactly one coded message; peel off
    // the cached constituents of the other receivers in the group.
    for (const CodedMessage& msg : messages) {
      if (!contains(msg.rx_group, q)) continue;
      const SubfileRange& sub = pl.layout[pl.find(without(msg.rx_group, q), msg.tx_group)];
      std::vector<std::uint8_t> recovered = msg.bits;
      for (int other : msg.rx_group) {
        if (other == q) continue;
        const SubfileRange& cached = pl.layout[pl.find(without(msg.rx_group, other), msg.tx_group)];
        const auto& payload = lib.payloads[demand[other]];
        for (long b = 0; b < cached.length; ++b) recovered[b] ^= payload[cached.begin + b];
      }
      std::copy(recovered.begin(), recovered.end(), dec.file_bits.begin() + sub.begin);
    }

    dec.ok = true;
    for (size_t i = 0; i < pl.layout.size() && dec.ok; ++i) {
      const SubfileRange& sub = pl.layout[i];
      for (long b = sub.begin; b < sub.begin + sub.length; ++b) {
        if (dec.file_bits[b] != wanted[b]) {
          dec.ok = false;
          dec.first_bad_subfile = static_cast<int>(i);
          break;
        }
      }
    }
  }
  return out;
}

SimulationResult simulate(const NetworkConfig& cfg, const CachePoint& pt,
                          const std::optional<SplitRatios>& ratios, std::uint64_t seed) {
  if (!feasible_cache_point(cfg, pt)) {
    throw std::invalid_argument("infeasible cache point: needs mu_r + n_tx*mu_t >= 1");
  }
  SimulationResult result;
  result.ratios_used = ratios ? *ratios : ndt_upper(cfg, pt).second;

  result.f_bits = required_file_bits(result.ratios_used);
  BitLibrary lib = make_library(cfg.n_files, result.f_bits, seed);
  Placement pl = place(cfg, pt, result.ratios_used, lib);
  std::vector<int> demand = worst_case_demand(cfg);

  std::vector<CodedMessage> all_messages;
  result.account.total_ndt = 0;
  for (const auto& [idx, a] : result.ratios_used.ratios) {
    if (a == 0 || idx.t < 1 || idx.r > cfg.n_rx - 1) continue;
    auto group = build_group_messages(cfg, pl, lib, demand, idx.r, idx.t);
    GroupAccount acc;
    acc.messages_total = static_cast<long>(group.size());
    acc.messages_per_receiver =
        mpz_class(binomial(cfg.n_rx - 1, idx.r) * binomial(cfg.n_tx, idx.t)).get_si();
    acc.group_ndt = Rat(acc.messages_per_receiver) * a / per_user_dof(cfg, idx.r, idx.t).per_user;
    result.account.total_ndt += acc.group_ndt;
    result.account.per_group[idx] = std::move(acc);
    all_messages.insert(all_messages.end(), group.begin(), group.end());
  }

  result.decodes = decode_all(cfg, pl, lib, all_messages, demand);
  result.all_decoded = true;
  for (const auto& dec : result.decodes) result.all_decoded &= dec.ok;
  return result;
}

}  // namespace ndtopt
