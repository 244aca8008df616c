#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ndtopt/core.hpp"

namespace ndtopt {

// Seeded random file library; one byte per bit for simplicity.
struct BitLibrary {
  int n_files = 0;
  long f_bits = 0;
  std::vector<std::vector<std::uint8_t>> payloads;
};

BitLibrary make_library(int n_files, long f_bits, std::uint64_t seed);

// One subfile class in the per-file layout: cached at rx_set and tx_set,
// occupying [begin, begin+length) of every file's payload.
struct SubfileRange {
  int r, t;
  std::vector<int> rx_set, tx_set;  // sorted node indices (0-based)
  long begin = 0, length = 0;
};

struct Placement {
  long f_bits = 0;
  std::vector<SubfileRange> layout;  // lexicographic (r, t, rx_set, tx_set); partitions [0, F)
  std::vector<std::vector<int>> tx_subfiles;  // per transmitter, indices into layout
  std::vector<std::vector<int>> rx_subfiles;  // per receiver
  long rx_cache_bits = 0;  // per node, identical by symmetry
  long tx_cache_bits = 0;

  // layout index for (rx_set, tx_set); throws if the subfile class is absent
  int find(const std::vector<int>& rx_set, const std::vector<int>& tx_set) const;
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> index;
};

// Splits every file per the validated ratios and fills node caches.
// f_bits must make every subfile an integer number of bits.
Placement place(const NetworkConfig& cfg, const CachePoint& pt, const SplitRatios& s,
                const BitLibrary& lib);

// Worst case: receiver q requests file q (distinct demands).
std::vector<int> worst_case_demand(const NetworkConfig& cfg);

struct CodedMessage {
  int r, t;
  std::vector<int> rx_group;  // size r+1
  std::vector<int> tx_group;  // size t
  std::vector<std::uint8_t> bits;
};

// XOR-coded multicast messages of one delivery group: one per
// (receiver group, transmitter group) pair.
std::vector<CodedMessage> build_group_messages(const NetworkConfig& cfg, const Placement& pl,
                                               const BitLibrary& lib,
                                               const std::vector<int>& demand, int r, int t);

struct ReceiverDecode {
  bool ok = false;
  int first_bad_subfile = -1;  // layout index of the first mismatching range
  std::vector<std::uint8_t> file_bits;
};

std::vector<ReceiverDecode> decode_all(const NetworkConfig& cfg, const Placement& pl,
                                       const BitLibrary& lib,
                                       const std::vector<CodedMessage>& messages,
                                       const std::vector<int>& demand);

struct GroupAccount {
  long messages_per_receiver = 0;  // C(n_rx-1, r) * C(n_tx, t)
  long messages_total = 0;
  Rat group_ndt;
};

struct DeliveryAccount {
  std::map<CacheStateIndex, GroupAccount> per_group;
  Rat total_ndt;
};

struct SimulationResult {
  long f_bits = 0;
  bool all_decoded = false;
  std::vector<ReceiverDecode> decodes;
  DeliveryAccount account;
  SplitRatios ratios_used;
};

// Smallest file size (in bits) that makes every subfile length integral.
long required_file_bits(const SplitRatios& s);

// place -> build -> decode with worst-case demands; the accounting total
// always equals ndt_from_ratios. File size is the minimal admissible one;
// ratios needing more than 2^20 bits are rejected.
SimulationResult simulate(const NetworkConfig& cfg, const CachePoint& pt,
                          const std::optional<SplitRatios>& ratios, std::uint64_t seed);

}  // namespace ndtopt
