#pragma once

#include <json.hpp>

#include "ndtopt/bounds.hpp"
#include "ndtopt/cachesim.hpp"
#include "ndtopt/phyverify.hpp"

namespace ndtopt {

using Json = nlohmann::ordered_json;  // stable key order

// Every rational is serialized as {"exact": "p/q", "decimal": <double>}.
Json rational_json(const Rat& value);
Json ratios_json(const SplitRatios& s);

// Ratios-file format: JSON map "r,t" -> "p/q".
SplitRatios ratios_from_json(const Json& j);

Json report_json(const NetworkConfig& cfg, const CachePoint& pt, const NdtReport& report);
Json simulation_json(const NetworkConfig& cfg, const CachePoint& pt,
                     const SimulationResult& result, std::uint64_t seed);
Json scheme_check_json(const SchemeCheck& check);

const char* scheme_kind_name(SchemeKind kind);

}  // namespace ndtopt
