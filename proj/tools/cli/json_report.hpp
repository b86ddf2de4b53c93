#pragma once

// nlohmann::json conversions for the core report types. Objects use sorted
// keys so that dumps are byte-stable.

#include <nlohmann/json.hpp>

#include "markoff/action.hpp"
#include "markoff/charsum.hpp"
#include "markoff/composite.hpp"
#include "markoff/quadorder.hpp"
#include "markoff/surface.hpp"
#include "markoff/t2.hpp"

namespace markoff {

using nlohmann::json;

void to_json(json& j, const Triple& t);
void to_json(json& j, const CycleType& c);
void to_json(json& j, const CycleCensus& c);
void to_json(json& j, const CensusReport& r);
void to_json(json& j, const PrimitivityResult& r);
void to_json(json& j, const RelationReport& r);
/// Stage timings are left out; see certificate_timings.
void to_json(json& j, const CertificateChain& c);
json certificate_timings(const CertificateChain& c);
void to_json(json& j, const OrbitCensus& c);
void to_json(json& j, const ProductOrbitReport& r);
void to_json(json& j, const JointSignCount& c);
void to_json(json& j, const Order4Witness& w);
void to_json(json& j, const OrderRecord& r);
void to_json(json& j, const Checkpoint& c);
/// Summary only; per-prime records are exported as CSV.
void to_json(json& j, const ScanSummary& s);
void to_json(json& j, const BijectionReport& r);
void to_json(json& j, const NielsenReport& r);

}  // namespace markoff
