#pragma once

#include <json.hpp>

#include "crstab/hls.hpp"
#include "crstab/local_stability.hpp"
#include "crstab/yamabe.hpp"

namespace crstab {

using Json = nlohmann::json;

Json to_json(const DeficitReport& r);
Json to_json(const SharpConstants& c);
Json to_json(const ExtremalParams& p);
Json to_json(const DistanceResult& r);
Json to_json(const CutParams& p);
Json to_json(const TermReport& r);
Json to_json(const SplitReport& r);
Json to_json(const ChainReport& r);
Json to_json(const FlowSample& s);
Json to_json(const FlowTrace& t);
Json to_json(const HlsStabilityReport& r);

/// Checkpoint of a flow state: coefficients plus enough context to resume.
Json flow_state_to_json(const FlowState& st);
FlowState flow_state_from_json(const Json& j, const ContextPtr& ctx);

}  // namespace crstab
