#pragma once

// JSON forms of scenarios, registries, blocks, evidence bundles and reports.
// Binary objects (certificates, proofs) travel as hex of their canonical
// encodings so a decoded block re-verifies bit for bit.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mevace/economics.hpp"
#include "mevace/sim.hpp"

namespace mevace {

using Json = nlohmann::json;

/// Raised for any malformed or semantically invalid JSON input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json params_to_json(const ProtocolParams& p);
/// Missing keys keep their defaults; unknown keys are rejected.
ProtocolParams params_from_json(const Json& j);

Json config_to_json(const ScenarioConfig& c);
/// Parses without validating semantics; see scenario_errors().
ScenarioConfig config_from_json(const Json& j);

Json registry_to_json(const Registry& r);
Registry registry_from_json(const Json& j);

Json block_to_json(const Block& b);
Block block_from_json(const Json& j);

Json verdict_to_json(const BlockVerdict& v);

/// Everything an outside verifier needs to re-check one block.
struct Evidence {
    ProtocolParams params;
    ValidatorSet validators;
    Digest prev_block_hash;
    Block block;
    std::vector<OmissionProof> proofs;
};

Json evidence_to_json(const Evidence& e);
Evidence evidence_from_json(const Json& j);
Evidence evidence_from_outcome(const Setup& setup, const SlotOutcome& outcome, const Digest& prev);

Json outcome_to_json(const SlotOutcome& o, bool with_block);
/// What `mevace run-slot` prints: the outcome plus scenario name, seed and
/// registry totals after the slot.
Json slot_report(const ScenarioConfig& c, const SlotOutcome& o, const Registry& registry, bool with_block);
Json metrics_to_json(const CampaignMetrics& m);
Json incentives_to_json(const IncentiveReport& r);

/// Reads a whole file as JSON. Throws FormatError on I/O or parse failure.
Json read_json_file(const std::string& path);

}  // namespace mevace
