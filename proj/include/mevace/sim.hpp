#pragma once

// Deterministic slot simulator. One slot runs on an abstract integer clock:
//
//   [0, commit)                 users commit, validators issue receipts
//   commit                      producer locks the admissible set, starts the VDF
//   [open_start, open_cutoff)   ordering published, users open
//   open_cutoff                 producer proposes the block, observers build
//                               omission proofs
//   open_cutoff + vote_delay    validators vote; proofs arriving at
//                               open_cutoff + proof_latency count only if they
//                               land strictly before the vote
//
// A block finalizes with at least 2f+1 accepting votes. Honest validators
// accept iff verify_block finds no violation; Byzantine validators withhold
// receipts from target users and accept every block.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mevace/accountability.hpp"
#include "mevace/economics.hpp"
#include "mevace/identity.hpp"

namespace mevace {

enum class TxRole : std::uint8_t { Plain, Target, Producer };

std::string_view to_string(TxRole r);

struct UserSpec {
    std::string name;
    TxRole role = TxRole::Plain;
    std::uint32_t commits_per_slot = 1;
    Tick commit_tick = 0;
    bool opens = true;
    /// Derived from the name when absent.
    std::optional<RootEntropy> rev;
};

enum class StrategyKind : std::uint8_t {
    Honest,
    Stuff,
    SelectiveNonOpen,
    Reorder,
    Censor,
    FakeVdf,
};

enum class WithholdRule : std::uint8_t {
    /// Withhold producer openings that land right after a target.
    Adverse,
    All,
};

enum class CensorMode : std::uint8_t {
    /// Leave the target's certified commitment out of the admissible set.
    Commitment,
    /// Keep the commitment but drop the target's certified opening.
    Execution,
};

struct ProducerStrategy {
    StrategyKind kind = StrategyKind::Honest;
    std::uint64_t stuff_k = 0;
    WithholdRule withhold = WithholdRule::Adverse;
    CensorMode censor_mode = CensorMode::Commitment;
    /// User names; empty means every Target-role user.
    std::vector<std::string> censor_targets;
    std::uint32_t fake_vdf_attempts = 16;

    bool operator==(const ProducerStrategy&) const = default;
};

/// "honest", "stuff:K", "selective-non-open[:adverse|all]", "reorder",
/// "censor[:commitment|execution]", "fake-vdf[:N]". Throws
/// std::invalid_argument on anything else.
ProducerStrategy parse_strategy(const std::string& text);
std::string to_string(const ProducerStrategy& s);

/// Adjacency ("sandwich") payoff: every producer transaction executed right
/// before a target earns front_gain, every producer transaction executed
/// right after a target loses back_loss. A censoring producer is paid
/// censor_bribe per target transaction missing from a finalized block.
struct PayoffModel {
    TokenAmount front_gain = 10;
    TokenAmount back_loss = 0;
    TokenAmount censor_bribe = 0;
};

/// Producer profit over an executed sequence of roles.
std::int64_t producer_profit(const PayoffModel& model, std::span<const TxRole> executed);

struct ScenarioConfig {
    std::string name = "scenario";
    ProtocolParams params;
    SchemeId scheme = SchemeId::MockDeterministic;
    std::vector<UserSpec> users;
    /// byzantine[v] marks validator v; size must equal params.n.
    std::vector<bool> byzantine;
    ProducerStrategy strategy;
    PayoffModel payoff;
    std::uint64_t seed = 1;
    std::uint64_t start_slot = 1;
    Tick proof_latency = 0;
    Tick vote_delay = 1;
    Tick producer_head_start = 0;
    /// Largest k checked by the stuffing bound.
    std::uint64_t k_max = 16;
};

/// Slot budget identity total = commit + vdf + open + margin, all components
/// positive, and vdf strictly greater than the producer head start.
bool validate_timing(const SlotBudget& budget, Tick producer_head_start);

/// Every problem that makes a scenario unusable; empty means runnable.
std::vector<std::string> scenario_errors(const ScenarioConfig& config);

/// Worst-case gains implied by the payoff model and roster:
///   g_invalid  = p * (front_gain + back_loss) + t * censor_bribe
///   g_open     = back_loss
///   g_stuff(k) = k * front_gain
/// where p counts producer-controlled and t target commitments per slot.
GainModel gain_model(const ScenarioConfig& config);

struct Actor {
    std::string name;
    UserSpec spec;
    AuthKeyPair keys;
    Digest idcom;
    bool sybil = false;
};

/// Keys, validator set and the registry after setup registrations.
struct Setup {
    ScenarioConfig config;
    std::vector<Actor> actors;  // configured users followed by sybils
    std::vector<ValidatorKey> validator_keys;
    ValidatorSet validators;
    AuthKeyPair producer_keys;
    Digest producer_id;
    Registry registry;
    std::size_t sybil_count = 0;
};

/// Throws std::invalid_argument when scenario_errors() is non-empty.
Setup build_setup(const ScenarioConfig& config);

struct TimedEvent {
    Tick tick = 0;
    std::string event;

    bool operator==(const TimedEvent&) const = default;
};

struct ActorPayoff {
    std::string actor;
    std::int64_t gross = 0;
    TokenAmount slashed = 0;
    std::int64_t net = 0;

    bool operator==(const ActorPayoff&) const = default;
};

struct InvariantReport {
    bool quota_respected = true;
    bool honest_signers_per_certificate = true;  // >= f+1 honest receipts
    bool conservation = true;
    bool partition = true;               // opened + skipped == admissible
    bool one_slash_per_skipped = true;

    bool all() const {
        return quota_respected && honest_signers_per_certificate && conservation && partition &&
               one_slash_per_skipped;
    }
    bool operator==(const InvariantReport&) const = default;
};

struct SlotOutcome {
    SlotNumber slot;
    ProducerStrategy strategy;
    Block block;
    Digest block_hash;
    bool finalized = false;
    BlockVerdict verdict;  // as computed by honest validators
    std::uint32_t accept_votes = 0;
    std::uint32_t reject_votes = 0;
    std::vector<OmissionProof> proofs;
    bool proofs_timely = true;
    bool ex_post_producer_slash = false;
    std::vector<SlashEvent> slashes;
    std::size_t admitted_sybils = 0;
    std::int64_t producer_gross = 0;
    std::int64_t producer_net = 0;
    std::int64_t mev = 0;
    std::vector<ActorPayoff> payoffs;
    std::vector<TimedEvent> trace;
    InvariantReport invariants;
};

/// Runs one slot against `registry`, which receives every slash. `seed`
/// drives nonces and nothing else.
/// Throws std::invalid_argument if the timing budget is invalid.
SlotOutcome run_slot(const Setup& setup, Registry& registry, SlotNumber slot,
                     const Digest& prev_block_hash, std::uint64_t seed);

struct CampaignMetrics {
    std::uint64_t slots = 0;
    std::uint64_t finalized = 0;
    std::uint64_t rejected = 0;
    /// Histogram of sigma_s mappings.
    std::map<std::vector<std::uint32_t>, std::uint64_t> permutation_counts;
    /// Execution-position histogram of the first configured user's first tx.
    std::string tracked_actor;
    std::vector<std::uint64_t> tracked_positions;
    TokenAmount deposits = 0;
    TokenAmount locked = 0;
    TokenAmount slashed = 0;
    bool conservation_every_slot = true;
    std::uint64_t invariant_failures = 0;
    std::int64_t producer_gross_total = 0;
    std::int64_t producer_net_total = 0;
    std::int64_t mev_total = 0;

    double mean_producer_net() const {
        return slots == 0 ? 0.0 : static_cast<double>(producer_net_total) / static_cast<double>(slots);
    }
};

/// Each slot starts from a fresh copy of the setup registry; slot i uses
/// seeds[i], slot number start_slot + i, and slot_prev_hash(seeds[i]).
CampaignMetrics run_campaign(const ScenarioConfig& config, std::span<const std::uint64_t> seeds);
/// Seeds derived from config.seed.
CampaignMetrics run_campaign(const ScenarioConfig& config, std::uint64_t n_slots);

/// Per-slot seed used by run_campaign(config, n).
std::uint64_t campaign_seed(std::uint64_t base, std::uint64_t index);

/// Previous-block hash the simulator assumes for a slot seed.
Digest slot_prev_hash(std::uint64_t seed);

/// Hash-chain VDF configured from params; interval 0 selects the default.
HashChainVdf make_vdf(const ProtocolParams& params);

}  // namespace mevace
