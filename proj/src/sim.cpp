#include "mevace/sim.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mevace {

std::string_view to_string(TxRole r) {
    switch (r) {
        case TxRole::Plain: return "plain";
        case TxRole::Target: return "target";
        case TxRole::Producer: return "producer";
    }
    return "unknown";
}

ProducerStrategy parse_strategy(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto parse_count = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("bad count in strategy: " + text);
        }
        return std::stoull(s);
    };

    ProducerStrategy s;
    if (head == "honest" && arg.empty()) {
        s.kind = StrategyKind::Honest;
    } else if (head == "stuff") {
        s.kind = StrategyKind::Stuff;
        s.stuff_k = parse_count(arg);
        if (s.stuff_k == 0) throw std::invalid_argument("stuff:K needs K >= 1");
    } else if (head == "selective-non-open") {
        s.kind = StrategyKind::SelectiveNonOpen;
        if (arg.empty() || arg == "adverse") {
            s.withhold = WithholdRule::Adverse;
        } else if (arg == "all") {
            s.withhold = WithholdRule::All;
        } else {
            throw std::invalid_argument("unknown withhold rule: " + arg);
        }
    } else if (head == "reorder" && arg.empty()) {
        s.kind = StrategyKind::Reorder;
    } else if (head == "censor") {
        s.kind = StrategyKind::Censor;
        if (arg.empty() || arg == "commitment") {
            s.censor_mode = CensorMode::Commitment;
        } else if (arg == "execution") {
            s.censor_mode = CensorMode::Execution;
        } else {
            throw std::invalid_argument("unknown censor mode: " + arg);
        }
    } else if (head == "fake-vdf") {
        s.kind = StrategyKind::FakeVdf;
        if (!arg.empty()) s.fake_vdf_attempts = static_cast<std::uint32_t>(parse_count(arg));
    } else {
        throw std::invalid_argument("unknown strategy: " + text);
    }
    return s;
}

std::string to_string(const ProducerStrategy& s) {
    switch (s.kind) {
        case StrategyKind::Honest: return "honest";
        case StrategyKind::Stuff: return "stuff:" + std::to_string(s.stuff_k);
        case StrategyKind::SelectiveNonOpen:
            return s.withhold == WithholdRule::All ? "selective-non-open:all"
                                                   : "selective-non-open:adverse";
        case StrategyKind::Reorder: return "reorder";
        case StrategyKind::Censor:
            return s.censor_mode == CensorMode::Execution ? "censor:execution"
                                                          : "censor:commitment";
        case StrategyKind::FakeVdf: return "fake-vdf:" + std::to_string(s.fake_vdf_attempts);
    }
    return "unknown";
}

std::int64_t producer_profit(const PayoffModel& model, std::span<const TxRole> executed) {
    std::int64_t profit = 0;
    for (std::size_t i = 0; i < executed.size(); ++i) {
        if (executed[i] != TxRole::Producer) continue;
        if (i + 1 < executed.size() && executed[i + 1] == TxRole::Target) {
            profit += static_cast<std::int64_t>(model.front_gain);
        }
        if (i > 0 && executed[i - 1] == TxRole::Target) {
            profit -= static_cast<std::int64_t>(model.back_loss);
        }
    }
    return profit;
}

bool validate_timing(const SlotBudget& b, Tick producer_head_start) {
    if (b.commit <= 0 || b.vdf <= 0 || b.open <= 0 || b.margin <= 0) return false;
    if (b.total != b.commit + b.vdf + b.open + b.margin) return false;
    return b.vdf > producer_head_start;
}

std::vector<std::string> scenario_errors(const ScenarioConfig& c) {
    std::vector<std::string> errs = structural_errors(c.params);
    if (!validate_timing(c.params.budget, c.producer_head_start)) {
        errs.push_back("slot budget invalid or delay window does not exceed producer head start");
    }
    if (c.byzantine.size() != c.params.n) {
        errs.push_back("byzantine labels must cover exactly n validators");
    } else if (std::count(c.byzantine.begin(), c.byzantine.end(), true) > c.params.f) {
        errs.push_back("more than f Byzantine validators");
    }
    std::set<std::string> names;
    for (const auto& u : c.users) {
        if (u.name.empty()) errs.push_back("user with empty name");
        if (u.name.rfind("sybil-", 0) == 0) errs.push_back("user name prefix 'sybil-' is reserved");
        if (!names.insert(u.name).second) errs.push_back("duplicate user name: " + u.name);
        if (u.commits_per_slot == 0) errs.push_back("user " + u.name + " commits nothing");
    }
    if (c.users.empty()) errs.push_back("scenario has no users");
    if (c.strategy.kind == StrategyKind::Stuff && c.strategy.stuff_k == 0) {
        errs.push_back("stuffing strategy needs k >= 1");
    }
    for (const auto& t : c.strategy.censor_targets) {
        if (!names.contains(t)) errs.push_back("censor target is not a user: " + t);
    }
    if (c.proof_latency < 0) errs.push_back("proof latency must be non-negative");
    if (c.vote_delay < 1) errs.push_back("vote delay must be at least 1");
    if (c.k_max < 1) errs.push_back("k_max must be at least 1");
    return errs;
}

GainModel gain_model(const ScenarioConfig& c) {
    std::uint64_t p = 0, t = 0;
    for (const auto& u : c.users) {
        if (u.role == TxRole::Producer) p += u.commits_per_slot;
        if (u.role == TxRole::Target) t += u.commits_per_slot;
    }
    GainModel g;
    g.g_invalid = p * (c.payoff.front_gain + c.payoff.back_loss) + t * c.payoff.censor_bribe;
    g.g_open = c.payoff.back_loss;
    TokenAmount front = c.payoff.front_gain;
    g.g_stuff = [front](std::uint64_t k) -> TokenAmount { return k * front; };
    return g;
}

namespace {

Digest tagged_hash(std::string_view tag, ByteView body) {
    return hash(ByteWriter{}.u64be(tag.size()).raw(to_bytes(tag)).raw(body).bytes());
}

RootEntropy rev_for(const std::string& name) {
    Digest d = tagged_hash("mevace/rev", to_bytes(name));
    RootEntropy rev;
    std::copy(d.begin(), d.end(), rev.rev.begin());
    return rev;
}

}  // namespace

Setup build_setup(const ScenarioConfig& config) {
    auto errs = scenario_errors(config);
    if (!errs.empty()) throw std::invalid_argument("invalid scenario: " + errs.front());

    Setup s;
    s.config = config;
    const ProtocolParams& params = config.params;

    for (ValidatorId v = 0; v < params.n; ++v) {
        Digest seed = tagged_hash("mevace/validator", ByteWriter{}.u32be(v).bytes());
        KeyPair kp = keypair_from_seed(config.scheme, seed);
        s.validator_keys.push_back(ValidatorKey{v, kp.signing_key});
        s.validators.keys.push_back(kp.verification_key);
    }

    s.producer_keys = derive_auth_keypair(rev_for("producer"), kAuthContext, config.scheme);
    s.producer_id = compute_idcom(s.producer_keys.verification_key);
    s.registry
        .register_identity(s.producer_keys.verification_key, params.b_prod, params,
                           IdentityRole::Producer)
        .value();

    auto add_actor = [&](UserSpec spec, bool sybil) {
        Actor a;
        a.name = spec.name;
        a.keys = derive_auth_keypair(spec.rev.value_or(rev_for(spec.name)), kAuthContext,
                                     config.scheme);
        a.idcom = compute_idcom(a.keys.verification_key);
        a.spec = std::move(spec);
        a.sybil = sybil;
        auto reg = s.registry.register_identity(a.keys.verification_key, params.d_stake, params);
        if (!reg) {
            throw std::invalid_argument("registration failed for " + a.name + ": " +
                                        std::string(to_string(reg.error())));
        }
        s.actors.push_back(std::move(a));
    };

    for (const auto& u : config.users) add_actor(u, false);

    if (config.strategy.kind == StrategyKind::Stuff) {
        std::uint64_t k = config.strategy.stuff_k;
        std::uint64_t l = params.quota_l;
        std::uint64_t count = (k + l - 1) / l;
        for (std::uint64_t i = 0; i < count; ++i) {
            UserSpec spec;
            spec.name = "sybil-" + std::to_string(i);
            spec.role = TxRole::Producer;
            spec.commits_per_slot = static_cast<std::uint32_t>(std::min(l, k - i * l));
            add_actor(std::move(spec), true);
        }
        s.sybil_count = static_cast<std::size_t>(count);
    }
    return s;
}

namespace {

struct Pending {
    std::size_t actor = 0;
    std::uint32_t index = 0;
    Commitment commitment;
    OpeningSecret secret;
    std::optional<CommitCertificate> cert;
    std::optional<OpenCertificate> open_cert;
};

class SlotRunner {
public:
    SlotRunner(const Setup& setup, Registry& registry, SlotNumber slot, const Digest& prev,
               std::uint64_t seed, const ProducerStrategy& strategy)
        : setup_(setup),
          cfg_(setup.config),
          params_(setup.config.params),
          registry_(registry),
          slot_(slot),
          prev_(prev),
          seed_(seed),
          strategy_(strategy),
          vdf_(make_vdf(setup.config.params)) {
        for (std::size_t i = 0; i < setup.actors.size(); ++i) actor_by_id_[setup.actors[i].idcom] = i;
        for (const auto& name : strategy.censor_targets) censored_names_.insert(name);
        if (strategy.censor_targets.empty()) {
            for (const auto& a : setup.actors) {
                if (a.spec.role == TxRole::Target) censored_names_.insert(a.name);
            }
        }
    }

    SlotOutcome run();

private:
    bool byzantine(ValidatorId v) const { return cfg_.byzantine[v]; }
    const Actor& actor(std::size_t i) const { return setup_.actors[i]; }

    TxRole role_of(const Digest& idcom) const {
        auto it = actor_by_id_.find(idcom);
        return it == actor_by_id_.end() ? TxRole::Plain : actor(it->second).spec.role;
    }

    bool censored(std::size_t actor_index) const {
        return strategy_.kind == StrategyKind::Censor &&
               censored_names_.contains(actor(actor_index).name);
    }

    void log(Tick t, std::string event) { out_.trace.push_back(TimedEvent{t, std::move(event)}); }

    std::vector<TxRole> roles_in_order(const AdmissibleSet& adm, const Permutation& perm) const {
        std::vector<TxRole> roles;
        for (auto e : perm.mapping) roles.push_back(role_of(adm.entries[e].commitment.idcom));
        return roles;
    }

    void commit_window();
    void lock_and_order();
    void open_window();
    void propose_and_vote();
    void settle();
    void check_invariants();

    Permutation reorder_for_profit(const AdmissibleSet& adm) const;

    const Setup& setup_;
    const ScenarioConfig& cfg_;
    const ProtocolParams& params_;
    Registry& registry_;
    SlotNumber slot_;
    Digest prev_;
    std::uint64_t seed_;
    ProducerStrategy strategy_;
    HashChainVdf vdf_;

    std::map<Digest, std::size_t> actor_by_id_;
    std::set<std::string> censored_names_;
    std::vector<Registry> views_;
    std::vector<Pending> pending_;
    AdmissibleSet admissible_;
    OrderingBundle bundle_;
    ExecutionList execution_;
    std::int64_t profit_ = 0;
    SlotOutcome out_;
};

void SlotRunner::commit_window() {
    views_.assign(params_.n, registry_);
    DeterministicNonces nonces(
        tagged_hash("mevace/nonce", ByteWriter{}.u64be(seed_).u64be(slot_.value).bytes()));
    NonceSource source = [&nonces] { return nonces(); };

    for (std::size_t ai = 0; ai < setup_.actors.size(); ++ai) {
        const Actor& a = actor(ai);
        if (a.sybil && strategy_.kind != StrategyKind::Stuff) continue;
        for (std::uint32_t i = 0; i < a.spec.commits_per_slot; ++i) {
            std::string tx = a.name + "/" + std::to_string(slot_.value) + "/" + std::to_string(i);
            auto [cm, secret] = make_commitment(a.keys.signing_key, a.idcom, to_bytes(tx), slot_, source);

            const Tick t = a.spec.commit_tick;
            const SlotClock clock{slot_, t};
            Bytes msg = encode_message(commit_message(cm.idcom, cm.c, cm.slot));
            std::vector<CommitReceipt> receipts;
            std::string refusal;
            for (const auto& vk : setup_.validator_keys) {
                if (byzantine(vk.id)) {
                    if (a.spec.role != TxRole::Target) {
                        receipts.push_back(CommitReceipt{vk.id, sign(vk.signing_key, msg)});
                    }
                    continue;
                }
                auto r = validator_check_commitment(vk, views_[vk.id], cm, clock, params_);
                if (r) {
                    receipts.push_back(*r);
                } else if (refusal.empty()) {
                    refusal = std::string(to_string(r.error()));
                }
            }
            auto cert = aggregate_commit_certificate(cm, receipts, params_, setup_.validators);
            std::ostringstream ev;
            ev << "commit " << a.name << "#" << i << " receipts=" << receipts.size()
               << (cert ? " certified" : " uncertified");
            if (!refusal.empty()) ev << " refusal=" << refusal;
            log(t, ev.str());

            Pending p{ai, i, cm, secret, std::nullopt, std::nullopt};
            if (cert) p.cert = std::move(*cert);
            pending_.push_back(std::move(p));
        }
    }
}

Permutation SlotRunner::reorder_for_profit(const AdmissibleSet& adm) const {
    std::vector<std::uint32_t> prod, target, plain;
    for (std::uint32_t e = 0; e < adm.size(); ++e) {
        switch (role_of(adm.entries[e].commitment.idcom)) {
            case TxRole::Producer: prod.push_back(e); break;
            case TxRole::Target: target.push_back(e); break;
            case TxRole::Plain: plain.push_back(e); break;
        }
    }
    std::size_t pairs = std::min(prod.size(), target.size());
    Permutation p;
    for (std::size_t i = pairs; i < prod.size(); ++i) p.mapping.push_back(prod[i]);
    std::size_t next_plain = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        p.mapping.push_back(prod[i]);
        p.mapping.push_back(target[i]);
        if (next_plain < plain.size()) p.mapping.push_back(plain[next_plain++]);
    }
    for (std::size_t i = next_plain; i < plain.size(); ++i) p.mapping.push_back(plain[i]);
    for (std::size_t i = pairs; i < target.size(); ++i) p.mapping.push_back(target[i]);
    return p;
}

void SlotRunner::lock_and_order() {
    const Tick cutoff = params_.budget.commit_cutoff();
    std::vector<CommitCertificate> certs;
    for (const auto& p : pending_) {
        if (!p.cert) continue;
        if (censored(p.actor) && strategy_.censor_mode == CensorMode::Commitment) continue;
        certs.push_back(*p.cert);
    }
    admissible_ = canonicalize(std::move(certs), slot_).value();
    if (cfg_.producer_head_start > 0) {
        log(cutoff - cfg_.producer_head_start, "producer observes set root");
    }
    log(cutoff, "admissible set locked m=" + std::to_string(admissible_.size()));

    bundle_ = produce_ordering(admissible_, prev_, vdf_);

    if (strategy_.kind == StrategyKind::FakeVdf) {
        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        for (std::uint32_t g = 0; g < std::max<std::uint32_t>(1, strategy_.fake_vdf_attempts); ++g) {
            Digest fake = tagged_hash("mevace/fake-seed",
                                      ByteWriter{}.raw(bundle_.vdf_input).u32be(g).bytes());
            Permutation perm = derive_permutation(fake, admissible_.size());
            auto roles = roles_in_order(admissible_, perm);
            std::int64_t value = producer_profit(cfg_.payoff, roles);
            if (value > best) {
                best = value;
                bundle_.seed = fake;
                bundle_.permutation = std::move(perm);
            }
        }
        log(params_.budget.open_start(), "producer substitutes ground seed");
    } else if (strategy_.kind == StrategyKind::Reorder) {
        bundle_.permutation = reorder_for_profit(admissible_);
        log(params_.budget.open_start(), "producer substitutes chosen permutation");
    }
    log(params_.budget.open_start(), "ordering published seed=" + to_hex(bundle_.seed).substr(0, 16));
}

void SlotRunner::open_window() {
    const Tick t = params_.budget.open_start();
    const SlotClock clock{slot_, t};

    std::vector<std::uint32_t> position_of(admissible_.size());
    for (std::uint32_t pos = 0; pos < bundle_.permutation.size(); ++pos) {
        position_of[bundle_.permutation.mapping[pos]] = pos;
    }
    auto roles = roles_in_order(admissible_, bundle_.permutation);

    for (auto& p : pending_) {
        if (!p.cert) continue;
        auto entry = admissible_.find(p.commitment.idcom, p.commitment.c);
        if (!entry) continue;
        const Actor& a = actor(p.actor);
        if (!a.spec.opens) {
            log(t, "withhold " + a.name + "#" + std::to_string(p.index));
            continue;
        }
        if (a.spec.role == TxRole::Producer && strategy_.kind == StrategyKind::SelectiveNonOpen) {
            std::uint32_t pos = position_of[*entry];
            bool adverse = pos > 0 && roles[pos - 1] == TxRole::Target;
            if (strategy_.withhold == WithholdRule::All || adverse) {
                log(t, "producer withholds " + a.name + "#" + std::to_string(p.index));
                continue;
            }
        }

        Bytes msg = encode_message(open_message(p.commitment.idcom, p.commitment.c, slot_));
        std::vector<OpenReceipt> receipts;
        for (const auto& vk : setup_.validator_keys) {
            if (byzantine(vk.id)) {
                if (a.spec.role != TxRole::Target) {
                    receipts.push_back(OpenReceipt{vk.id, sign(vk.signing_key, msg)});
                }
                continue;
            }
            auto r = validator_check_opening(vk, views_[vk.id], admissible_, p.secret, clock, params_);
            if (r) receipts.push_back(*r);
        }
        auto oc = aggregate_open_certificate(p.secret, receipts, params_, setup_.validators);
        log(t, "open " + a.name + "#" + std::to_string(p.index) + " receipts=" +
                   std::to_string(receipts.size()) + (oc ? " certified" : " uncertified"));
        if (oc) p.open_cert = std::move(*oc);
    }
}

void SlotRunner::propose_and_vote() {
    const Tick cutoff = params_.budget.open_cutoff();
    std::vector<OpenCertificate> presented;
    for (const auto& p : pending_) {
        if (!p.open_cert) continue;
        if (censored(p.actor) && strategy_.censor_mode == CensorMode::Execution) continue;
        presented.push_back(*p.open_cert);
    }
    execution_ = build_execution_list(bundle_, admissible_, presented, params_, setup_.validators).value();

    Block& b = out_.block;
    b.slot = slot_;
    b.prev_block_hash = prev_;
    b.bundle = bundle_;
    b.admissible = admissible_;
    b.open_certs = std::move(presented);
    b.execution_list = execution_;
    for (const auto& s : execution_.skipped) b.penalized.push_back(CommitRef{s.idcom, s.c, slot_});
    b.producer_id = setup_.producer_id;
    out_.block_hash = block_hash(b);
    log(cutoff, "block proposed executed=" + std::to_string(execution_.ordered_txs.size()) +
                    " skipped=" + std::to_string(execution_.skipped.size()));

    // Observers holding certificates check the proposal.
    for (const auto& p : pending_) {
        if (!p.cert) continue;
        auto entry = admissible_.find(p.commitment.idcom, p.commitment.c);
        std::optional<OmissionProof> proof;
        if (!entry) {
            proof = make_omission_proof(OmissionKind::CommitOmission, *p.cert, std::nullopt, params_,
                                        setup_.validators)
                        .value();
        } else if (p.open_cert) {
            const auto& txs = execution_.ordered_txs;
            bool executed = std::any_of(txs.begin(), txs.end(), [&](const ExecutedTx& t) {
                return t.entry == *entry && t.tx == p.secret.tx;
            });
            if (!executed) {
                proof = make_omission_proof(OmissionKind::ExecutionOmission, *p.cert, p.open_cert,
                                            params_, setup_.validators)
                            .value();
            }
        }
        if (proof) {
            log(cutoff, std::string(to_string(proof->kind)) + " proof by " + actor(p.actor).name);
            out_.proofs.push_back(std::move(*proof));
        }
    }

    const Tick vote_tick = cutoff + cfg_.vote_delay;
    const Tick arrival = cutoff + cfg_.proof_latency;
    out_.proofs_timely = arrival < vote_tick;
    if (!out_.proofs.empty()) {
        log(arrival, "omission proofs delivered" +
                         std::string(out_.proofs_timely ? "" : " after finalization vote"));
    }

    std::span<const OmissionProof> delivered;
    if (out_.proofs_timely) delivered = out_.proofs;
    // Honest validators see identical inputs, so one evaluation serves them all.
    out_.verdict = verify_block(b, prev_, params_, setup_.validators, delivered, vdf_);

    std::uint32_t byz = static_cast<std::uint32_t>(std::count(cfg_.byzantine.begin(), cfg_.byzantine.end(), true));
    std::uint32_t honest = params_.n - byz;
    out_.accept_votes = byz + (out_.verdict.valid ? honest : 0);
    out_.reject_votes = params_.n - out_.accept_votes;
    out_.finalized = out_.accept_votes >= 2 * params_.f + 1;

    std::string violations;
    for (auto v : out_.verdict.violations) violations += " " + std::string(to_string(v));
    log(vote_tick, "votes accept=" + std::to_string(out_.accept_votes) +
                       " reject=" + std::to_string(out_.reject_votes) +
                       (out_.finalized ? " finalized" : " rejected") +
                       (violations.empty() ? "" : " violations:" + violations));
}

void SlotRunner::settle() {
    const Tick settle_tick = params_.budget.open_cutoff() + cfg_.vote_delay;
    if (out_.finalized) {
        auto events = apply_non_opening_penalties(registry_, execution_, params_);
        out_.slashes.insert(out_.slashes.end(), events.begin(), events.end());

        if (!out_.proofs_timely && !out_.proofs.empty()) {
            BlockVerdict late;
            for (const auto& proof : out_.proofs) {
                if (!verify_omission_proof(proof, out_.block, params_, setup_.validators)) continue;
                late.valid = false;
                late.violations.push_back(proof.kind == OmissionKind::CommitOmission
                                              ? Violation::CommitOmitted
                                              : Violation::ExecutionOmitted);
            }
            if (auto ev = slash_producer(registry_, setup_.producer_id, params_, late, slot_)) {
                out_.ex_post_producer_slash = true;
                out_.slashes.push_back(*ev);
                log(params_.budget.open_cutoff() + cfg_.proof_latency,
                    "late omission proof accepted; producer slashed ex post");
            }
        }

        std::vector<TxRole> roles;
        for (const auto& t : execution_.ordered_txs) roles.push_back(role_of(t.idcom));
        profit_ = producer_profit(cfg_.payoff, roles);
    } else {
        if (auto ev = slash_producer(registry_, setup_.producer_id, params_, out_.verdict, slot_)) {
            out_.slashes.push_back(*ev);
        }
        profit_ = 0;
    }
    for (const auto& ev : out_.slashes) {
        log(settle_tick, "slash " + std::string(to_string(ev.reason)) + " amount=" +
                             std::to_string(ev.amount));
    }

    std::int64_t bribe = 0;
    if (out_.finalized && strategy_.kind == StrategyKind::Censor) {
        for (const auto& p : pending_) {
            if (!p.cert || !censored(p.actor)) continue;
            const auto& txs = execution_.ordered_txs;
            bool executed = std::any_of(txs.begin(), txs.end(),
                                        [&](const ExecutedTx& t) { return t.tx == p.secret.tx; });
            if (!executed) bribe += static_cast<std::int64_t>(cfg_.payoff.censor_bribe);
        }
    }

    std::map<Digest, TokenAmount> slashed_by_id;
    for (const auto& ev : out_.slashes) slashed_by_id[ev.idcom] += ev.amount;

    TokenAmount producer_slashed = slashed_by_id[setup_.producer_id];
    for (const auto& a : setup_.actors) {
        if (a.spec.role == TxRole::Producer) producer_slashed += slashed_by_id[a.idcom];
    }
    std::int64_t capital = 0;
    if (strategy_.kind == StrategyKind::Stuff) {
        capital = static_cast<std::int64_t>(setup_.sybil_count * params_.d_stake);
    }
    out_.producer_gross = profit_ + bribe;
    out_.producer_net = out_.producer_gross - static_cast<std::int64_t>(producer_slashed) - capital;
    out_.payoffs.push_back(ActorPayoff{"producer", out_.producer_gross, producer_slashed, out_.producer_net});

    std::map<Digest, std::int64_t> sandwiched;
    if (out_.finalized) {
        const auto& txs = execution_.ordered_txs;
        for (std::size_t i = 1; i < txs.size(); ++i) {
            if (role_of(txs[i].idcom) == TxRole::Target && role_of(txs[i - 1].idcom) == TxRole::Producer) {
                sandwiched[txs[i].idcom] += 1;
            }
        }
    }
    for (const auto& a : setup_.actors) {
        if (a.sybil && strategy_.kind != StrategyKind::Stuff) continue;
        std::int64_t gross = -sandwiched[a.idcom] * static_cast<std::int64_t>(cfg_.payoff.front_gain);
        TokenAmount s = slashed_by_id[a.idcom];
        out_.payoffs.push_back(ActorPayoff{a.name, gross, s, gross - static_cast<std::int64_t>(s)});
    }
}

void SlotRunner::check_invariants() {
    InvariantReport& inv = out_.invariants;
    std::map<Digest, std::uint32_t> per_id;
    for (const auto& e : admissible_.entries) {
        if (++per_id[e.commitment.idcom] > params_.quota_l) inv.quota_respected = false;
        std::uint32_t honest = 0;
        for (const auto& r : e.receipts) {
            if (r.validator_id < params_.n && !byzantine(r.validator_id)) ++honest;
        }
        if (honest < params_.f + 1) inv.honest_signers_per_certificate = false;
    }
    inv.conservation = registry_.conserves();
    inv.partition = execution_.ordered_txs.size() + execution_.skipped.size() == admissible_.size();
    if (out_.finalized) {
        auto n = std::count_if(out_.slashes.begin(), out_.slashes.end(), [](const SlashEvent& e) {
            return e.reason == SlashReason::NonOpening;
        });
        inv.one_slash_per_skipped = static_cast<std::size_t>(n) == execution_.skipped.size();
    }
}

SlotOutcome SlotRunner::run() {
    out_.slot = slot_;
    out_.strategy = strategy_;
    log(0, "slot " + std::to_string(slot_.value) + " start strategy=" + to_string(strategy_));
    commit_window();
    lock_and_order();
    open_window();
    propose_and_vote();
    settle();
    check_invariants();
    out_.admitted_sybils = 0;
    std::set<Digest> sybils;
    for (const auto& e : admissible_.entries) {
        auto it = actor_by_id_.find(e.commitment.idcom);
        if (it != actor_by_id_.end() && actor(it->second).sybil) sybils.insert(e.commitment.idcom);
    }
    out_.admitted_sybils = sybils.size();
    return std::move(out_);
}

std::int64_t ordering_profit(const SlotOutcome& o, const Setup& setup) {
    if (!o.finalized) return 0;
    std::map<Digest, TxRole> roles;
    for (const auto& a : setup.actors) roles[a.idcom] = a.spec.role;
    std::vector<TxRole> seq;
    for (const auto& t : o.block.execution_list.ordered_txs) {
        auto it = roles.find(t.idcom);
        seq.push_back(it == roles.end() ? TxRole::Plain : it->second);
    }
    return producer_profit(setup.config.payoff, seq);
}

}  // namespace

SlotOutcome run_slot(const Setup& setup, Registry& registry, SlotNumber slot,
                     const Digest& prev_block_hash, std::uint64_t seed) {
    if (!validate_timing(setup.config.params.budget, setup.config.producer_head_start)) {
        throw std::invalid_argument("slot timing budget is invalid");
    }
    const ProducerStrategy& strategy = setup.config.strategy;
    if (strategy.kind == StrategyKind::Honest) {
        return SlotRunner(setup, registry, slot, prev_block_hash, seed, strategy).run();
    }

    // Counterfactual honest run on a scratch registry gives sigma_0.
    Registry scratch = registry;
    SlotOutcome honest =
        SlotRunner(setup, scratch, slot, prev_block_hash, seed, ProducerStrategy{}).run();
    SlotOutcome out = SlotRunner(setup, registry, slot, prev_block_hash, seed, strategy).run();
    out.mev = ordering_profit(out, setup) - ordering_profit(honest, setup);
    return out;
}

std::uint64_t campaign_seed(std::uint64_t base, std::uint64_t index) {
    Digest d = tagged_hash("mevace/campaign", ByteWriter{}.u64be(base).u64be(index).bytes());
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
    return v;
}

Digest slot_prev_hash(std::uint64_t seed) {
    return tagged_hash("mevace/prev", ByteWriter{}.u64be(seed).bytes());
}

HashChainVdf make_vdf(const ProtocolParams& params) {
    VdfParams p = VdfParams::with_default_interval(params.vdf_delay_T);
    if (params.vdf_checkpoint_interval != 0) p.checkpoint_interval = params.vdf_checkpoint_interval;
    return HashChainVdf(p);
}

CampaignMetrics run_campaign(const ScenarioConfig& config, std::span<const std::uint64_t> seeds) {
    CampaignMetrics m;
    if (seeds.empty()) return m;
    Setup setup = build_setup(config);
    if (!setup.actors.empty()) m.tracked_actor = setup.actors.front().name;

    for (std::size_t i = 0; i < seeds.size(); ++i) {
        Registry reg = setup.registry;
        Digest prev = slot_prev_hash(seeds[i]);
        SlotOutcome o = run_slot(setup, reg, SlotNumber{config.start_slot + i}, prev, seeds[i]);

        ++m.slots;
        (o.finalized ? m.finalized : m.rejected) += 1;
        ++m.permutation_counts[o.block.bundle.permutation.mapping];
        if (!setup.actors.empty()) {
            const auto& txs = o.block.execution_list.ordered_txs;
            for (std::size_t pos = 0; pos < txs.size(); ++pos) {
                if (txs[pos].idcom != setup.actors.front().idcom) continue;
                if (m.tracked_positions.size() <= pos) m.tracked_positions.resize(pos + 1, 0);
                ++m.tracked_positions[pos];
                break;
            }
        }
        m.deposits += reg.total_deposits();
        m.locked += reg.total_locked();
        m.slashed += reg.total_slashed();
        if (!reg.conserves()) m.conservation_every_slot = false;
        if (!o.invariants.all()) ++m.invariant_failures;
        m.producer_gross_total += o.producer_gross;
        m.producer_net_total += o.producer_net;
        m.mev_total += o.mev;
    }
    return m;
}

CampaignMetrics run_campaign(const ScenarioConfig& config, std::uint64_t n_slots) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(n_slots);
    for (std::uint64_t i = 0; i < n_slots; ++i) seeds.push_back(campaign_seed(config.seed, i));
    return run_campaign(config, seeds);
}

}  // namespace mevace
