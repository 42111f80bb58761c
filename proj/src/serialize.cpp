#include "mevace/serialize.hpp"

#include <fstream>
#include <limits>
#include <type_traits>
#include <set>
#include <sstream>

namespace mevace {

namespace {

// nlohmann converts -4 to a huge unsigned value without complaint.
template <class T>
T convert(const Json& v) {
    if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_unsigned()) throw FormatError("expected a non-negative integer");
        std::uint64_t raw = v.get<std::uint64_t>();
        if (raw > std::numeric_limits<T>::max()) throw FormatError("integer out of range");
        return static_cast<T>(raw);
    } else {
        return v.get<T>();
    }
}

template <class T>
T get(const Json& j, const char* key) {
    if (!j.contains(key)) throw FormatError(std::string("missing key: ") + key);
    try {
        return convert<T>(j.at(key));
    } catch (const FormatError& e) {
        throw FormatError(std::string("bad value for ") + key + ": " + e.what());
    } catch (const Json::exception& e) {
        throw FormatError(std::string("bad value for ") + key + ": " + e.what());
    }
}

template <class T>
void read_opt(const Json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = convert<T>(j.at(key));
    } catch (const FormatError& e) {
        throw FormatError(std::string("bad value for ") + key + ": " + e.what());
    } catch (const Json::exception& e) {
        throw FormatError(std::string("bad value for ") + key + ": " + e.what());
    }
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
    if (!j.is_object()) throw FormatError(std::string(where) + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, _] : j.items()) {
        if (!ok.contains(k)) throw FormatError(std::string("unknown key in ") + where + ": " + k);
    }
}

Digest digest_at(const Json& j, const char* key) {
    try {
        return digest_from_hex(get<std::string>(j, key));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad hex for ") + key + ": " + e.what());
    }
}

Digest digest_from(const std::string& hex) {
    try {
        return digest_from_hex(hex);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad digest hex: ") + e.what());
    }
}

Bytes bytes_from(const std::string& hex) {
    try {
        return from_hex(hex);
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad hex: ") + e.what());
    }
}

Rational rational_at(const Json& j, const char* key, Rational fallback) {
    if (!j.contains(key)) return fallback;
    const Json& v = j.at(key);
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_unsigned()) return Rational{v.get<std::uint64_t>(), 1};
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad rational for ") + key + ": " + e.what());
    }
    throw FormatError(std::string(key) + " must be \"p/q\"");
}

std::string role_name(TxRole r) { return std::string(to_string(r)); }

TxRole role_from(const std::string& s) {
    if (s == "plain") return TxRole::Plain;
    if (s == "target") return TxRole::Target;
    if (s == "producer") return TxRole::Producer;
    throw FormatError("unknown user role: " + s);
}

SchemeId scheme_at(const Json& j, const char* key, SchemeId fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return scheme_from_name(get<std::string>(j, key));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

Json key_to_json(const VerificationKey& vk) {
    return Json{{"scheme", std::string(scheme_name(vk.scheme))}, {"bytes", to_hex(vk.bytes)}};
}

VerificationKey key_from_json(const Json& j) {
    VerificationKey vk;
    vk.scheme = scheme_at(j, "scheme", SchemeId::MockDeterministic);
    vk.bytes = bytes_from(get<std::string>(j, "bytes"));
    return vk;
}

SlashReason reason_from(const std::string& s) {
    for (auto r : {SlashReason::NonOpening, SlashReason::InvalidBehavior,
                   SlashReason::ProducerInvalidBlock}) {
        if (to_string(r) == s) return r;
    }
    throw FormatError("unknown slash reason: " + s);
}

Json slash_to_json(const SlashEvent& e) {
    return Json{{"idcom", to_hex(e.idcom)},
                {"slot", e.slot.value},
                {"fraction", to_string(e.fraction)},
                {"amount", e.amount},
                {"reason", std::string(to_string(e.reason))}};
}

SlashEvent slash_from_json(const Json& j) {
    SlashEvent e;
    e.idcom = digest_at(j, "idcom");
    e.slot = SlotNumber{get<std::uint64_t>(j, "slot")};
    e.fraction = rational_at(j, "fraction", Rational{});
    e.amount = get<TokenAmount>(j, "amount");
    e.reason = reason_from(get<std::string>(j, "reason"));
    return e;
}

template <class T, class Decode>
T decode_hex(const std::string& hex, Decode decode) {
    Bytes raw = bytes_from(hex);
    try {
        ByteReader r(raw);
        T v = decode(r);
        if (!r.at_end()) throw FormatError("trailing bytes in encoded object");
        return v;
    } catch (const ByteReader::DecodeError& e) {
        throw FormatError(std::string("cannot decode: ") + e.what());
    }
}

std::string encode_open_hex(const OpenCertificate& oc) {
    ByteWriter w;
    encode_open_certificate(w, oc);
    return to_hex(w.bytes());
}

}  // namespace

Json params_to_json(const ProtocolParams& p) {
    return Json{{"f", p.f},
                {"n", p.n},
                {"q_c", p.q_c},
                {"q_o", p.q_o},
                {"quota_l", p.quota_l},
                {"d_stake", p.d_stake},
                {"b_prod", p.b_prod},
                {"delta_user", to_string(p.delta_user)},
                {"delta_prod", to_string(p.delta_prod)},
                {"vdf_delay_T", p.vdf_delay_T},
                {"vdf_checkpoint_interval", p.vdf_checkpoint_interval},
                {"budget",
                 {{"commit", p.budget.commit},
                  {"vdf", p.budget.vdf},
                  {"open", p.budget.open},
                  {"margin", p.budget.margin},
                  {"total", p.budget.total}}},
                {"security_lambda", p.security_lambda}};
}

ProtocolParams params_from_json(const Json& j) {
    reject_unknown(j,
                   {"f", "n", "q_c", "q_o", "quota_l", "d_stake", "b_prod", "delta_user",
                    "delta_prod", "vdf_delay_T", "vdf_checkpoint_interval", "budget",
                    "security_lambda"},
                   "params");
    ProtocolParams p;
    read_opt(j, "f", p.f);
    read_opt(j, "n", p.n);
    read_opt(j, "q_c", p.q_c);
    read_opt(j, "q_o", p.q_o);
    read_opt(j, "quota_l", p.quota_l);
    read_opt(j, "d_stake", p.d_stake);
    read_opt(j, "b_prod", p.b_prod);
    p.delta_user = rational_at(j, "delta_user", p.delta_user);
    p.delta_prod = rational_at(j, "delta_prod", p.delta_prod);
    read_opt(j, "vdf_delay_T", p.vdf_delay_T);
    read_opt(j, "vdf_checkpoint_interval", p.vdf_checkpoint_interval);
    read_opt(j, "security_lambda", p.security_lambda);
    if (j.contains("budget")) {
        const Json& b = j.at("budget");
        reject_unknown(b, {"commit", "vdf", "open", "margin", "total"}, "budget");
        read_opt(b, "commit", p.budget.commit);
        read_opt(b, "vdf", p.budget.vdf);
        read_opt(b, "open", p.budget.open);
        read_opt(b, "margin", p.budget.margin);
        read_opt(b, "total", p.budget.total);
    }
    return p;
}

Json config_to_json(const ScenarioConfig& c) {
    Json users = Json::array();
    for (const auto& u : c.users) {
        Json ju{{"name", u.name},
                {"role", role_name(u.role)},
                {"commits_per_slot", u.commits_per_slot},
                {"commit_tick", u.commit_tick},
                {"opens", u.opens}};
        if (u.rev) ju["rev"] = to_hex(ByteView(u.rev->rev.data(), u.rev->rev.size()));
        users.push_back(std::move(ju));
    }
    Json byz = Json::array();
    for (std::size_t v = 0; v < c.byzantine.size(); ++v) {
        if (c.byzantine[v]) byz.push_back(v);
    }
    Json out{{"name", c.name},
             {"scheme", std::string(scheme_name(c.scheme))},
             {"params", params_to_json(c.params)},
             {"users", users},
             {"byzantine", byz},
             {"strategy", to_string(c.strategy)},
             {"payoff",
              {{"front_gain", c.payoff.front_gain},
               {"back_loss", c.payoff.back_loss},
               {"censor_bribe", c.payoff.censor_bribe}}},
             {"seed", c.seed},
             {"start_slot", c.start_slot},
             {"proof_latency", c.proof_latency},
             {"vote_delay", c.vote_delay},
             {"producer_head_start", c.producer_head_start},
             {"k_max", c.k_max}};
    if (!c.strategy.censor_targets.empty()) out["censor_targets"] = c.strategy.censor_targets;
    return out;
}

ScenarioConfig config_from_json(const Json& j) {
    reject_unknown(j,
                   {"name", "scheme", "params", "users", "byzantine", "strategy", "censor_targets",
                    "payoff", "seed", "start_slot", "proof_latency", "vote_delay",
                    "producer_head_start", "k_max", "description"},
                   "scenario");
    ScenarioConfig c;
    read_opt(j, "name", c.name);
    c.scheme = scheme_at(j, "scheme", c.scheme);
    if (j.contains("params")) c.params = params_from_json(j.at("params"));

    if (!j.contains("users") || !j.at("users").is_array()) {
        throw FormatError("scenario needs a users array");
    }
    for (const auto& ju : j.at("users")) {
        reject_unknown(ju, {"name", "role", "commits_per_slot", "commit_tick", "opens", "rev"}, "user");
        UserSpec u;
        u.name = get<std::string>(ju, "name");
        if (ju.contains("role")) u.role = role_from(get<std::string>(ju, "role"));
        read_opt(ju, "commits_per_slot", u.commits_per_slot);
        read_opt(ju, "commit_tick", u.commit_tick);
        read_opt(ju, "opens", u.opens);
        if (ju.contains("rev")) {
            Digest d = digest_at(ju, "rev");
            RootEntropy rev;
            std::copy(d.begin(), d.end(), rev.rev.begin());
            u.rev = rev;
        }
        c.users.push_back(std::move(u));
    }

    c.byzantine.assign(c.params.n, false);
    if (j.contains("byzantine")) {
        for (const auto& jv : get<Json>(j, "byzantine")) {
            auto v = convert<std::uint32_t>(jv);
            if (v >= c.params.n) throw FormatError("byzantine validator id out of range");
            c.byzantine[v] = true;
        }
    }

    if (j.contains("strategy")) {
        try {
            c.strategy = parse_strategy(get<std::string>(j, "strategy"));
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    read_opt(j, "censor_targets", c.strategy.censor_targets);

    if (j.contains("payoff")) {
        const Json& jp = j.at("payoff");
        reject_unknown(jp, {"front_gain", "back_loss", "censor_bribe"}, "payoff");
        read_opt(jp, "front_gain", c.payoff.front_gain);
        read_opt(jp, "back_loss", c.payoff.back_loss);
        read_opt(jp, "censor_bribe", c.payoff.censor_bribe);
    }
    read_opt(j, "seed", c.seed);
    read_opt(j, "start_slot", c.start_slot);
    read_opt(j, "proof_latency", c.proof_latency);
    read_opt(j, "vote_delay", c.vote_delay);
    read_opt(j, "producer_head_start", c.producer_head_start);
    read_opt(j, "k_max", c.k_max);
    return c;
}

Json registry_to_json(const Registry& r) {
    Json records = Json::array();
    for (const auto& [id, rec] : r.records()) {
        Json quota = Json::object();
        for (const auto& [slot, count] : rec.per_slot_commit_count) {
            quota[std::to_string(slot.value)] = count;
        }
        Json slashes = Json::array();
        for (const auto& e : rec.slash_history) slashes.push_back(slash_to_json(e));
        records.push_back(Json{{"idcom", to_hex(id)},
                               {"verification_key", key_to_json(rec.verification_key)},
                               {"role", rec.role == IdentityRole::Producer ? "producer" : "user"},
                               {"bond", rec.bond},
                               {"active", rec.active},
                               {"quota", quota},
                               {"slashes", slashes}});
    }
    return Json{{"deposits", r.total_deposits()},
                {"locked", r.total_locked()},
                {"slashed", r.total_slashed()},
                {"records", records}};
}

Registry registry_from_json(const Json& j) {
    std::vector<IdentityRecord> records;
    for (const auto& jr : get<Json>(j, "records")) {
        IdentityRecord rec;
        rec.idcom = digest_at(jr, "idcom");
        rec.verification_key = key_from_json(get<Json>(jr, "verification_key"));
        if (compute_idcom(rec.verification_key) != rec.idcom) {
            throw FormatError("idcom does not match verification key");
        }
        std::string role = get<std::string>(jr, "role");
        if (role != "user" && role != "producer") throw FormatError("unknown identity role: " + role);
        rec.role = role == "producer" ? IdentityRole::Producer : IdentityRole::User;
        rec.bond = get<TokenAmount>(jr, "bond");
        rec.active = get<bool>(jr, "active");
        if (jr.contains("quota")) {
            for (const auto& [slot, count] : jr.at("quota").items()) {
                try {
                    rec.per_slot_commit_count[SlotNumber{std::stoull(slot)}] = convert<std::uint32_t>(count);
                } catch (const std::exception&) {
                    throw FormatError("bad quota entry: " + slot);
                }
            }
        }
        if (jr.contains("slashes")) {
            for (const auto& js : jr.at("slashes")) rec.slash_history.push_back(slash_from_json(js));
        }
        records.push_back(std::move(rec));
    }
    Registry r;
    r.restore(std::move(records), get<TokenAmount>(j, "deposits"));
    if (!r.conserves()) throw FormatError("registry does not conserve deposits");
    TokenAmount locked = r.total_locked(), slashed = r.total_slashed();
    read_opt(j, "locked", locked);
    read_opt(j, "slashed", slashed);
    if (locked != r.total_locked() || slashed != r.total_slashed()) {
        throw FormatError("registry totals disagree with records");
    }
    return r;
}

Json block_to_json(const Block& b) {
    Json proof = Json::array();
    for (const auto& d : b.bundle.vdf_proof) proof.push_back(to_hex(d));
    Json admissible = Json::array();
    for (const auto& cert : b.admissible.entries) admissible.push_back(to_hex(encode_certificate(cert)));
    Json opens = Json::array();
    for (const auto& oc : b.open_certs) opens.push_back(encode_open_hex(oc));
    Json ordered = Json::array();
    for (const auto& t : b.execution_list.ordered_txs) {
        ordered.push_back(Json{{"position", t.position},
                               {"entry", t.entry},
                               {"idcom", to_hex(t.idcom)},
                               {"tx", to_hex(t.tx)}});
    }
    Json skipped = Json::array();
    for (const auto& s : b.execution_list.skipped) {
        skipped.push_back(Json{{"position", s.position},
                               {"entry", s.entry},
                               {"idcom", to_hex(s.idcom)},
                               {"c", to_hex(s.c)}});
    }
    Json penalized = Json::array();
    for (const auto& p : b.penalized) {
        penalized.push_back(Json{{"idcom", to_hex(p.idcom)}, {"c", to_hex(p.c)}, {"slot", p.slot.value}});
    }
    return Json{{"slot", b.slot.value},
                {"prev_block_hash", to_hex(b.prev_block_hash)},
                {"producer_id", to_hex(b.producer_id)},
                {"bundle",
                 {{"set_root", to_hex(b.bundle.set_root)},
                  {"vdf_input", to_hex(b.bundle.vdf_input)},
                  {"seed", to_hex(b.bundle.seed)},
                  {"vdf_proof", proof},
                  {"permutation", b.bundle.permutation.mapping}}},
                {"admissible", admissible},
                {"open_certs", opens},
                {"execution_list", {{"ordered", ordered}, {"skipped", skipped}}},
                {"penalized", penalized}};
}

Block block_from_json(const Json& j) {
    Block b;
    b.slot = SlotNumber{get<std::uint64_t>(j, "slot")};
    b.prev_block_hash = digest_at(j, "prev_block_hash");
    b.producer_id = digest_at(j, "producer_id");

    const Json jb = get<Json>(j, "bundle");
    b.bundle.set_root = digest_at(jb, "set_root");
    b.bundle.vdf_input = digest_at(jb, "vdf_input");
    b.bundle.seed = digest_at(jb, "seed");
    for (const auto& h : get<std::vector<std::string>>(jb, "vdf_proof")) {
        b.bundle.vdf_proof.push_back(digest_from(h));
    }
    b.bundle.permutation.mapping = get<std::vector<std::uint32_t>>(jb, "permutation");

    b.admissible.slot = b.slot;
    for (const auto& h : get<std::vector<std::string>>(j, "admissible")) {
        b.admissible.entries.push_back(
            decode_hex<CommitCertificate>(h, [](ByteReader& r) { return decode_certificate(r); }));
    }
    for (const auto& h : get<std::vector<std::string>>(j, "open_certs")) {
        b.open_certs.push_back(
            decode_hex<OpenCertificate>(h, [](ByteReader& r) { return decode_open_certificate(r); }));
    }

    const Json je = get<Json>(j, "execution_list");
    b.execution_list.slot = b.slot;
    for (const auto& jt : get<Json>(je, "ordered")) {
        ExecutedTx t;
        t.position = get<std::uint32_t>(jt, "position");
        t.entry = get<std::uint32_t>(jt, "entry");
        t.idcom = digest_at(jt, "idcom");
        t.tx = bytes_from(get<std::string>(jt, "tx"));
        b.execution_list.ordered_txs.push_back(std::move(t));
    }
    for (const auto& js : get<Json>(je, "skipped")) {
        SkippedEntry s;
        s.position = get<std::uint32_t>(js, "position");
        s.entry = get<std::uint32_t>(js, "entry");
        s.idcom = digest_at(js, "idcom");
        s.c = digest_at(js, "c");
        b.execution_list.skipped.push_back(s);
    }
    for (const auto& jp : get<Json>(j, "penalized")) {
        b.penalized.push_back(
            CommitRef{digest_at(jp, "idcom"), digest_at(jp, "c"), SlotNumber{get<std::uint64_t>(jp, "slot")}});
    }
    return b;
}

Json verdict_to_json(const BlockVerdict& v) {
    Json violations = Json::array();
    for (auto x : v.violations) violations.push_back(std::string(to_string(x)));
    return Json{{"valid", v.valid}, {"violations", violations}};
}

Json evidence_to_json(const Evidence& e) {
    Json keys = Json::array();
    for (const auto& k : e.validators.keys) keys.push_back(key_to_json(k));
    Json proofs = Json::array();
    for (const auto& p : e.proofs) proofs.push_back(to_hex(encode_omission_proof(p)));
    return Json{{"params", params_to_json(e.params)},
                {"validators", keys},
                {"prev_block_hash", to_hex(e.prev_block_hash)},
                {"block", block_to_json(e.block)},
                {"proofs", proofs}};
}

Evidence evidence_from_json(const Json& j) {
    reject_unknown(j, {"params", "validators", "prev_block_hash", "block", "proofs"}, "evidence");
    Evidence e;
    e.params = params_from_json(get<Json>(j, "params"));
    for (const auto& jk : get<Json>(j, "validators")) e.validators.keys.push_back(key_from_json(jk));
    e.prev_block_hash = digest_at(j, "prev_block_hash");
    e.block = block_from_json(get<Json>(j, "block"));
    if (j.contains("proofs")) {
        for (const auto& h : get<std::vector<std::string>>(j, "proofs")) {
            Bytes raw = bytes_from(h);
            try {
                e.proofs.push_back(decode_omission_proof(raw));
            } catch (const ByteReader::DecodeError& err) {
                throw FormatError(std::string("cannot decode omission proof: ") + err.what());
            }
        }
    }
    return e;
}

Evidence evidence_from_outcome(const Setup& setup, const SlotOutcome& outcome, const Digest& prev) {
    return Evidence{setup.config.params, setup.validators, prev, outcome.block, outcome.proofs};
}

Json outcome_to_json(const SlotOutcome& o, bool with_block) {
    Json proofs = Json::array();
    for (const auto& p : o.proofs) {
        const Commitment& cm = p.commit_cert.commitment;
        proofs.push_back(Json{{"kind", std::string(to_string(p.kind))},
                              {"idcom", to_hex(cm.idcom)},
                              {"c", to_hex(cm.c)}});
    }
    Json slashes = Json::array();
    for (const auto& e : o.slashes) slashes.push_back(slash_to_json(e));
    Json payoffs = Json::array();
    for (const auto& p : o.payoffs) {
        payoffs.push_back(Json{{"actor", p.actor}, {"gross", p.gross}, {"slashed", p.slashed}, {"net", p.net}});
    }
    Json trace = Json::array();
    for (const auto& t : o.trace) trace.push_back(Json{{"tick", t.tick}, {"event", t.event}});
    Json out{{"slot", o.slot.value},
             {"strategy", to_string(o.strategy)},
             {"block_hash", to_hex(o.block_hash)},
             {"finalized", o.finalized},
             {"verdict", verdict_to_json(o.verdict)},
             {"accept_votes", o.accept_votes},
             {"reject_votes", o.reject_votes},
             {"admissible_count", o.block.admissible.size()},
             {"permutation", o.block.bundle.permutation.mapping},
             {"executed", o.block.execution_list.ordered_txs.size()},
             {"skipped", o.block.execution_list.skipped.size()},
             {"proofs", proofs},
             {"proofs_timely", o.proofs_timely},
             {"ex_post_producer_slash", o.ex_post_producer_slash},
             {"slashes", slashes},
             {"admitted_sybils", o.admitted_sybils},
             {"producer_gross", o.producer_gross},
             {"producer_net", o.producer_net},
             {"mev", o.mev},
             {"payoffs", payoffs},
             {"invariants",
              {{"quota_respected", o.invariants.quota_respected},
               {"honest_signers_per_certificate", o.invariants.honest_signers_per_certificate},
               {"conservation", o.invariants.conservation},
               {"partition", o.invariants.partition},
               {"one_slash_per_skipped", o.invariants.one_slash_per_skipped}}},
             {"trace", trace}};
    if (with_block) out["block"] = block_to_json(o.block);
    return out;
}

Json slot_report(const ScenarioConfig& c, const SlotOutcome& o, const Registry& registry, bool with_block) {
    Json report = outcome_to_json(o, with_block);
    report["scenario"] = c.name;
    report["seed"] = c.seed;
    report["registry"] = {{"deposits", registry.total_deposits()},
                          {"locked", registry.total_locked()},
                          {"slashed", registry.total_slashed()},
                          {"conserves", registry.conserves()}};
    return report;
}

Json metrics_to_json(const CampaignMetrics& m) {
    Json perms = Json::array();
    for (const auto& [mapping, count] : m.permutation_counts) {
        perms.push_back(Json{{"mapping", mapping}, {"count", count}});
    }
    return Json{{"slots", m.slots},
                {"finalized", m.finalized},
                {"rejected", m.rejected},
                {"permutation_counts", perms},
                {"tracked_actor", m.tracked_actor},
                {"tracked_positions", m.tracked_positions},
                {"deposits", m.deposits},
                {"locked", m.locked},
                {"slashed", m.slashed},
                {"conservation_every_slot", m.conservation_every_slot},
                {"invariant_failures", m.invariant_failures},
                {"producer_gross_total", m.producer_gross_total},
                {"producer_net_total", m.producer_net_total},
                {"mean_producer_net", m.mean_producer_net()},
                {"mev_total", m.mev_total}};
}

Json incentives_to_json(const IncentiveReport& r) {
    Json out{{"invalid_bound_holds", r.invalid_bound_holds},
             {"non_opening_bound_holds", r.non_opening_bound_holds},
             {"stuffing_bound_holds", r.stuffing_bound_holds},
             {"stuffing_checked_up_to", r.stuffing_checked_up_to},
             {"invalid_margin", r.invalid_margin},
             {"non_opening_margin", r.non_opening_margin},
             {"stuffing_min_margin", r.stuffing_min_margin},
             {"all_hold", r.all_hold()}};
    out["stuffing_failure_k"] = r.stuffing_failure_k ? Json(*r.stuffing_failure_k) : Json(nullptr);
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

}  // namespace mevace
