// mevace: command-line driver for the simulator and the verifiers.
//
// Exit status: 0 success or valid, 1 invalid artifact or failed bounds,
// 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mevace/serialize.hpp"

using namespace mevace;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    out << text;
}

ScenarioConfig load_config(const std::string& path, const std::optional<std::uint64_t>& seed,
                           const std::string& strategy) {
    ScenarioConfig c = config_from_json(read_json_file(path));
    if (seed) c.seed = *seed;
    if (!strategy.empty()) {
        try {
            auto targets = c.strategy.censor_targets;
            c.strategy = parse_strategy(strategy);
            c.strategy.censor_targets = targets;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return c;
}

void require_runnable(const ScenarioConfig& c) {
    auto errs = scenario_errors(c);
    if (!errs.empty()) throw UsageError("invalid scenario: " + errs.front());
}

int check_config(const std::string& path, const std::string& out) {
    ScenarioConfig c = load_config(path, std::nullopt, "");
    auto errs = scenario_errors(c);
    bool timing = validate_timing(c.params.budget, c.producer_head_start);
    Json report{{"scenario", c.name}, {"timing_valid", timing}, {"errors", errs}};
    bool ok = errs.empty();
    if (structural_errors(c.params).empty() && c.k_max > 0) {
        GainModel g = gain_model(c);
        IncentiveReport inc = check_incentives(c.params, g, c.k_max);
        report["gains"] = {{"g_invalid", g.g_invalid}, {"g_open", g.g_open}, {"g_stuff_kmax", g.g_stuff(c.k_max)}};
        report["incentives"] = incentives_to_json(inc);
        ok = ok && inc.all_hold();
    }
    report["status"] = ok ? "ok" : "failed";
    emit(report, out);
    return ok ? kOk : kInvalid;
}

int run_slot_cmd(const std::string& path, std::optional<std::uint64_t> seed, const std::string& strategy,
                 const std::string& out, const std::string& evidence_out, bool with_block) {
    ScenarioConfig c = load_config(path, seed, strategy);
    require_runnable(c);
    Setup setup = build_setup(c);
    Registry registry = setup.registry;
    Digest prev = slot_prev_hash(c.seed);
    SlotOutcome o = run_slot(setup, registry, SlotNumber{c.start_slot}, prev, c.seed);

    emit(slot_report(c, o, registry, with_block), out);
    if (!evidence_out.empty()) emit(evidence_to_json(evidence_from_outcome(setup, o, prev)), evidence_out);
    return kOk;
}

int run_campaign_cmd(const std::string& path, std::optional<std::uint64_t> seed,
                     const std::string& strategy, std::uint64_t slots, const std::string& out) {
    ScenarioConfig c = load_config(path, seed, strategy);
    require_runnable(c);
    CampaignMetrics m = run_campaign(c, slots);
    Json report = metrics_to_json(m);
    report["scenario"] = c.name;
    report["strategy"] = to_string(c.strategy);
    report["seed"] = c.seed;
    emit(report, out);
    return m.conservation_every_slot && m.invariant_failures == 0 ? kOk : kInvalid;
}

Evidence load_evidence(const std::string& path) {
    Evidence e = evidence_from_json(read_json_file(path));
    auto errs = structural_errors(e.params);
    if (!errs.empty()) throw FormatError("evidence params invalid: " + errs.front());
    if (e.validators.size() != e.params.n) throw FormatError("evidence must list n validator keys");
    return e;
}

int verify_block_cmd(const std::string& path, const std::string& out) {
    Evidence e = load_evidence(path);
    HashChainVdf vdf = make_vdf(e.params);
    BlockVerdict v = verify_block(e.block, e.prev_block_hash, e.params, e.validators, e.proofs, vdf);
    Json report = verdict_to_json(v);
    report["block_hash"] = to_hex(block_hash(e.block));
    report["report"] = v.valid ? "block valid" : "block invalid";
    emit(report, out);
    return v.valid ? kOk : kInvalid;
}

int verify_proof_cmd(const std::string& path, const std::string& out) {
    Evidence e = load_evidence(path);
    Json results = Json::array();
    bool all = !e.proofs.empty();
    for (const auto& p : e.proofs) {
        bool ok = verify_omission_proof(p, e.block, e.params, e.validators);
        all = all && ok;
        results.push_back({{"kind", std::string(to_string(p.kind))},
                           {"idcom", to_hex(p.commit_cert.commitment.idcom)},
                           {"valid", ok}});
    }
    Json report{{"proofs", results}, {"report", all ? "proof valid" : "proof invalid"}};
    emit(report, out);
    return all ? kOk : kInvalid;
}

int suggest_params_cmd(const std::string& path, const std::string& out) {
    ScenarioConfig c = load_config(path, std::nullopt, "");
    auto errs = structural_errors(c.params);
    if (!errs.empty()) throw UsageError("invalid params: " + errs.front());
    GainModel g = gain_model(c);
    ParameterSuggestion s = minimal_parameters(g, c.params, c.k_max);
    Json report{{"feasible", s.feasible},
                {"reason", s.reason},
                {"gains", {{"g_invalid", g.g_invalid}, {"g_open", g.g_open}, {"g_stuff_kmax", g.g_stuff(c.k_max)}}},
                {"k_max", c.k_max},
                {"d_stake", s.params.d_stake},
                {"b_prod", s.params.b_prod}};
    if (s.feasible) report["incentives"] = incentives_to_json(check_incentives(s.params, g, c.k_max));
    emit(report, out);
    return s.feasible ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Commit-reveal fair-ordering simulator and verifier"};
    app.require_subcommand(1, 1);

    std::string input, out, strategy, evidence_out;
    std::optional<std::uint64_t> seed;
    std::uint64_t slots = 100;
    bool with_block = false;

    auto* check = app.add_subcommand("check-config", "Validate timing and incentive bounds");
    auto* slot = app.add_subcommand("run-slot", "Simulate one slot");
    auto* campaign = app.add_subcommand("run-campaign", "Simulate many independent slots");
    auto* vblock = app.add_subcommand("verify-block", "Re-verify an exported block");
    auto* vproof = app.add_subcommand("verify-proof", "Verify omission proofs against their block");
    auto* suggest = app.add_subcommand("suggest-params", "Minimal bonds for a scenario's gains");

    for (auto* sub : {check, slot, campaign, vblock, vproof, suggest}) {
        sub->add_option("input", input, "Scenario or evidence JSON")->required();
        sub->add_option("-o,--out", out, "Write the report here instead of stdout");
    }
    for (auto* sub : {slot, campaign}) {
        sub->add_option("--seed", seed, "Override the scenario seed");
        sub->add_option("--strategy", strategy, "Override the producer strategy");
    }
    slot->add_option("--evidence", evidence_out, "Also write verifier evidence JSON");
    slot->add_flag("--with-block", with_block, "Embed the full block in the report");
    campaign->add_option("-n,--slots", slots, "Number of slots")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*check) return check_config(input, out);
        if (*slot) return run_slot_cmd(input, seed, strategy, out, evidence_out, with_block);
        if (*campaign) return run_campaign_cmd(input, seed, strategy, slots, out);
        if (*vblock) return verify_block_cmd(input, out);
        if (*vproof) return verify_proof_cmd(input, out);
        if (*suggest) return suggest_params_cmd(input, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
