#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mevace/accountability.hpp"
#include "mevace/commit_phase.hpp"
#include "mevace/identity.hpp"
#include "mevace/open_phase.hpp"
#include "mevace/ordering.hpp"

#ifndef MEVACE_TEST_DATA_DIR
#error "MEVACE_TEST_DATA_DIR must be defined"
#endif

namespace mevace::test {

inline Digest label(const std::string& s) { return hash(to_bytes("test/" + s)); }

inline std::vector<std::vector<std::string>> golden(const std::string& kind) {
    std::ifstream in(std::string(MEVACE_TEST_DATA_DIR) + "/golden_vectors.txt");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::vector<std::string> fields;
        for (std::string f; ss >> f;) fields.push_back(f);
        if (!fields.empty() && fields[0] == kind) rows.push_back(fields);
    }
    return rows;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s == "-") return out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

/// n validators, a registry and helpers for building certified artifacts.
struct World {
    ProtocolParams params;
    SchemeId scheme;
    std::vector<ValidatorKey> vkeys;
    ValidatorSet validators;
    Registry registry;
    std::uint64_t nonce_counter = 0;

    explicit World(ProtocolParams p = {}, SchemeId s = SchemeId::MockDeterministic)
        : params(p), scheme(s) {
        for (ValidatorId v = 0; v < params.n; ++v) {
            KeyPair kp = keypair_from_seed(scheme, label("validator" + std::to_string(v)));
            vkeys.push_back(ValidatorKey{v, kp.signing_key});
            validators.keys.push_back(kp.verification_key);
        }
    }

    struct User {
        AuthKeyPair keys;
        Digest idcom;
    };

    User user(const std::string& name, bool registered = true, TokenAmount bond = 0) {
        RootEntropy rev;
        Digest d = label("rev/" + name);
        std::copy(d.begin(), d.end(), rev.rev.begin());
        User u{derive_auth_keypair(rev, kAuthContext, scheme), {}};
        u.idcom = compute_idcom(u.keys.verification_key);
        if (registered) {
            registry
                .register_identity(u.keys.verification_key, bond == 0 ? params.d_stake : bond, params)
                .value();
        }
        return u;
    }

    Nonce nonce() {
        return hash(ByteWriter{}.raw(label("nonce")).u64be(nonce_counter++).bytes());
    }

    std::pair<Commitment, OpeningSecret> commit(const User& u, const std::string& tx, SlotNumber slot) {
        return make_commitment(u.keys.signing_key, u.idcom, to_bytes(tx), slot, [this] { return nonce(); });
    }

    /// Receipts signed directly by the first `count` validators.
    std::vector<CommitReceipt> commit_receipts(const Commitment& cm, std::uint32_t count) {
        Bytes msg = encode_message(commit_message(cm.idcom, cm.c, cm.slot));
        std::vector<CommitReceipt> out;
        for (std::uint32_t v = 0; v < count; ++v) out.push_back({v, sign(vkeys[v].signing_key, msg)});
        return out;
    }

    std::vector<OpenReceipt> open_receipts(const OpeningSecret& s, const Digest& c, std::uint32_t count) {
        Bytes msg = encode_message(open_message(s.idcom, c, s.slot));
        std::vector<OpenReceipt> out;
        for (std::uint32_t v = 0; v < count; ++v) out.push_back({v, sign(vkeys[v].signing_key, msg)});
        return out;
    }

    CommitCertificate certify(const Commitment& cm) {
        return aggregate_commit_certificate(cm, commit_receipts(cm, params.q_c), params, validators).value();
    }

    OpenCertificate certify_open(const OpeningSecret& s) {
        Digest c = commitment_hash(s.tx, s.r, s.idcom, s.slot);
        return aggregate_open_certificate(s, open_receipts(s, c, params.q_o), params, validators).value();
    }
};

}  // namespace mevace::test
