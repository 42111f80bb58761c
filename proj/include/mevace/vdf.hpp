#pragma once

// Verifiable delay function interface plus a desk-scale reference
// construction.
//
// HashChainVdf iterates SHA-256: y_0 = x, y_{k+1} = H(y_k), output y_T.
// The proof is the list of chain values at every checkpoint_interval steps
// (the last segment may be shorter), ending with y_T. Verification re-runs
// each segment independently. This gives determinism and soundness at desk
// scale; resistance to parallel speedup is assumed, not proven, and
// verification here is linear in T rather than logarithmic. A production
// construction (Wesolowski, Pietrzak) plugs in behind VerifiableDelayFunction.

#include <cstdint>
#include <vector>

#include "mevace/bytes.hpp"

namespace mevace {

struct VdfParams {
    std::uint64_t delay_T = 1;
    std::uint64_t checkpoint_interval = 1;

    /// checkpoint_interval = max(1, T / 16).
    static VdfParams with_default_interval(std::uint64_t delay_T);
    /// ceil(T / checkpoint_interval).
    std::size_t segment_count() const;
};

struct VdfOutput {
    Digest y;
    std::vector<Digest> proof;

    bool operator==(const VdfOutput&) const = default;
};

class VerifiableDelayFunction {
public:
    virtual ~VerifiableDelayFunction() = default;
    virtual VdfOutput eval(const Digest& x) const = 0;
    virtual bool verify(const Digest& x, const VdfOutput& out) const = 0;
};

class HashChainVdf final : public VerifiableDelayFunction {
public:
    /// Throws std::invalid_argument if delay_T or checkpoint_interval is 0.
    explicit HashChainVdf(VdfParams params);

    VdfOutput eval(const Digest& x) const override;
    bool verify(const Digest& x, const VdfOutput& out) const override;

    /// Checks one segment: `from` hashed `steps` times equals `to`.
    bool verify_segment(std::size_t index, const Digest& from, const Digest& to) const;
    std::uint64_t segment_steps(std::size_t index) const;

    const VdfParams& params() const { return params_; }

private:
    VdfParams params_;
};

VdfOutput vdf_eval(const VdfParams& params, const Digest& x);
bool vdf_verify(const VdfParams& params, const Digest& x, const VdfOutput& out);

}  // namespace mevace
