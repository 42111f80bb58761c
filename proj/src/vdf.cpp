#include "mevace/vdf.hpp"

#include <algorithm>
#include <stdexcept>

#include "mevace/codec.hpp"

namespace mevace {

VdfParams VdfParams::with_default_interval(std::uint64_t delay_T) {
    return VdfParams{delay_T, std::max<std::uint64_t>(1, delay_T / 16)};
}

std::size_t VdfParams::segment_count() const {
    return static_cast<std::size_t>((delay_T + checkpoint_interval - 1) / checkpoint_interval);
}

HashChainVdf::HashChainVdf(VdfParams params) : params_(params) {
    if (params_.delay_T == 0) throw std::invalid_argument("VDF delay must be at least 1");
    if (params_.checkpoint_interval == 0) {
        throw std::invalid_argument("VDF checkpoint interval must be at least 1");
    }
}

std::uint64_t HashChainVdf::segment_steps(std::size_t index) const {
    std::uint64_t start = index * params_.checkpoint_interval;
    return std::min(params_.checkpoint_interval, params_.delay_T - start);
}

VdfOutput HashChainVdf::eval(const Digest& x) const {
    VdfOutput out;
    out.proof.reserve(params_.segment_count());
    Digest cur = x;
    for (std::uint64_t step = 1; step <= params_.delay_T; ++step) {
        cur = hash(cur.view());
        if (step % params_.checkpoint_interval == 0 || step == params_.delay_T) {
            out.proof.push_back(cur);
        }
    }
    out.y = cur;
    return out;
}

bool HashChainVdf::verify_segment(std::size_t index, const Digest& from, const Digest& to) const {
    Digest cur = from;
    for (std::uint64_t i = 0, n = segment_steps(index); i < n; ++i) cur = hash(cur.view());
    return cur == to;
}

bool HashChainVdf::verify(const Digest& x, const VdfOutput& out) const {
    const std::size_t segments = params_.segment_count();
    if (out.proof.size() != segments) return false;
    if (out.proof.back() != out.y) return false;
    // Segments are independent given the checkpoints and could be checked in parallel.
    for (std::size_t i = 0; i < segments; ++i) {
        const Digest& from = i == 0 ? x : out.proof[i - 1];
        if (!verify_segment(i, from, out.proof[i])) return false;
    }
    return true;
}

VdfOutput vdf_eval(const VdfParams& params, const Digest& x) { return HashChainVdf(params).eval(x); }

bool vdf_verify(const VdfParams& params, const Digest& x, const VdfOutput& out) {
    return HashChainVdf(params).verify(x, out);
}

}  // namespace mevace
