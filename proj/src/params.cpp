#include "mevace/params.hpp"

#include <stdexcept>

namespace mevace {

TokenAmount floor_mul(const Rational& r, TokenAmount amount) {
    if (r.den == 0) throw std::invalid_argument("rational with zero denominator");
    unsigned __int128 prod = static_cast<unsigned __int128>(r.num) * amount;
    unsigned __int128 q = prod / r.den;
    if (q > UINT64_MAX) throw std::overflow_error("floor_mul overflow");
    return static_cast<TokenAmount>(q);
}

std::string to_string(const Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational{std::stoull(text), 1};
        Rational r{std::stoull(text.substr(0, slash)), std::stoull(text.substr(slash + 1))};
        if (r.den == 0) throw std::invalid_argument("zero denominator");
        return r;
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

std::vector<std::string> structural_errors(const ProtocolParams& p) {
    std::vector<std::string> errs;
    if (p.n != 3 * p.f + 1) errs.push_back("n must equal 3f+1");
    if (p.q_c < 2 * p.f + 1) errs.push_back("q_c must be at least 2f+1");
    if (p.q_o < 2 * p.f + 1) errs.push_back("q_o must be at least 2f+1");
    if (p.q_c > p.n) errs.push_back("q_c exceeds validator count");
    if (p.q_o > p.n) errs.push_back("q_o exceeds validator count");
    if (p.quota_l < 1) errs.push_back("quota_l must be at least 1");
    if (!p.delta_user.in_unit_interval()) errs.push_back("delta_user must lie in (0,1]");
    if (!p.delta_prod.in_unit_interval()) errs.push_back("delta_prod must lie in (0,1]");
    if (p.vdf_delay_T < 1) errs.push_back("vdf_delay_T must be at least 1");
    return errs;
}

}  // namespace mevace
