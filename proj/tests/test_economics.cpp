#include <gtest/gtest.h>

#include <random>

#include "mevace/economics.hpp"

using namespace mevace;

namespace {

// Brute force: hand out k commitments one at a time, opening a new identity
// whenever the current one has used its quota.
std::uint64_t identities_needed(std::uint64_t k, std::uint32_t l) {
    std::uint64_t ids = 0, used = l;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (used == l) {
            ++ids;
            used = 0;
        }
        ++used;
    }
    return ids;
}

// Charges of j sequential slashes against one bond, each floor(delta * bond).
std::uint64_t compounded(std::uint64_t j, Rational d, std::uint64_t bond) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < j; ++i) {
        std::uint64_t amt = static_cast<std::uint64_t>(static_cast<unsigned __int128>(bond) * d.num / d.den);
        bond -= amt;
        total += amt;
    }
    return total;
}

bool user_bounds_hold(std::uint64_t d, const ProtocolParams& p, const GainModel& g, std::uint64_t k_max) {
    for (std::uint64_t j = 1; j <= p.quota_l; ++j) {
        if (!(compounded(j, p.delta_user, d) > j * g.g_open)) return false;
    }
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        if (!(identities_needed(k, p.quota_l) * d > g.g_stuff(k))) return false;
    }
    return true;
}

std::uint64_t scan_d_stake(const ProtocolParams& p, const GainModel& g, std::uint64_t k_max) {
    for (std::uint64_t d = 1;; ++d) {
        if (user_bounds_hold(d, p, g, k_max)) return d;
    }
}

std::uint64_t scan_b_prod(const ProtocolParams& p, const GainModel& g) {
    for (std::uint64_t b = 1;; ++b) {
        if (b * p.delta_prod.num / p.delta_prod.den > g.g_invalid) return b;
    }
}

GainModel gains(TokenAmount invalid, TokenAmount open, TokenAmount stuff_per_k) {
    GainModel g;
    g.g_invalid = invalid;
    g.g_open = open;
    g.g_stuff = [stuff_per_k](std::uint64_t k) { return k * stuff_per_k; };
    return g;
}

}  // namespace

TEST(StuffingCost, Examples) {
    EXPECT_EQ(stuffing_cost(0, 3, 100), 0u);
    EXPECT_EQ(stuffing_cost(5, 2, 100), 300u);
    for (std::uint32_t l = 1; l <= 10; ++l) EXPECT_EQ(stuffing_cost(l, l, 77), 77u);
    EXPECT_THROW(stuffing_cost(1, 0, 1), std::invalid_argument);
}

TEST(StuffingCost, BruteForceIdentityCounting) {
    for (std::uint64_t k = 0; k <= 100; ++k) {
        for (std::uint32_t l = 1; l <= 10; ++l) {
            ASSERT_EQ(stuffing_cost(k, l, 100), identities_needed(k, l) * 100) << k << "," << l;
        }
    }
}

TEST(NonOpeningCost, Examples) {
    EXPECT_EQ(non_opening_cost(0, {1, 10}, 100), 0u);
    EXPECT_EQ(non_opening_cost(3, {1, 10}, 100), 30u);
    EXPECT_EQ(non_opening_cost(1, {1, 10}, 100), 10u);
    EXPECT_EQ(non_opening_cost(1, {1, 3}, 100), 33u);
}

TEST(NonOpeningCost, RealizedIsCompoundingAndBelowIdeal) {
    EXPECT_EQ(realized_non_opening_cost(3, {1, 10}, 100), 27u);
    EXPECT_EQ(realized_non_opening_cost(0, {1, 10}, 100), 0u);
    for (std::uint64_t u = 0; u < 20; ++u) {
        for (std::uint64_t d : {1ull, 9ull, 100ull, 12345ull}) {
            EXPECT_EQ(realized_non_opening_cost(u, {1, 10}, d), compounded(u, {1, 10}, d));
            EXPECT_LE(realized_non_opening_cost(u, {1, 10}, d), non_opening_cost(u, {1, 10}, d));
        }
    }
}

TEST(CheckIncentives, InvalidBoundIsStrict) {
    ProtocolParams p;
    auto r = check_incentives(p, gains(500, 0, 0), 4);  // floor(1/2 * 1000) == 500
    EXPECT_FALSE(r.invalid_bound_holds);
    EXPECT_EQ(r.invalid_margin, 0);
    EXPECT_TRUE(check_incentives(p, gains(499, 0, 0), 4).invalid_bound_holds);
}

TEST(CheckIncentives, ZeroGainsHold) {
    ProtocolParams p;
    auto r = check_incentives(p, gains(0, 0, 0), 16);
    EXPECT_TRUE(r.all_hold());
    EXPECT_EQ(r.stuffing_checked_up_to, 16u);
    EXPECT_FALSE(r.stuffing_failure_k);
}

TEST(CheckIncentives, StuffingEqualityFailsAtOne) {
    ProtocolParams p;
    p.quota_l = 1;
    auto r = check_incentives(p, gains(0, 0, p.d_stake), 10);
    EXPECT_FALSE(r.stuffing_bound_holds);
    EXPECT_EQ(r.stuffing_failure_k, 1u);
    EXPECT_EQ(r.stuffing_min_margin, 0);
}

TEST(CheckIncentives, NonOpeningUsesRealizedSlashes) {
    ProtocolParams p;
    p.quota_l = 3;
    p.d_stake = 100;
    // j=3: realized 27 > 3*9 = 27 fails, although the idealized 30 would pass
    auto r = check_incentives(p, gains(0, 9, 0), 1);
    EXPECT_FALSE(r.non_opening_bound_holds);
    p.d_stake = 110;  // 11 + 9 + 8 = 28 > 27, and j=1,2 also hold
    EXPECT_TRUE(check_incentives(p, gains(0, 9, 0), 1).non_opening_bound_holds);
}

TEST(CheckIncentives, KMaxZeroRejected) {
    EXPECT_THROW(check_incentives(ProtocolParams{}, gains(0, 0, 0), 0), std::invalid_argument);
}

TEST(MinimalParameters, OpenGainNineScan) {
    ProtocolParams p;
    p.delta_user = {1, 10};
    GainModel g = gains(0, 9, 0);
    auto s = minimal_parameters(g, p, 4);
    ASSERT_TRUE(s.feasible);
    EXPECT_EQ(s.params.d_stake, scan_d_stake(p, g, 4));
    EXPECT_EQ(s.params.d_stake, 100u);  // floor(d/10) > 9 first holds at d = 100
    EXPECT_TRUE(check_incentives(s.params, g, 4).all_hold());
    ProtocolParams below = s.params;
    below.d_stake -= 1;
    EXPECT_FALSE(check_incentives(below, g, 4).non_opening_bound_holds);
}

TEST(MinimalParameters, InvalidGainScan) {
    ProtocolParams p;
    p.delta_prod = {1, 2};
    GainModel g = gains(499, 0, 0);
    auto s = minimal_parameters(g, p, 4);
    ASSERT_TRUE(s.feasible);
    EXPECT_EQ(s.params.b_prod, scan_b_prod(p, g));
    EXPECT_EQ(s.params.b_prod, 1000u);
}

TEST(MinimalParameters, ZeroGainsSmallestUnit) {
    ProtocolParams p;
    p.delta_user = {1, 1};
    p.delta_prod = {1, 1};
    auto s = minimal_parameters(gains(0, 0, 0), p, 8);
    ASSERT_TRUE(s.feasible);
    EXPECT_EQ(s.params.d_stake, 1u);
    EXPECT_EQ(s.params.b_prod, 1u);
}

TEST(MinimalParameters, ZeroGainsFractionalSlashRounding) {
    // With delta < 1 the smallest bond whose slash is non-zero is ceil(1/delta).
    ProtocolParams p;
    auto s = minimal_parameters(gains(0, 0, 0), p, 8);
    ASSERT_TRUE(s.feasible);
    EXPECT_EQ(s.params.d_stake, scan_d_stake(p, gains(0, 0, 0), 8));
    EXPECT_EQ(s.params.d_stake, 10u);
    EXPECT_EQ(s.params.b_prod, 2u);
}

TEST(MinimalParameters, RandomAgainstLinearScan) {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 150; ++trial) {
        ProtocolParams p;
        p.quota_l = 1 + static_cast<std::uint32_t>(rng() % 4);
        p.delta_user = {1 + rng() % 5, 5 + rng() % 10};
        p.delta_prod = {1 + rng() % 3, 3 + rng() % 5};
        GainModel g = gains(rng() % 300, rng() % 30, rng() % 40);
        std::uint64_t k_max = 1 + rng() % 12;
        auto s = minimal_parameters(g, p, k_max);
        ASSERT_TRUE(s.feasible);
        EXPECT_EQ(s.params.d_stake, scan_d_stake(p, g, k_max)) << trial;
        EXPECT_EQ(s.params.b_prod, scan_b_prod(p, g)) << trial;
        EXPECT_TRUE(check_incentives(s.params, g, k_max).all_hold());
    }
}

TEST(MinimalParameters, InfeasibleReported) {
    ProtocolParams p;
    p.delta_user = {0, 1};
    auto s = minimal_parameters(gains(1, 1, 1), p, 4);
    EXPECT_FALSE(s.feasible);
    EXPECT_FALSE(s.reason.empty());
    EXPECT_FALSE(minimal_parameters(gains(1, 1, 1), ProtocolParams{}, 0).feasible);
}
