#include <gtest/gtest.h>

#include <map>
#include <random>

#include "mevace/ordering.hpp"
#include "support.hpp"

using namespace mevace;
using mevace::test::golden;
using mevace::test::label;
using mevace::test::split;
using mevace::test::World;

namespace {

// Second, straight-line reading of the shuffle: 128-bit arithmetic for the
// rejection limit and byte-at-a-time word extraction.
std::vector<std::uint32_t> reference_shuffle(const Digest& seed, std::size_t m) {
    std::vector<std::uint32_t> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = static_cast<std::uint32_t>(i);
    std::uint64_t block_index = 0;
    std::vector<std::uint8_t> pool;
    auto next_word = [&]() {
        if (pool.empty()) {
            std::vector<std::uint8_t> in(seed.begin(), seed.end());
            for (int s = 56; s >= 0; s -= 8) in.push_back(static_cast<std::uint8_t>(block_index >> s));
            ++block_index;
            Digest d = hash(in);
            pool.assign(d.begin(), d.end());
        }
        unsigned __int128 w = 0;
        for (int b = 0; b < 8; ++b) w = w * 256 + pool[b];
        pool.erase(pool.begin(), pool.begin() + 8);
        return w;
    };
    const unsigned __int128 two64 = static_cast<unsigned __int128>(1) << 64;
    for (std::size_t i = m - (m > 0 ? 1 : 0); i >= 1 && m > 1; --i) {
        unsigned __int128 bound = i + 1;
        unsigned __int128 limit = (two64 / bound) * bound;
        unsigned __int128 w;
        do {
            w = next_word();
        } while (w >= limit);
        std::size_t j = static_cast<std::size_t>(w % bound);
        std::swap(a[i], a[j]);
    }
    return a;
}

Digest random_digest(std::mt19937_64& rng) {
    Digest d;
    for (auto& b : d) b = static_cast<std::uint8_t>(rng());
    return d;
}

double chi_square(const std::map<std::vector<std::uint32_t>, std::uint64_t>& counts, std::size_t cells,
                  std::uint64_t total) {
    double expected = static_cast<double>(total) / static_cast<double>(cells);
    double chi = 0;
    std::size_t seen = 0;
    for (const auto& [_, c] : counts) {
        double d = static_cast<double>(c) - expected;
        chi += d * d / expected;
        ++seen;
    }
    chi += static_cast<double>(cells - seen) * expected;  // empty cells
    return chi;
}

struct Fixture {
    World w;
    std::vector<CommitCertificate> certs;

    explicit Fixture(std::size_t n, SlotNumber slot = SlotNumber{3}) : w(ProtocolParams{}) {
        for (std::size_t i = 0; i < n; ++i) {
            auto u = w.user("u" + std::to_string(i));
            certs.push_back(w.certify(w.commit(u, "tx" + std::to_string(i), slot).first));
        }
    }
};

}  // namespace

TEST(Canonicalize, Empty) {
    auto set = canonicalize({}, SlotNumber{1});
    ASSERT_TRUE(set);
    EXPECT_EQ(set->size(), 0u);
    EXPECT_TRUE(is_canonical(*set));
}

TEST(Canonicalize, OrderIndependent) {
    Fixture f(2);
    auto a = canonicalize({f.certs[0], f.certs[1]}, SlotNumber{3});
    auto b = canonicalize({f.certs[1], f.certs[0]}, SlotNumber{3});
    EXPECT_EQ(*a, *b);
    EXPECT_EQ(admissible_root(*a), admissible_root(*b));
}

TEST(Canonicalize, MatchesNaiveSortOracle) {
    Fixture f(10);
    std::mt19937_64 rng(7);
    auto shuffled = f.certs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto set = canonicalize(shuffled, SlotNumber{3});
    ASSERT_TRUE(set);

    // naive oracle: selection sort on hex strings of idcom || c
    auto key = [](const CommitCertificate& c) { return to_hex(c.commitment.idcom) + to_hex(c.commitment.c); };
    auto oracle = f.certs;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < oracle.size(); ++j) {
            if (key(oracle[j]) < key(oracle[best])) best = j;
        }
        std::swap(oracle[i], oracle[best]);
    }
    ASSERT_EQ(set->entries.size(), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_EQ(key(set->entries[i]), key(oracle[i]));
    EXPECT_TRUE(is_canonical(*set));
}

TEST(Canonicalize, DuplicatesCollapsed) {
    Fixture f(3);
    auto set = canonicalize({f.certs[0], f.certs[1], f.certs[0], f.certs[2], f.certs[1]}, SlotNumber{3});
    EXPECT_EQ(set->size(), 3u);
}

TEST(Canonicalize, ReceiptOrderNormalized) {
    Fixture f(1);
    auto cert = f.certs[0];
    std::reverse(cert.receipts.begin(), cert.receipts.end());
    auto set = canonicalize({cert}, SlotNumber{3});
    EXPECT_EQ(set->entries[0], f.certs[0]);
}

TEST(Canonicalize, WrongSlotRejected) {
    Fixture f(1);
    auto set = canonicalize(f.certs, SlotNumber{4});
    ASSERT_FALSE(set);
    EXPECT_EQ(set.error(), OrderingError::WrongSlot);
}

TEST(Canonicalize, FindByKey) {
    Fixture f(6);
    auto set = canonicalize(f.certs, SlotNumber{3}).value();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& cm = set.entries[i].commitment;
        EXPECT_EQ(set.find(cm.idcom, cm.c), i);
    }
    EXPECT_FALSE(set.find(label("x"), label("y")));
}

TEST(AdmissibleRoot, MerkleOverCertificateEncodings) {
    Fixture f(3);
    auto set = canonicalize(f.certs, SlotNumber{3}).value();
    std::vector<Bytes> leaves;
    for (const auto& c : set.entries) leaves.push_back(encode_certificate(c));
    EXPECT_EQ(admissible_root(set), merkle_root(leaves));
}

TEST(DeriveVdfInput, AllZero) {
    EXPECT_EQ(derive_vdf_input(Digest{}, Digest{}, SlotNumber{0}), hash(Bytes(72, 0)));
}

TEST(DeriveVdfInput, FieldSensitivity) {
    Digest base = derive_vdf_input(label("p"), label("r"), SlotNumber{5});
    EXPECT_NE(base, derive_vdf_input(label("p"), label("r"), SlotNumber{6}));
    EXPECT_NE(base, derive_vdf_input(label("p"), label("r2"), SlotNumber{5}));
    EXPECT_NE(base, derive_vdf_input(label("p2"), label("r"), SlotNumber{5}));
}

TEST(DerivePermutation, DegenerateSizes) {
    EXPECT_TRUE(derive_permutation(label("s"), 0).mapping.empty());
    EXPECT_EQ(derive_permutation(label("s"), 1).mapping, std::vector<std::uint32_t>{0});
}

TEST(DerivePermutation, FixedSeedM8MatchesReference) {
    Digest seed = label("fixed-seed");
    EXPECT_EQ(derive_permutation(seed, 8).mapping, reference_shuffle(seed, 8));
}

TEST(DerivePermutation, GoldenVectors) {
    auto rows = golden("permutation");
    ASSERT_GE(rows.size(), 10u);
    for (const auto& r : rows) {
        Digest seed = digest_from_hex(r[1]);
        std::size_t m = std::stoul(r[2]);
        std::vector<std::uint32_t> expect;
        for (const auto& x : split(r[3], ',')) expect.push_back(static_cast<std::uint32_t>(std::stoul(x)));
        EXPECT_EQ(derive_permutation(seed, m).mapping, expect) << "m=" << m;
    }
}

TEST(DerivePermutation, RandomPairsMatchReference) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        Digest seed = random_digest(rng);
        std::size_t m = rng() % 65;
        auto p = derive_permutation(seed, m);
        EXPECT_TRUE(p.is_bijection());
        EXPECT_EQ(p.mapping, reference_shuffle(seed, m)) << "m=" << m;
    }
}

TEST(DerivePermutation, UniformOverFourElements) {
    // 24 cells, df = 23; chi-square critical value at alpha = 0.001 is 49.728.
    std::mt19937_64 rng(99);
    std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
    const std::uint64_t N = 10000;
    for (std::uint64_t i = 0; i < N; ++i) ++counts[derive_permutation(random_digest(rng), 4).mapping];
    EXPECT_EQ(counts.size(), 24u);
    EXPECT_LT(chi_square(counts, 24, N), 49.728);
}

TEST(DerivePermutation, UniformOverThreeElements) {
    // 6 cells, df = 5; critical value at alpha = 0.001 is 20.515.
    std::mt19937_64 rng(5);
    std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
    const std::uint64_t N = 6000;
    for (std::uint64_t i = 0; i < N; ++i) ++counts[derive_permutation(random_digest(rng), 3).mapping];
    EXPECT_LT(chi_square(counts, 6, N), 20.515);
}

TEST(DerivePermutation, BijectionForManySizes) {
    for (std::size_t m = 0; m < 200; ++m) EXPECT_TRUE(derive_permutation(label("s" + std::to_string(m)), m).is_bijection());
}

TEST(Permutation, IsBijection) {
    EXPECT_TRUE((Permutation{{2, 0, 1}}).is_bijection());
    EXPECT_FALSE((Permutation{{0, 0, 1}}).is_bijection());
    EXPECT_FALSE((Permutation{{0, 3, 1}}).is_bijection());
}

class OrderingBundleTest : public ::testing::Test {
protected:
    Fixture f{5};
    HashChainVdf vdf{VdfParams{64, 4}};
    Digest prev = label("prev");
    AdmissibleSet set = canonicalize(f.certs, SlotNumber{3}).value();
};

TEST_F(OrderingBundleTest, EmptySet) {
    AdmissibleSet empty{SlotNumber{3}, {}};
    OrderingBundle b = produce_ordering(empty, prev, vdf);
    EXPECT_EQ(b.set_root, hash(Bytes{0x00}));
    EXPECT_TRUE(b.permutation.mapping.empty());
    EXPECT_EQ(verify_ordering(b, empty, prev, vdf), OrderingCheck::Ok);
}

TEST_F(OrderingBundleTest, DeterministicAndConsistent) {
    OrderingBundle a = produce_ordering(set, prev, vdf);
    OrderingBundle b = produce_ordering(set, prev, vdf);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.set_root, admissible_root(set));
    EXPECT_EQ(a.vdf_input, derive_vdf_input(prev, a.set_root, SlotNumber{3}));
    EXPECT_EQ(a.seed, vdf.eval(a.vdf_input).y);
    EXPECT_EQ(a.permutation, derive_permutation(a.seed, 5));
    EXPECT_EQ(verify_ordering(a, set, prev, vdf), OrderingCheck::Ok);
}

TEST_F(OrderingBundleTest, FakeSeedRejectedByVdf) {
    OrderingBundle b = produce_ordering(set, prev, vdf);
    b.seed = label("fake");
    b.permutation = derive_permutation(b.seed, set.size());
    EXPECT_EQ(verify_ordering(b, set, prev, vdf), OrderingCheck::VdfRejected);
}

TEST_F(OrderingBundleTest, SwappedPermutationRejected) {
    OrderingBundle b = produce_ordering(set, prev, vdf);
    std::swap(b.permutation.mapping[0], b.permutation.mapping[1]);
    EXPECT_EQ(verify_ordering(b, set, prev, vdf), OrderingCheck::PermutationMismatch);
}

TEST_F(OrderingBundleTest, RootAndInputMismatch) {
    OrderingBundle b = produce_ordering(set, prev, vdf);
    AdmissibleSet smaller = set;
    smaller.entries.pop_back();
    EXPECT_EQ(verify_ordering(b, smaller, prev, vdf), OrderingCheck::RootMismatch);
    EXPECT_EQ(verify_ordering(b, set, label("other-prev"), vdf), OrderingCheck::InputMismatch);
}

TEST_F(OrderingBundleTest, DifferentPrevGivesDifferentSeed) {
    EXPECT_NE(produce_ordering(set, prev, vdf).seed, produce_ordering(set, label("p2"), vdf).seed);
}
