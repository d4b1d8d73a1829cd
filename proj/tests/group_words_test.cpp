#include "rwre/group_words.hpp"

#include <deque>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "rwre/random.hpp"

namespace {

using rwre::Letter;
using rwre::Presentation;
using rwre::Word;

Word random_word(const Presentation& p, rwre::SplitMix64& rng, std::size_t length)
{
    Word w;
    while (w.length() < length) {
        const Letter s(static_cast<std::uint8_t>(rwre::uniform_index(rng, p.degree())));
        if (w.is_root() || s != p.inverse(w.leading())) {
            w.push_leading(s);
        }
    }
    return w;
}

TEST(Presentation, Validation)
{
    EXPECT_THROW(Presentation(0, 2), rwre::InvalidParameter);   // d = 2
    EXPECT_THROW(Presentation(1, 0), rwre::InvalidParameter);   // one factor
    EXPECT_THROW(Presentation(-1, 4), rwre::InvalidParameter);
    EXPECT_THROW(Presentation(0, 256), rwre::InvalidParameter);
    EXPECT_THROW(Presentation(128, 0), rwre::InvalidParameter);
    EXPECT_NO_THROW(Presentation(0, 255));
    EXPECT_NO_THROW(Presentation(1, 1));
    EXPECT_EQ(Presentation(2, 3).degree(), 7);
}

TEST(Presentation, LetterEncoding)
{
    const Presentation p(2, 2);
    EXPECT_EQ(p.a(1).code, 0);
    EXPECT_EQ(p.a_inv(1).code, 1);
    EXPECT_EQ(p.a(2).code, 2);
    EXPECT_EQ(p.a_inv(2).code, 3);
    EXPECT_EQ(p.b(1).code, 4);
    EXPECT_EQ(p.b(2).code, 5);
    EXPECT_EQ(p.name(p.a_inv(2)), "a2^-1");
    EXPECT_EQ(p.name(p.b(1)), "b1");
    EXPECT_THROW(p.b(3), rwre::InvalidLetter);
    EXPECT_THROW(p.letter(6), rwre::InvalidLetter);
}

TEST(Presentation, GeneratorsClosedUnderInversion)
{
    for (auto [k, r] : {std::pair{0, 3}, {1, 1}, {2, 0}, {3, 4}}) {
        const Presentation p(k, r);
        const auto gens = p.generators();
        ASSERT_EQ(gens.size(), static_cast<std::size_t>(p.degree()));
        const std::set<Letter> set(gens.begin(), gens.end());
        for (Letter s : gens) {
            EXPECT_TRUE(set.contains(p.inverse(s)));
            EXPECT_EQ(p.inverse(p.inverse(s)), s);
        }
    }
    const Presentation p(1, 2);
    EXPECT_EQ(p.inverse(p.b(2)), p.b(2));
    EXPECT_EQ(p.inverse(p.a(1)), p.a_inv(1));
}

TEST(ApplyLetter, Examples)
{
    const Presentation p(1, 1);
    const Word a1 = p.apply(Word(), p.a(1));
    EXPECT_EQ(p.to_string(a1), "a1");
    EXPECT_TRUE(p.apply(a1, p.a_inv(1)).is_root());
    const Word b1 = p.apply(Word(), p.b(1));
    EXPECT_TRUE(p.apply(b1, p.b(1)).is_root());
    EXPECT_THROW(p.apply(Word(), Letter(3)), rwre::InvalidLetter);
}

TEST(Neighbors, RootIsGeneratorSet)
{
    const Presentation p(0, 3);
    const auto nb = p.neighbors(Word());
    ASSERT_EQ(nb.size(), 3u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
        EXPECT_EQ(nb[i].second.length(), 1u);
        EXPECT_EQ(nb[i].second.leading(), p.b(static_cast<int>(i) + 1));
    }
}

TEST(Neighbors, OfA1InFreeGroup)
{
    const Presentation p(2, 0);
    const Word a1 = p.apply(Word(), p.a(1));
    int at_root = 0, at_two = 0;
    for (const auto& [s, w] : p.neighbors(a1)) {
        if (w.is_root()) {
            EXPECT_EQ(s, p.a_inv(1));
            ++at_root;
        } else {
            EXPECT_EQ(w.length(), 2u);
            ++at_two;
        }
    }
    EXPECT_EQ(at_root, 1);
    EXPECT_EQ(at_two, 3);
}

TEST(Neighbors, RandomWordsHaveDegreeNeighborsOneParent)
{
    const Presentation p(1, 2);
    rwre::SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Word w = random_word(p, rng, 1 + rwre::uniform_index(rng, 20));
        const auto nb = p.neighbors(w);
        ASSERT_EQ(nb.size(), 4u);
        int shorter = 0;
        for (const auto& [s, v] : nb) {
            ASSERT_TRUE(p.is_reduced(v));
            shorter += v.length() + 1 == w.length() ? 1 : 0;
            if (v.length() != w.length() - 1) {
                ASSERT_EQ(v.length(), w.length() + 1);
            }
        }
        EXPECT_EQ(shorter, 1);
    }
}

TEST(Parent, Examples)
{
    const Presentation p(0, 3);
    const Word w = p.make_word(std::vector{p.b(2), p.b(1)});
    EXPECT_EQ(p.to_string(w), "b2 b1");
    const auto [s, up] = p.parent(w);
    EXPECT_EQ(s, p.b(2));
    EXPECT_EQ(p.to_string(up), "b1");

    const Presentation q(1, 1);
    const auto [t, root] = q.parent(q.apply(Word(), q.a(1)));
    EXPECT_EQ(t, q.a_inv(1));
    EXPECT_TRUE(root.is_root());
    EXPECT_THROW(q.parent(Word()), rwre::NoParent);
}

TEST(Parent, InvertsOutwardSteps)
{
    const Presentation p(2, 1);
    rwre::SplitMix64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const Word w = random_word(p, rng, rwre::uniform_index(rng, 15));
        const Letter s(static_cast<std::uint8_t>(rwre::uniform_index(rng, p.degree())));
        const Word sw = p.apply(w, s);
        if (sw.length() == w.length() + 1) {
            const auto [back, up] = p.parent(sw);
            EXPECT_EQ(back, p.inverse(s));
            EXPECT_EQ(up, w);
            EXPECT_EQ(p.apply(sw, back), up);
        }
    }
}

TEST(Properties, ConfluenceAndDistanceLaw)
{
    for (auto [k, r] : {std::pair{0, 3}, {2, 0}, {1, 3}}) {
        const Presentation p(k, r);
        rwre::SplitMix64 rng(static_cast<std::uint64_t>(k * 10 + r));
        for (int i = 0; i < 3000; ++i) {
            const Word w = random_word(p, rng, rwre::uniform_index(rng, 12));
            const Letter s(static_cast<std::uint8_t>(rwre::uniform_index(rng, p.degree())));
            const Word sw = p.apply(w, s);
            ASSERT_EQ(p.apply(sw, p.inverse(s)), w);
            const bool cancels = !w.is_root() && w.leading() == p.inverse(s);
            ASSERT_EQ(sw.length(), cancels ? w.length() - 1 : w.length() + 1);
        }
    }
}

// Cancelling adjacent inverse pairs in random order must reach the same reduced
// word as applying the letters one at a time.
TEST(Properties, RandomOrderReductionIsConfluent)
{
    for (auto [k, r] : {std::pair{0, 3}, {1, 1}, {2, 1}}) {
        const Presentation p(k, r);
        rwre::SplitMix64 rng(static_cast<std::uint64_t>(100 + k * 10 + r));
        for (int i = 0; i < 2000; ++i) {
            const auto m = rwre::uniform_index(rng, 30);
            std::vector<Letter> applied;
            Word w;
            for (std::uint64_t j = 0; j < m; ++j) {
                applied.emplace_back(static_cast<std::uint8_t>(rwre::uniform_index(rng, p.degree())));
                w = p.apply(w, applied.back());
            }
            std::vector<Letter> raw(applied.rbegin(), applied.rend());
            for (;;) {
                std::vector<std::size_t> pairs;
                for (std::size_t j = 0; j + 1 < raw.size(); ++j) {
                    if (raw[j + 1] == p.inverse(raw[j])) pairs.push_back(j);
                }
                if (pairs.empty()) break;
                const std::size_t at = pairs[rwre::uniform_index(rng, pairs.size())];
                raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(at),
                          raw.begin() + static_cast<std::ptrdiff_t>(at) + 2);
            }
            ASSERT_EQ(Word::from_leading_first(raw), w);
        }
    }
}

// Brute-force oracle: breadth-first search from e, counting each sphere and
// checking that no vertex is reached twice.
TEST(SphereSize, MatchesBreadthFirstEnumeration)
{
    for (auto [k, r] : {std::pair{0, 3}, {1, 1}, {2, 0}, {1, 2}, {0, 4}, {2, 1}, {1, 3}, {0, 5}}) {
        const Presentation p(k, r);
        std::set<Word> seen{Word()};
        std::vector<Word> frontier{Word()};
        EXPECT_EQ(p.sphere_size(0), 1u);
        for (std::uint64_t n = 1; n <= 6; ++n) {
            std::vector<Word> next;
            for (const Word& w : frontier) {
                for (const auto& [s, v] : p.neighbors(w)) {
                    if (v.length() == n) {
                        ASSERT_TRUE(seen.insert(v).second) << "cycle at " << p.to_string(v);
                        next.push_back(v);
                    }
                }
            }
            EXPECT_EQ(next.size(), p.sphere_size(n)) << "d=" << p.degree() << " n=" << n;
            frontier = std::move(next);
        }
    }
}

TEST(SphereSize, Values)
{
    EXPECT_EQ(Presentation(0, 3).sphere_size(0), 1u);
    EXPECT_EQ(Presentation(0, 3).sphere_size(4), 24u);
    EXPECT_EQ(Presentation(2, 0).sphere_size(2), 12u);
    EXPECT_EQ(Presentation(0, 3).sphere_size(63), 3ULL << 62);
    EXPECT_THROW(Presentation(0, 3).sphere_size(64), rwre::Overflow);
    EXPECT_THROW(Presentation(0, 5).sphere_size(40), rwre::Overflow);
}

TEST(Serialize, RootIsSingleZeroByte)
{
    EXPECT_EQ(rwre::serialize(Word()), std::vector<std::uint8_t>{0x00});
}

TEST(Serialize, LeadingLetterFirst)
{
    const Presentation p(1, 1);
    const Word w = p.make_word(std::vector{p.b(1), p.a(1)});   // b1 a1
    EXPECT_EQ(rwre::serialize(w), (std::vector<std::uint8_t>{0x02, 0x02, 0x00}));
}

TEST(Serialize, LongWordsUseVarintLength)
{
    const Presentation p(0, 3);
    rwre::SplitMix64 rng(1);
    const Word w = random_word(p, rng, 300);
    const auto bytes = rwre::serialize(w);
    ASSERT_EQ(bytes.size(), 302u);
    EXPECT_EQ(bytes[0], 0xAC);   // 300 = 0b10_0101100
    EXPECT_EQ(bytes[1], 0x02);
    EXPECT_EQ(rwre::deserialize(p, bytes), w);
}

TEST(Serialize, RoundTripRandomWords)
{
    const Presentation p(2, 3);
    rwre::SplitMix64 rng(77);
    for (int i = 0; i < 1000; ++i) {
        const Word w = random_word(p, rng, rwre::uniform_index(rng, 200));
        ASSERT_EQ(rwre::deserialize(p, rwre::serialize(w)), w);
    }
}

TEST(Serialize, InjectiveOnBallOfRadiusSix)
{
    const Presentation p(0, 3);
    std::set<std::vector<std::uint8_t>> images;
    std::vector<Word> frontier{Word()};
    std::size_t total = 0;
    for (int n = 0; n <= 6; ++n) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            ASSERT_TRUE(images.insert(rwre::serialize(w)).second);
            ++total;
            for (const auto& [s, v] : p.neighbors(w)) {
                if (v.length() == w.length() + 1) {
                    next.push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }
    EXPECT_EQ(total, p.ball_size(6));
}

TEST(Deserialize, RejectsBadInput)
{
    const Presentation p(1, 1);
    EXPECT_THROW(rwre::deserialize(p, std::vector<std::uint8_t>{}), rwre::InvalidParameter);
    EXPECT_THROW(rwre::deserialize(p, std::vector<std::uint8_t>{0x02, 0x00}), rwre::InvalidParameter);
    EXPECT_THROW(rwre::deserialize(p, std::vector<std::uint8_t>{0x01, 0x03}), rwre::InvalidLetter);
    // a1 a1^-1 is not reduced
    EXPECT_THROW(rwre::deserialize(p, std::vector<std::uint8_t>{0x02, 0x00, 0x01}),
                 rwre::InvalidParameter);
}

} // namespace
