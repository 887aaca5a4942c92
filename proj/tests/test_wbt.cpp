#include <gtest/gtest.h>

#include <random>
#include <set>

#include "kerrata/oracle.hpp"
#include "kerrata/wbt.hpp"

using namespace kerr;
using Tree = WeightBalancedTree;

namespace {

std::set<std::uint32_t> leaves_of(const Tree& t, Tree::NodeIdx n) {
    std::set<std::uint32_t> out;
    for (std::uint32_t i = t.node(n).lo; i < t.node(n).hi; ++i) out.insert(i);
    return out;
}

void check_against_oracle(const std::vector<std::uint64_t>& w) {
    const Tree t = Tree::build(w);
    const auto brute = oracle::brute_wbt(w);
    ASSERT_EQ(t.node_count(), brute.size());
    for (std::uint32_t i = 0; i < brute.size(); ++i) {
        const auto& a = t.node(i);
        EXPECT_EQ(a.lo, brute[i].lo);
        EXPECT_EQ(a.hi, brute[i].hi);
        EXPECT_EQ(a.left, brute[i].left);
        EXPECT_EQ(a.mid, brute[i].mid);
        EXPECT_EQ(a.right, brute[i].right);
        std::uint64_t sum = 0;
        for (std::uint32_t j = a.lo; j < a.hi; ++j) sum += w[j];
        EXPECT_EQ(a.weight, sum);
        // internal children at most half the parent weight
        for (auto c : {a.left, a.right}) {
            if (c != Tree::kNone && !t.is_leaf(c)) EXPECT_LE(2 * t.node(c).weight, a.weight);
        }
    }
}

void check_covers(const Tree& t) {
    const auto h = static_cast<std::uint32_t>(t.leaf_count());
    unsigned height = 0;
    for (std::uint32_t leaf = 0; leaf < h; ++leaf) {
        unsigned d = 0;
        Tree::NodeIdx n = t.root();
        while (n != t.leaf_node(leaf)) {
            const auto& x = t.node(n);
            n = leaf < t.node(x.mid).lo ? x.left : leaf == t.node(x.mid).lo ? x.mid : x.right;
            ++d;
        }
        height = std::max(height, d);
    }
    for (std::uint32_t target = 0; target <= h; ++target) {
        std::set<std::uint32_t> got;
        const auto cover = t.left_cover(target);
        for (auto n : cover) {
            for (auto l : leaves_of(t, n)) EXPECT_TRUE(got.insert(l).second) << "overlap at leaf " << l;
        }
        std::set<std::uint32_t> expect;
        for (std::uint32_t i = 0; i < target; ++i) expect.insert(i);
        EXPECT_EQ(got, expect);
        EXPECT_LE(cover.size(), 2 * height + 1);
    }
    for (std::uint32_t ex = 0; ex < h; ++ex) {
        std::set<std::uint32_t> got;
        for (auto n : t.off_path_cover(ex)) {
            for (auto l : leaves_of(t, n)) EXPECT_TRUE(got.insert(l).second);
        }
        std::set<std::uint32_t> expect;
        for (std::uint32_t i = 0; i < h; ++i) {
            if (i != ex) expect.insert(i);
        }
        EXPECT_EQ(got, expect);
    }
}

}  // namespace

TEST(Wbt, SingleLeaf) {
    const std::vector<std::uint64_t> w{1};
    const Tree t = Tree::build(w);
    EXPECT_EQ(t.node_count(), 1u);
    EXPECT_TRUE(t.is_leaf(t.root()));
    EXPECT_TRUE(t.off_path_cover(0).empty());
}

TEST(Wbt, FourUnitLeavesSplitAtThird) {
    const std::vector<std::uint64_t> w{1, 1, 1, 1};
    const Tree t = Tree::build(w);
    const auto& root = t.node(t.root());
    EXPECT_EQ(t.node(root.mid).lo, 2u);
    EXPECT_EQ(t.node(root.left).lo, 0u);
    EXPECT_EQ(t.node(root.left).hi, 2u);
    EXPECT_EQ(t.node(root.right).lo, 3u);
    EXPECT_EQ(t.node(root.right).hi, 4u);
    // leftmost leaf of the right subtree
    const auto cover = t.left_cover(3);
    ASSERT_EQ(cover.size(), 2u);
    EXPECT_EQ(cover[0], root.left);
    EXPECT_EQ(cover[1], root.mid);
    EXPECT_TRUE(t.left_cover(0).empty());
}

TEST(Wbt, ThreeLeavesExcludeMiddle) {
    const std::vector<std::uint64_t> w{1, 1, 1};
    const Tree t = Tree::build(w);
    const auto& root = t.node(t.root());
    ASSERT_EQ(t.node(root.mid).lo, 1u);
    const auto cover = t.off_path_cover(1);
    ASSERT_EQ(cover.size(), 2u);
    EXPECT_EQ(cover[0], root.left);
    EXPECT_EQ(cover[1], root.right);
}

TEST(Wbt, Errors) {
    try {
        (void)Tree::build({});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
    }
    const std::vector<std::uint64_t> w{1, 0};
    try {
        (void)Tree::build(w);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidWeight);
    }
}

TEST(Wbt, RandomAgainstRecursiveDefinition) {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 2000; ++round) {
        const std::size_t h = 1 + rng() % 64;
        std::vector<std::uint64_t> w(h);
        const unsigned spread = round % 3 == 0 ? 1 : round % 3 == 1 ? 5 : 1000;
        for (auto& x : w) x = 1 + rng() % spread;
        check_against_oracle(w);
        check_covers(Tree::build(w));
    }
}
