#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "hornopt/neighbors.hpp"
#include "support.hpp"

namespace hornopt {
namespace {

std::vector<VarIndex> iota(std::size_t n) {
  std::vector<VarIndex> v(n);
  std::iota(v.begin(), v.end(), VarIndex{0});
  return v;
}

std::size_t changed_positions(const std::vector<VarIndex>& a, const std::vector<VarIndex>& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

TEST(Rng, Reproducible) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  Rng c(43);
  EXPECT_NE(Rng(42)(), c());
}

// Reference outputs of xoshiro256** seeded through splitmix64 from 0.
TEST(Rng, KnownSequence) {
  std::uint64_t x = 0;
  EXPECT_EQ(splitmix64(x), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(x), 0x6e789e6aa1b965f4ULL);
}

TEST(Rng, BelowAndUniformRanges) {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(r.below(7), 7U);
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  EXPECT_EQ(r.below(1), 0U);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(7, 0), derive_seed(7, 1));
  EXPECT_NE(derive_seed(7, 0), derive_seed(8, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Tokens, RoundTrip) {
  for (auto k : kAllNeighborhoods) EXPECT_EQ(parse_kind(to_token(k)), k);
  EXPECT_THROW(parse_kind("4swap"), InvalidArgument);
}

TEST(Groups, Partition) {
  EXPECT_EQ(group_of(NeighborhoodKind::Swap1), NeighborhoodGroup::SmallChange);
  EXPECT_EQ(group_of(NeighborhoodKind::Swap2), NeighborhoodGroup::SmallChange);
  EXPECT_EQ(group_of(NeighborhoodKind::Swap3), NeighborhoodGroup::SmallChange);
  EXPECT_EQ(group_of(NeighborhoodKind::Shift1), NeighborhoodGroup::SmallChange);
  EXPECT_EQ(group_of(NeighborhoodKind::Mirror), NeighborhoodGroup::LargeChange);
  EXPECT_EQ(group_of(NeighborhoodKind::ManyShift), NeighborhoodGroup::LargeChange);
  EXPECT_EQ(group_of(NeighborhoodKind::MirrorShift), NeighborhoodGroup::LargeChange);
}

TEST(Moves, FigureExamples) {
  std::vector<char> v{'x', 'y', 'z', 'w'};
  std::swap(v[0], v[2]);
  EXPECT_EQ(v, (std::vector<char>{'z', 'y', 'x', 'w'}));
  v = {'x', 'y', 'z', 'w'};
  detail::move_element(v, 0, 1);
  EXPECT_EQ(v, (std::vector<char>{'y', 'x', 'z', 'w'}));
  v = {'x', 'y', 'z', 'w'};
  std::reverse(v.begin(), v.begin() + 3);
  EXPECT_EQ(v, (std::vector<char>{'z', 'y', 'x', 'w'}));
}

TEST(Moves, MoveElementBothDirections) {
  std::vector<int> v{0, 1, 2, 3, 4};
  detail::move_element(v, 3, 1);
  EXPECT_EQ(v, (std::vector<int>{0, 3, 1, 2, 4}));
  detail::move_element(v, 1, 4);
  EXPECT_EQ(v, (std::vector<int>{0, 1, 2, 4, 3}));
}

TEST(Propose, RejectsTinySchemes) {
  Rng r(0);
  EXPECT_THROW(propose(Scheme::identity(1), NeighborhoodKind::Swap1, r), InvalidArgument);
}

TEST(Propose, PermutationPreservedAndChanged) {
  for (std::size_t n : {2U, 5U, 24U, 107U}) {
    for (auto kind : kAllNeighborhoods) {
      Rng rng(n * 31 + static_cast<std::size_t>(kind));
      std::vector<VarIndex> v = iota(n);
      for (int i = 0; i < 10000; ++i) {
        const std::vector<VarIndex> before = v;
        propose_in_place(v, kind, rng);
        std::vector<VarIndex> sorted = v;
        std::sort(sorted.begin(), sorted.end());
        ASSERT_EQ(sorted, iota(n)) << to_token(kind);
        if (kind == NeighborhoodKind::Swap1) ASSERT_EQ(changed_positions(before, v), 2U);
        if (kind == NeighborhoodKind::Shift1 || kind == NeighborhoodKind::ManyShift ||
            kind == NeighborhoodKind::Mirror) {
          ASSERT_NE(before, v) << to_token(kind);
        }
      }
    }
  }
}

TEST(Propose, MirrorReversesContiguousRange) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<VarIndex> before = iota(12);
    std::vector<VarIndex> v = before;
    detail::mirror_step(v, rng);
    std::size_t lo = 0;
    while (lo < v.size() && v[lo] == before[lo]) ++lo;
    std::size_t hi = v.size();
    while (hi > lo && v[hi - 1] == before[hi - 1]) --hi;
    ASSERT_GE(hi - lo, 2U);
    ASSERT_TRUE(std::equal(v.begin() + lo, v.begin() + hi, before.rbegin() + (before.size() - hi)));
  }
}

TEST(Propose, ManyShiftMovesOneBlock) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    std::vector<VarIndex> v = iota(10);
    detail::many_shift_step(v, rng);
    // A block move leaves at most three ascending runs.
    std::size_t descents = 0;
    for (std::size_t j = 1; j < v.size(); ++j) descents += v[j] < v[j - 1] ? 1 : 0;
    ASSERT_GE(descents, 1U);
    ASSERT_LE(descents, 2U);
  }
}

TEST(Propose, Deterministic) {
  for (auto kind : kAllNeighborhoods) {
    Rng a(9);
    Rng b(9);
    Scheme s = Scheme::identity(13);
    Scheme t = s;
    for (int i = 0; i < 100; ++i) {
      s = propose(s, kind, a);
      t = propose(t, kind, b);
      ASSERT_EQ(s, t);
    }
  }
}

TEST(Propose, Swap1Uniform) {
  Rng rng(11);
  std::map<std::pair<std::size_t, std::size_t>, int> freq;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    std::vector<VarIndex> v = iota(5);
    detail::swap_step(v, rng);
    std::vector<std::size_t> pos;
    for (std::size_t j = 0; j < 5; ++j) {
      if (v[j] != j) pos.push_back(j);
    }
    ++freq[{pos[0], pos[1]}];
  }
  ASSERT_EQ(freq.size(), 10U);
  for (const auto& [pair, count] : freq) EXPECT_NEAR(count / static_cast<double>(trials), 0.1, 0.01);
}

TEST(Propose, MirrorShiftMixesEvenly) {
  // A mirror of a block of length >= 3 is not a block move of the identity
  // unless the block has length 2, so count proposals with two descents or
  // a reversed run of length >= 3 as mirrors.
  Rng rng(12);
  int mirrors = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    Rng probe = rng;
    const bool mirror = probe.below(2) == 0;
    std::vector<VarIndex> v = iota(8);
    propose_in_place(v, NeighborhoodKind::MirrorShift, rng);
    mirrors += mirror ? 1 : 0;
  }
  EXPECT_NEAR(mirrors / static_cast<double>(trials), 0.5, 0.02);
}

TEST(SwapNeighbors, CountsAndInvolution) {
  EXPECT_EQ(swap_neighbors(Scheme::identity(2)).size(), 1U);
  EXPECT_EQ(swap_neighbors(Scheme::identity(4)).size(), 6U);
  const Scheme s({3, 1, 0, 2});
  const auto ns = swap_neighbors(s);
  EXPECT_EQ(ns.front(), Scheme({1, 3, 0, 2}));
  for (const auto& t : ns) {
    const auto back = swap_neighbors(t);
    EXPECT_NE(std::find(back.begin(), back.end(), s), back.end());
  }
}

}  // namespace
}  // namespace hornopt
