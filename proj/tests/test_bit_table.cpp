#include <gtest/gtest.h>

#include <map>
#include <random>

#include "corgi/bit_table.hpp"

using namespace corgi;

TEST(Bits, BasicOps) {
  std::vector<bits::Word> a(bits::words_for(130), 0), b(bits::words_for(130), 0);
  EXPECT_EQ(a.size(), 3u);
  bits::set(a, 0);
  bits::set(a, 64);
  bits::set(a, 129);
  EXPECT_TRUE(bits::test(a, 129));
  EXPECT_FALSE(bits::test(a, 128));
  EXPECT_EQ(bits::count(a), 3u);
  EXPECT_FALSE(bits::intersects(a, b));
  bits::set(b, 64);
  EXPECT_TRUE(bits::intersects(a, b));
  bits::and_into(a, b);
  EXPECT_EQ(bits::count(a), 1u);
  bits::reset(a, 64);
  EXPECT_FALSE(bits::any(a));
  bits::or_into(a, b);
  std::vector<std::size_t> seen;
  bits::for_each_set(a, [&](std::size_t i) { seen.push_back(i); });
  EXPECT_EQ(seen, std::vector<std::size_t>{64});
}

TEST(SlotIndex, ReusesFreedSlotsWithoutMovingOthers) {
  SlotIndex s;
  EXPECT_EQ(s.capacity(), 16u);
  for (FactId id = 1; id <= 5; ++id) EXPECT_EQ(s.acquire(id).slot, id - 1);
  s.release(3);
  EXPECT_EQ(s.slot_of(4), 3u);
  EXPECT_FALSE(s.slot_of(3));
  EXPECT_EQ(s.fact_at(2), SlotIndex::kEmpty);
  auto again = s.acquire(9);
  EXPECT_EQ(again.slot, 2u);
  EXPECT_FALSE(again.grew);
  EXPECT_EQ(s.high_water(), 5u);
  EXPECT_EQ(s.occupied_count(), 5u);
  EXPECT_FALSE(s.release(77));
}

TEST(SlotIndex, DoublesCapacity) {
  SlotIndex s;
  std::size_t grew = 0;
  for (FactId id = 1; id <= 70; ++id) grew += s.acquire(id).grew;
  EXPECT_EQ(grew, 3u);  // 16 -> 32 -> 64 -> 128
  EXPECT_EQ(s.capacity(), 128u);
  for (FactId id = 1; id <= 70; ++id) EXPECT_EQ(s.slot_of(id), id - 1);
  auto by_fact = s.slots_by_fact();
  EXPECT_EQ(by_fact.size(), 70u);
}

TEST(BitTable, GrowthPreservesBits) {
  BitTable t;
  t.grow_rows(16);
  t.grow_cols(16);
  t.set(3, 5, true);
  t.set(15, 15, true);
  t.grow_rows(64);
  t.grow_cols(32);
  EXPECT_TRUE(t.test(3, 5));
  EXPECT_TRUE(t.test(15, 15));
  EXPECT_FALSE(t.test(40, 20));
  t.set(63, 31, true);
  EXPECT_EQ(t.bits_allocated(), 64u * 32u);
  t.clear_row(3);
  EXPECT_FALSE(t.test(3, 5));
  t.clear_col(31);
  EXPECT_FALSE(t.test(63, 31));
  EXPECT_TRUE(t.test(15, 15));
}

TEST(BitTable, RandomAgainstMap) {
  std::mt19937_64 rng(3);
  BitTable t;
  std::size_t rows = 16, cols = 16;
  t.grow_rows(rows);
  t.grow_cols(cols);
  std::map<std::pair<std::size_t, std::size_t>, bool> ref;
  for (int step = 0; step < 5000; ++step) {
    int op = static_cast<int>(rng() % 10);
    if (op == 0 && rows < 512) t.grow_rows(rows *= 2);
    if (op == 1 && cols < 512) t.grow_cols(cols *= 2);
    std::size_t r = rng() % rows, c = rng() % cols;
    if (op == 2) {
      t.clear_row(r);
      for (auto& [k, v] : ref)
        if (k.first == r) v = false;
    } else if (op == 3) {
      t.clear_col(c);
      for (auto& [k, v] : ref)
        if (k.second == c) v = false;
    } else {
      bool v = rng() & 1;
      t.set(r, c, v);
      ref[{r, c}] = v;
    }
  }
  for (const auto& [k, v] : ref) ASSERT_EQ(t.test(k.first, k.second), v);
  for (std::size_t c = 0; c < cols; ++c) {
    auto col = t.column(c);
    for (std::size_t r = 0; r < rows; ++r) {
      auto it = ref.find({r, c});
      ASSERT_EQ(bits::test(col, r), it != ref.end() && it->second);
    }
  }
}
