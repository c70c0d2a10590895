#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "corgi/facts.hpp"

namespace corgi {

namespace bits {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }

inline bool test(std::span<const Word> w, std::size_t i) {
  return (w[i / kWordBits] >> (i % kWordBits)) & 1U;
}
inline void set(std::span<Word> w, std::size_t i) { w[i / kWordBits] |= Word{1} << (i % kWordBits); }
inline void reset(std::span<Word> w, std::size_t i) {
  w[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

inline bool any(std::span<const Word> w) {
  return std::any_of(w.begin(), w.end(), [](Word x) { return x != 0; });
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

/// a &= b over the common prefix; words of `a` beyond `b` are cleared.
inline void and_into(std::span<Word> a, std::span<const Word> b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) a[i] &= b[i];
  for (std::size_t i = n; i < a.size(); ++i) a[i] = 0;
}

inline void or_into(std::span<Word> a, std::span<const Word> b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) a[i] |= b[i];
}

inline std::size_t count(std::span<const Word> w) {
  std::size_t n = 0;
  for (Word x : w) n += static_cast<std::size_t>(std::popcount(x));
  return n;
}

template <typename F>
void for_each_set(std::span<const Word> w, F&& f) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word x = w[i];
    while (x) {
      std::size_t b = static_cast<std::size_t>(std::countr_zero(x));
      f(i * kWordBits + b);
      x &= x - 1;
    }
  }
}

}  // namespace bits

/// Maps facts to dense slot numbers for one dimension of one or more bit
/// tables. Freed slots are recycled before new ones are handed out, and
/// capacity only ever doubles, so a live fact never changes slot.
class SlotIndex {
 public:
  static constexpr std::size_t kInitialCapacity = 16;
  static constexpr FactId kEmpty = 0;

  struct Acquired {
    std::size_t slot;
    bool grew;
  };

  Acquired acquire(FactId id) {
    assert(id != kEmpty && !slot_of_.contains(id));
    std::size_t slot;
    bool grew = false;
    if (!free_.empty()) {
      slot = free_.back();
      free_.pop_back();
    } else {
      slot = fact_at_.size();
      if (slot == capacity_) {
        capacity_ *= 2;
        grew = true;
      }
      fact_at_.push_back(kEmpty);
      occupied_.resize(bits::words_for(capacity_), 0);
    }
    fact_at_[slot] = id;
    slot_of_.emplace(id, slot);
    bits::set(occupied_, slot);
    return {slot, grew};
  }

  /// Frees the fact's slot; returns it, or nothing if the fact had none.
  std::optional<std::size_t> release(FactId id) {
    auto it = slot_of_.find(id);
    if (it == slot_of_.end()) return std::nullopt;
    std::size_t slot = it->second;
    slot_of_.erase(it);
    fact_at_[slot] = kEmpty;
    bits::reset(occupied_, slot);
    free_.push_back(slot);
    return slot;
  }

  std::optional<std::size_t> slot_of(FactId id) const {
    auto it = slot_of_.find(id);
    if (it == slot_of_.end()) return std::nullopt;
    return it->second;
  }

  FactId fact_at(std::size_t slot) const { return slot < fact_at_.size() ? fact_at_[slot] : kEmpty; }

  std::size_t capacity() const { return capacity_; }
  /// Slots ever handed out (occupied plus free-for-reuse).
  std::size_t high_water() const { return fact_at_.size(); }
  std::size_t occupied_count() const { return slot_of_.size(); }
  std::span<const bits::Word> occupied() const { return occupied_; }

  /// Occupied slots ordered by ascending FactId.
  std::vector<std::size_t> slots_by_fact() const {
    std::vector<std::size_t> out;
    out.reserve(slot_of_.size());
    bits::for_each_set(occupied_, [&](std::size_t s) { out.push_back(s); });
    std::sort(out.begin(), out.end(),
              [&](std::size_t a, std::size_t b) { return fact_at_[a] < fact_at_[b]; });
    return out;
  }

  std::size_t memory_bytes() const {
    return fact_at_.capacity() * sizeof(FactId) + free_.capacity() * sizeof(std::size_t) +
           occupied_.capacity() * sizeof(bits::Word) +
           slot_of_.size() * (sizeof(FactId) + sizeof(std::size_t) + 2 * sizeof(void*));
  }

 private:
  std::size_t capacity_ = kInitialCapacity;
  std::vector<FactId> fact_at_;
  std::vector<std::size_t> free_;
  std::unordered_map<FactId, std::size_t> slot_of_;
  std::vector<bits::Word> occupied_ = std::vector<bits::Word>(bits::words_for(kInitialCapacity));
};

/// Truth table of one binary relation, stored column-major so that a column
/// (all row partners of one column fact) is a contiguous bitset.
class BitTable {
 public:
  BitTable(std::size_t row_capacity = SlotIndex::kInitialCapacity,
           std::size_t col_capacity = SlotIndex::kInitialCapacity)
      : rows_(row_capacity),
        cols_(col_capacity),
        words_per_col_(bits::words_for(row_capacity)),
        data_(words_per_col_ * col_capacity, 0) {}

  std::size_t row_capacity() const { return rows_; }
  std::size_t col_capacity() const { return cols_; }
  std::size_t bits_allocated() const { return rows_ * cols_; }

  void grow_rows(std::size_t capacity) {
    if (capacity <= rows_) return;
    std::size_t wpc = bits::words_for(capacity);
    if (wpc != words_per_col_) {
      std::vector<bits::Word> next(wpc * cols_, 0);
      for (std::size_t c = 0; c < cols_; ++c)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(c * words_per_col_), words_per_col_,
                    next.begin() + static_cast<std::ptrdiff_t>(c * wpc));
      data_ = std::move(next);
      words_per_col_ = wpc;
    }
    rows_ = capacity;
  }

  void grow_cols(std::size_t capacity) {
    if (capacity <= cols_) return;
    data_.resize(words_per_col_ * capacity, 0);
    cols_ = capacity;
  }

  bool test(std::size_t r, std::size_t c) const { return bits::test(column(c), r); }

  void set(std::size_t r, std::size_t c, bool value) {
    if (value)
      bits::set(column(c), r);
    else
      bits::reset(column(c), r);
  }

  std::span<const bits::Word> column(std::size_t c) const {
    return {data_.data() + c * words_per_col_, words_per_col_};
  }
  std::span<bits::Word> column(std::size_t c) {
    return {data_.data() + c * words_per_col_, words_per_col_};
  }

  void clear_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) bits::reset(column(c), r);
  }

  void clear_col(std::size_t c) {
    auto col = column(c);
    std::fill(col.begin(), col.end(), 0);
  }

  std::size_t memory_bytes() const { return data_.capacity() * sizeof(bits::Word); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_per_col_;
  std::vector<bits::Word> data_;
};

}  // namespace corgi
