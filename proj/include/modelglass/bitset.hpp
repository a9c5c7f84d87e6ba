#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace modelglass {

/// Dynamically sized bitset over [0, size). Bits beyond size are kept zero.
class Bitset {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t size, bool value = false);

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool value) noexcept { value ? set(i) : reset(i); }
  void set_all() noexcept;
  void reset_all() noexcept;

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  bool all() const noexcept { return count() == size_; }

  /// Index of the lowest set bit at or after `from`, or npos.
  std::size_t find_next(std::size_t from) const noexcept;
  std::size_t find_first() const noexcept { return find_next(0); }

  bool is_subset_of(const Bitset& other) const noexcept;
  bool intersects(const Bitset& other) const noexcept;

  Bitset& operator&=(const Bitset& other) noexcept;
  Bitset& operator|=(const Bitset& other) noexcept;
  Bitset& operator-=(const Bitset& other) noexcept;  // set difference
  Bitset operator~() const;

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  friend bool operator==(const Bitset&, const Bitset&) = default;
  friend bool operator<(const Bitset& a, const Bitset& b) noexcept {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return a.words_ < b.words_;
  }

  std::vector<std::size_t> elements() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  void trim() noexcept;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace modelglass
