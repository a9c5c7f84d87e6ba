#include "modelglass/bitset.hpp"

#include <algorithm>

namespace modelglass {

Bitset::Bitset(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  trim();
}

void Bitset::trim() noexcept {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

void Bitset::set_all() noexcept {
  std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
  trim();
}

void Bitset::reset_all() noexcept { std::fill(words_.begin(), words_.end(), 0); }

std::size_t Bitset::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool Bitset::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t Bitset::find_next(std::size_t from) const noexcept {
  if (from >= size_) return npos;
  std::size_t w = from >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (word != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
    if (++w == words_.size()) return npos;
    word = words_[w];
  }
}

bool Bitset::is_subset_of(const Bitset& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool Bitset::intersects(const Bitset& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

Bitset& Bitset::operator&=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Bitset& Bitset::operator-=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

Bitset Bitset::operator~() const {
  Bitset out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

std::vector<std::size_t> Bitset::elements() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

}  // namespace modelglass
