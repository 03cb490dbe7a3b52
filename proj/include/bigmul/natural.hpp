#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bigmul/mpn.hpp"
#include "bigmul/word.hpp"

namespace bigmul {

// Nonnegative integer, little-endian words. Leading zero words are allowed.
template <Word W>
class Natural {
 public:
  using word_type = W;

  Natural() = default;
  explicit Natural(std::vector<W> limbs) : limbs_(std::move(limbs)) {}
  Natural(std::initializer_list<W> limbs) : limbs_(limbs) {}

  static Natural from_uint(std::uint64_t v);
  static Natural from_hex(std::string_view hex);
  static Natural power_of_two(std::size_t bits);
  std::string to_hex() const;

  std::size_t size() const { return limbs_.size(); }
  bool empty() const { return limbs_.empty(); }
  W* data() { return limbs_.data(); }
  const W* data() const { return limbs_.data(); }
  std::span<const W> span() const { return limbs_; }
  std::vector<W>& limbs() { return limbs_; }
  const std::vector<W>& limbs() const { return limbs_; }
  W operator[](std::size_t i) const { return i < limbs_.size() ? limbs_[i] : W{0}; }

  void resize(std::size_t n) { limbs_.resize(n, W{0}); }
  Natural& normalize();
  bool is_zero() const { return mpn::is_zero(limbs_.data(), limbs_.size()); }
  std::size_t significant_words() const { return mpn::normalized_size(limbs_.data(), limbs_.size()); }
  std::size_t bit_length() const;
  bool bit(std::size_t i) const;
  std::uint64_t low_u64() const;

  friend bool operator==(const Natural& a, const Natural& b) {
    return mpn::cmp(a.data(), a.size(), b.data(), b.size()) == 0;
  }

 private:
  std::vector<W> limbs_;
};

template <Word W>
struct SubAbs {
  Natural<W> value;
  bool negative;
};

template <Word W>
Natural<W> nat_add(const Natural<W>& a, const Natural<W>& b);
template <Word W>
SubAbs<W> nat_sub_abs(const Natural<W>& a, const Natural<W>& b);
template <Word W>
std::strong_ordering nat_cmp(const Natural<W>& a, const Natural<W>& b);
template <Word W>
Natural<W> nat_shl(const Natural<W>& a, std::size_t bits);
template <Word W>
Natural<W> nat_shr(const Natural<W>& a, std::size_t bits);
// Low `bits` bits of a.
template <Word W>
Natural<W> nat_low_bits(const Natural<W>& a, std::size_t bits);

template <Word W>
void nat_divmod(const Natural<W>& a, const Natural<W>& d, Natural<W>* q, Natural<W>* r);
template <Word W>
Natural<W> nat_mod(const Natural<W>& a, const Natural<W>& d);

// Uniform random value of exactly `words` words (top word may be zero).
template <Word W>
Natural<W> random_natural(std::mt19937_64& rng, std::size_t words) {
  Natural<W> r;
  r.resize(words);
  for (std::size_t i = 0; i < words; ++i) r.data()[i] = static_cast<W>(rng());
  return r;
}

// All bits set: W^words - 1.
template <Word W>
Natural<W> all_ones(std::size_t words) {
  return Natural<W>(std::vector<W>(words, word_max<W>));
}

}  // namespace bigmul
