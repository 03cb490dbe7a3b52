#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>

namespace bigmul {

template <class W>
concept Word = std::same_as<W, std::uint8_t> || std::same_as<W, std::uint16_t> ||
               std::same_as<W, std::uint32_t> || std::same_as<W, std::uint64_t>;

template <Word W>
struct word_traits;
template <>
struct word_traits<std::uint8_t> {
  using dword = std::uint16_t;
};
template <>
struct word_traits<std::uint16_t> {
  using dword = std::uint32_t;
};
template <>
struct word_traits<std::uint32_t> {
  using dword = std::uint64_t;
};
template <>
struct word_traits<std::uint64_t> {
  using dword = unsigned __int128;
};

template <Word W>
using dword_t = typename word_traits<W>::dword;

template <Word W>
inline constexpr unsigned word_bits = sizeof(W) * 8;

template <Word W>
inline constexpr W word_max = static_cast<W>(~W{0});

// Low half of a*b. Small words promote to int, so route them through unsigned.
template <Word W>
constexpr W mul_lo(W a, W b) {
  if constexpr (sizeof(W) < sizeof(unsigned))
    return static_cast<W>(static_cast<unsigned>(a) * static_cast<unsigned>(b));
  else
    return static_cast<W>(a * b);
}

template <Word W>
struct MulAdd {
  W low;
  W carry;
};

// acc + x*y + carry_in == carry*W + low. Cannot overflow: (W-1)^2 + 2(W-1) = W^2-1.
template <Word W>
constexpr MulAdd<W> word_muladd(W acc, W x, W y, W carry_in) {
  using D = dword_t<W>;
  D t = static_cast<D>(static_cast<D>(x) * static_cast<D>(y)) + static_cast<D>(acc) +
        static_cast<D>(carry_in);
  return {static_cast<W>(t), static_cast<W>(t >> word_bits<W>)};
}

template <Word W>
constexpr unsigned count_leading_zeros(W x) {
  unsigned n = 0;
  for (W bit = W(W{1} << (word_bits<W> - 1)); bit != 0 && (x & bit) == 0; bit = W(bit >> 1))
    ++n;
  return n;
}

constexpr bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

constexpr unsigned log2_floor(std::uint64_t x) {
  unsigned r = 0;
  while (x >>= 1) ++r;
  return r;
}

constexpr unsigned log2_ceil(std::uint64_t x) {
  return x <= 1 ? 0 : log2_floor(x - 1) + 1;
}

constexpr std::uint64_t next_pow2(std::uint64_t x) {
  return x <= 1 ? 1 : std::uint64_t{1} << log2_ceil(x);
}

constexpr std::uint64_t round_up(std::uint64_t x, std::uint64_t step) {
  return (x + step - 1) / step * step;
}

constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace bigmul

#define BIGMUL_FOR_EACH_WORD(X) \
  X(std::uint8_t)               \
  X(std::uint16_t)              \
  X(std::uint32_t)              \
  X(std::uint64_t)
