#pragma once

// Radix-2 decimation-in-time FFT over an abstract ring.
//
// A ring object owns a buffer of elements and one temporary register t:
//   size()                 number of elements in the buffer
//   root_order()           order of the ring's root omega (power of 2)
//   swap(i, j)             exchange elements i and j
//   mul_root(i, e)         t = v[i] * omega^e
//   sub_from(dst, src)     v[dst] = v[src] - t
//   add_to(i)              v[i] = v[i] + t

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bigmul/word.hpp"

namespace bigmul {

template <class R>
concept FftRing = requires(R& r, std::size_t i, std::size_t j, std::uint64_t e) {
  { r.size() } -> std::convertible_to<std::size_t>;
  { r.root_order() } -> std::convertible_to<std::uint64_t>;
  r.swap(i, j);
  r.mul_root(i, e);
  r.sub_from(i, j);
  r.add_to(i);
};

constexpr std::size_t bit_rev(std::size_t x, unsigned bits) {
  std::size_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

// Blocks at most this long are finished iteratively instead of recursively.
inline constexpr std::size_t kFftLoopLength = 32;

template <FftRing R>
void shuffle(R& ring, std::size_t pos, std::size_t len) {
  if (!is_pow2(len)) throw std::invalid_argument("shuffle length must be a power of 2");
  unsigned bits = log2_floor(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t j = bit_rev(i, bits);
    if (i < j) ring.swap(pos + i, pos + j);
  }
}

template <FftRing R>
void shuffle(R& ring) {
  shuffle(ring, 0, ring.size());
}

template <class T>
std::vector<T> shuffle(std::vector<T> v) {
  if (!is_pow2(v.size())) throw std::invalid_argument("shuffle length must be a power of 2");
  unsigned bits = log2_floor(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t j = bit_rev(i, bits);
    if (i < j) std::swap(v[i], v[j]);
  }
  return v;
}

namespace detail {

template <FftRing R>
void fft_loop(R& ring, std::size_t pos, std::size_t len, std::uint64_t step) {
  // step = root exponent increment for a block of length len
  for (std::size_t half = 1; half < len; half *= 2) {
    std::uint64_t st = step * (len / (2 * half));
    for (std::size_t blk = pos; blk < pos + len; blk += 2 * half) {
      std::uint64_t e = 0;
      for (std::size_t k = 0; k < half; ++k, e += st) {
        ring.mul_root(blk + half + k, e);
        ring.sub_from(blk + half + k, blk + k);
        ring.add_to(blk + k);
      }
    }
  }
}

template <FftRing R>
void fft_rec(R& ring, std::size_t pos, std::size_t len, std::uint64_t step) {
  if (len <= kFftLoopLength) {
    fft_loop(ring, pos, len, step);
    return;
  }
  std::size_t half = len / 2;
  fft_rec(ring, pos, half, step * 2);
  fft_rec(ring, pos + half, half, step * 2);
  std::uint64_t e = 0;
  for (std::size_t k = 0; k < half; ++k, e += step) {
    ring.mul_root(pos + half + k, e);  // t = w * a[pos+half+k]
    ring.sub_from(pos + half + k, pos + k);
    ring.add_to(pos + k);
  }
}

}  // namespace detail

// In-place DFT of v[pos..pos+len) which must already be shuffled; the root
// used is omega^(root_order/len).
template <FftRing R>
void fft_eval(R& ring, std::size_t pos, std::size_t len) {
  if (len <= 1) return;
  if (!is_pow2(len) || ring.root_order() % len != 0)
    throw std::invalid_argument("fft length must be a power of 2 dividing the root order");
  detail::fft_rec(ring, pos, len, ring.root_order() / len);
}

template <FftRing R>
void fft_eval(R& ring) {
  fft_eval(ring, 0, ring.size());
}

// Wrapper counting ring operations, for asserting the (3n/2) log n cost.
template <FftRing R>
class CountingRing {
 public:
  explicit CountingRing(R& inner) : r_(inner) {}
  std::size_t size() const { return r_.size(); }
  std::uint64_t root_order() const { return r_.root_order(); }
  void swap(std::size_t i, std::size_t j) {
    ++swaps;
    r_.swap(i, j);
  }
  void mul_root(std::size_t i, std::uint64_t e) {
    ++muls;
    r_.mul_root(i, e);
  }
  void sub_from(std::size_t d, std::size_t s) {
    ++subs;
    r_.sub_from(d, s);
  }
  void add_to(std::size_t i) {
    ++adds;
    r_.add_to(i);
  }
  std::uint64_t ops() const { return muls + subs + adds; }

  std::uint64_t swaps = 0, muls = 0, subs = 0, adds = 0;

 private:
  R& r_;
};

// Z/pZ for a word-sized p, with a caller-given root and its order. Plain
// 128-bit remainder arithmetic; used for tests and small toy transforms.
class SmallPrimeRing {
 public:
  SmallPrimeRing(std::vector<std::uint64_t>& v, std::uint64_t p, std::uint64_t omega,
                 std::uint64_t order)
      : v_(v), p_(p), omega_(omega), order_(order) {}
  std::size_t size() const { return v_.size(); }
  std::uint64_t root_order() const { return order_; }
  void swap(std::size_t i, std::size_t j) { std::swap(v_[i], v_[j]); }
  void mul_root(std::size_t i, std::uint64_t e) { t_ = mulmod(v_[i], powmod(omega_, e)); }
  void sub_from(std::size_t d, std::size_t s) { v_[d] = v_[s] >= t_ ? v_[s] - t_ : v_[s] + p_ - t_; }
  void add_to(std::size_t i) {
    unsigned __int128 x = static_cast<unsigned __int128>(v_[i]) + t_;
    v_[i] = static_cast<std::uint64_t>(x % p_);
  }

  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t powmod(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t r = 1 % p_;
    for (; e; e >>= 1, b = mulmod(b, b))
      if (e & 1) r = mulmod(r, b);
    return r;
  }

 private:
  std::vector<std::uint64_t>& v_;
  std::uint64_t p_, omega_, order_;
  std::uint64_t t_ = 0;
};

}  // namespace bigmul
