#pragma once

// Arithmetic in Z/(2^K+1)Z with K = L*w. An element occupies L+1 words: L low
// words and a top word. Normalized elements have value in [0, 2^K], so the top
// word is 0 or 1 and the low words are zero whenever it is 1.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bigmul/mpn.hpp"
#include "bigmul/natural.hpp"
#include "bigmul/thresholds.hpp"

namespace bigmul {
namespace fermat {

// r[0..L) holds a K-bit value v; store v + t*2^K (mod 2^K+1) normalized in r[0..L].
// |t| must be far below 2^K.
template <Word W>
inline void fold(W* r, std::size_t L, std::int64_t t) {
  constexpr W maxw = word_max<W>;
  r[L] = 0;
  if (t > 0) {
    // v + t*2^K == v - t
    std::uint64_t u = static_cast<std::uint64_t>(t);
    while (u) {
      if (r[L]) {
        // 2^K == 0 - 1
        r[L] = 0;
        ++u;
      }
      W c = static_cast<W>(u > maxw ? maxw : u);
      u -= c;
      if (mpn::sub_1(r, r, L, c)) {
        // went below zero: the wrap added 2^K, add the missing 1
        if (mpn::add_1(r, r, L, W{1})) r[L] = 1;
      }
    }
  } else if (t < 0) {
    std::uint64_t u = static_cast<std::uint64_t>(-t);
    while (u) {
      W c = static_cast<W>(u > maxw ? maxw : u);
      u -= c;
      if (r[L]) {
        // current value is 2^K == -1
        r[L] = 0;
        mpn::zero(r, L);
        c = static_cast<W>(c - 1);
        if (c && mpn::add_1(r, r, L, c)) r[L] = 1;
        continue;
      }
      if (mpn::add_1(r, r, L, c)) {
        // v' + 2^K == v' - 1
        if (mpn::is_zero(r, L))
          r[L] = 1;
        else
          mpn::sub_1(r, r, L, W{1});
      }
    }
  }
}

template <Word W>
inline bool is_normalized(const W* x, std::size_t L) {
  return x[L] == 0 || (x[L] == 1 && mpn::is_zero(x, L));
}

template <Word W>
inline void add(W* r, const W* x, const W* y, std::size_t L) {
  W c = mpn::add_n(r, x, y, L);
  std::int64_t t = static_cast<std::int64_t>(c) + x[L] + y[L];
  fold(r, L, t);
}

template <Word W>
inline void sub(W* r, const W* x, const W* y, std::size_t L) {
  std::int64_t t = static_cast<std::int64_t>(x[L]) - y[L];
  t -= mpn::sub_n(r, x, y, L);
  fold(r, L, t);
}

template <Word W>
inline void neg(W* r, const W* x, std::size_t L) {
  std::int64_t t = -static_cast<std::int64_t>(x[L]);
  t -= mpn::neg(r, x, L);
  fold(r, L, t);
}

// r = x * 2^e, 0 <= e < 2K, q = e / w whole words. tmp holds 2L+2 words; r may alias x.
template <Word W>
inline void mul_pow2(W* r, const W* x, std::size_t L, std::uint64_t e, W* tmp) {
  constexpr unsigned w = word_bits<W>;
  const std::uint64_t K = static_cast<std::uint64_t>(L) * w;
  bool negate = false;
  if (e >= K) {
    e -= K;
    negate = true;
  }
  const std::size_t q = static_cast<std::size_t>(e / w);
  const unsigned b = static_cast<unsigned>(e % w);
  // tmp = x << e as a (2L+1)-word value; x has L+1 words so q+L+1 <= 2L+1
  mpn::zero(tmp, 2 * L + 2);
  if (b == 0) {
    mpn::copy(tmp + q, x, L + 1);
  } else {
    tmp[q + L + 1] = mpn::lshift(tmp + q, x, L + 1, b);
  }
  // value = lo + hi*2^K == lo - hi; hi < 2^K fits L words
  W bw = mpn::sub_n(r, tmp, tmp + L, L);
  std::int64_t t = -static_cast<std::int64_t>(bw) - static_cast<std::int64_t>(tmp[2 * L]);
  fold(r, L, t);
  if (negate) neg(r, r, L);
}

// Same result one bit at a time; the reference for mul_pow2.
template <Word W>
inline void mul_pow2_bitwise(W* r, const W* x, std::size_t L, std::uint64_t e) {
  mpn::copy(r, x, L + 1);
  for (std::uint64_t i = 0; i < e; ++i) {
    // doubling v: top bit of the low part leaves as 2^K == -1
    W out = mpn::lshift(r, r, L, 1);
    std::int64_t t = 2 * static_cast<std::int64_t>(r[L]) + out;
    fold(r, L, t);
  }
}

// r[0..L] = a[0..an) mod 2^K+1 by alternating sums of K-bit chunks.
template <Word W>
inline void reduce(W* r, std::size_t L, const W* a, std::size_t an) {
  mpn::zero(r, L + 1);
  std::int64_t t = 0;
  bool odd = false;
  for (std::size_t pos = 0; pos < an; pos += L, odd = !odd) {
    std::size_t k = std::min(L, an - pos);
    if (!odd) {
      W c = mpn::add_n(r, r, a + pos, k);
      t += mpn::add_1(r + k, r + k, L - k, c);
    } else {
      W c = mpn::sub_n(r, r, a + pos, k);
      t -= mpn::sub_1(r + k, r + k, L - k, c);
    }
  }
  fold(r, L, t);
}

// r[0..L] = x*y mod 2^K+1 with a basecase product; scratch holds 2L words.
template <Word W>
void mul_basecase(W* r, const W* x, const W* y, std::size_t L, W* scratch,
                  const ThresholdTable& th);

}  // namespace fermat

// A residue mod 2^K+1 with K a multiple of the word size.
template <Word W>
class FermatElement {
 public:
  FermatElement() = default;
  explicit FermatElement(std::size_t K);
  FermatElement(std::size_t K, const Natural<W>& value);  // value reduced mod 2^K+1

  std::size_t K() const { return K_; }
  std::size_t L() const { return K_ / word_bits<W>; }
  W* data() { return limbs_.data(); }
  const W* data() const { return limbs_.data(); }
  Natural<W> value() const;

  friend bool operator==(const FermatElement&, const FermatElement&) = default;

 private:
  std::size_t K_ = 0;
  std::vector<W> limbs_;
};

template <Word W>
FermatElement<W> fe_add(const FermatElement<W>& x, const FermatElement<W>& y);
template <Word W>
FermatElement<W> fe_sub(const FermatElement<W>& x, const FermatElement<W>& y);
template <Word W>
FermatElement<W> fe_neg(const FermatElement<W>& x);
template <Word W>
FermatElement<W> fe_mul_pow2(const FermatElement<W>& x, std::uint64_t e);
template <Word W>
FermatElement<W> fe_mul(const FermatElement<W>& x, const FermatElement<W>& y);

}  // namespace bigmul
