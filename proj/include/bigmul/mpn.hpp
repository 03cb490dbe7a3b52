#pragma once

// Carry-correct primitives over little-endian word arrays. Output may alias
// input where the loop direction allows it (r == a for add/sub/rshift, r >= a
// for lshift).

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstring>
#include <vector>

#include "bigmul/word.hpp"

namespace bigmul::mpn {

template <Word W>
inline void zero(W* r, std::size_t n) {
  std::fill_n(r, n, W{0});
}

template <Word W>
inline void copy(W* r, const W* a, std::size_t n) {
  if (n) std::memmove(r, a, n * sizeof(W));
}

template <Word W>
inline std::size_t normalized_size(const W* a, std::size_t n) {
  while (n > 0 && a[n - 1] == 0) --n;
  return n;
}

template <Word W>
inline bool is_zero(const W* a, std::size_t n) {
  return normalized_size(a, n) == 0;
}

template <Word W>
inline W add_n(W* r, const W* a, const W* b, std::size_t n) {
  W c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    W x = a[i];
    W s = static_cast<W>(x + b[i]);
    W c1 = s < x;
    W t = static_cast<W>(s + c);
    c = static_cast<W>(c1 | (t < s));
    r[i] = t;
  }
  return c;
}

template <Word W>
inline W add_1(W* r, const W* a, std::size_t n, W b) {
  std::size_t i = 0;
  for (; i < n && b; ++i) {
    W t = static_cast<W>(a[i] + b);
    b = t < b;
    r[i] = t;
  }
  if (r != a)
    for (; i < n; ++i) r[i] = a[i];
  return b;
}

// an >= bn
template <Word W>
inline W add(W* r, const W* a, std::size_t an, const W* b, std::size_t bn) {
  W c = add_n(r, a, b, bn);
  return add_1(r + bn, a + bn, an - bn, c);
}

template <Word W>
inline W sub_n(W* r, const W* a, const W* b, std::size_t n) {
  W c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    W x = a[i];
    W y = b[i];
    W d = static_cast<W>(x - y);
    W c1 = x < y;
    W t = static_cast<W>(d - c);
    c = static_cast<W>(c1 | (d < c));
    r[i] = t;
  }
  return c;
}

template <Word W>
inline W sub_1(W* r, const W* a, std::size_t n, W b) {
  std::size_t i = 0;
  for (; i < n && b; ++i) {
    W x = a[i];
    r[i] = static_cast<W>(x - b);
    b = x < b;
  }
  if (r != a)
    for (; i < n; ++i) r[i] = a[i];
  return b;
}

// an >= bn
template <Word W>
inline W sub(W* r, const W* a, std::size_t an, const W* b, std::size_t bn) {
  W c = sub_n(r, a, b, bn);
  return sub_1(r + bn, a + bn, an - bn, c);
}

// r = -a mod W^n, returns 1 unless a was zero.
template <Word W>
inline W neg(W* r, const W* a, std::size_t n) {
  std::size_t i = 0;
  while (i < n && a[i] == 0) r[i++] = 0;
  if (i == n) return 0;
  r[i] = static_cast<W>(-a[i]);
  for (++i; i < n; ++i) r[i] = static_cast<W>(~a[i]);
  return 1;
}

template <Word W>
inline int cmp_n(const W* a, const W* b, std::size_t n) {
  while (n-- > 0) {
    if (a[n] != b[n]) return a[n] < b[n] ? -1 : 1;
  }
  return 0;
}

template <Word W>
inline int cmp(const W* a, std::size_t an, const W* b, std::size_t bn) {
  an = normalized_size(a, an);
  bn = normalized_size(b, bn);
  if (an != bn) return an < bn ? -1 : 1;
  return cmp_n(a, b, an);
}

// 0 < s < w. Returns the bits shifted out at the top, in the low s bits.
template <Word W>
inline W lshift(W* r, const W* a, std::size_t n, unsigned s) {
  constexpr unsigned w = word_bits<W>;
  W out = static_cast<W>(a[n - 1] >> (w - s));
  for (std::size_t i = n - 1; i > 0; --i)
    r[i] = static_cast<W>(static_cast<W>(a[i] << s) | static_cast<W>(a[i - 1] >> (w - s)));
  r[0] = static_cast<W>(a[0] << s);
  return out;
}

// 0 < s < w. Returns the bits shifted out at the bottom, in the high s bits.
template <Word W>
inline W rshift(W* r, const W* a, std::size_t n, unsigned s) {
  constexpr unsigned w = word_bits<W>;
  W out = static_cast<W>(a[0] << (w - s));
  for (std::size_t i = 0; i + 1 < n; ++i)
    r[i] = static_cast<W>(static_cast<W>(a[i] >> s) | static_cast<W>(a[i + 1] << (w - s)));
  r[n - 1] = static_cast<W>(a[n - 1] >> s);
  return out;
}

template <Word W>
inline W mul_1(W* r, const W* a, std::size_t n, W b) {
  W c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto t = word_muladd<W>(0, a[i], b, c);
    r[i] = t.low;
    c = t.carry;
  }
  return c;
}

template <Word W>
inline W addmul_1(W* r, const W* a, std::size_t n, W b) {
  W c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto t = word_muladd<W>(r[i], a[i], b, c);
    r[i] = t.low;
    c = t.carry;
  }
  return c;
}

template <Word W>
inline W submul_1(W* r, const W* a, std::size_t n, W b) {
  W c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto t = word_muladd<W>(0, a[i], b, c);
    W x = r[i];
    W d = static_cast<W>(x - t.low);
    c = static_cast<W>(t.carry + (d > x));
    r[i] = d;
  }
  return c;
}

// q = a / 3 for a known multiple of 3, word by word via the inverse of 3 mod W.
template <Word W>
inline void divexact_by3(W* q, const W* a, std::size_t n) {
  constexpr W inv3 = static_cast<W>(word_max<W> / 3 * 2 + 1);
  constexpr W lim1 = static_cast<W>(word_max<W> / 3);
  constexpr W lim2 = static_cast<W>(word_max<W> / 3 * 2);
  W c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    W s = a[i];
    W t = static_cast<W>(s - c);
    c = t > s;
    W qi = mul_lo<W>(t, inv3);
    q[i] = qi;
    c = static_cast<W>(c + (qi > lim1) + (qi > lim2));
  }
  assert(c == 0);
}

// Value of the w-bit window of a starting at bit pos; bits past n words read as 0.
template <Word W>
inline W window(const W* a, std::size_t n, std::size_t pos) {
  constexpr unsigned w = word_bits<W>;
  std::size_t q = pos / w;
  unsigned b = pos % w;
  if (q >= n) return 0;
  W lo = static_cast<W>(a[q] >> b);
  if (b == 0 || q + 1 >= n) return lo;
  return static_cast<W>(lo | static_cast<W>(a[q + 1] << (w - b)));
}

// r[0..rn) = bits [pos, pos+nbits) of a, zero-extended.
template <Word W>
inline void extract_bits(W* r, std::size_t rn, const W* a, std::size_t an, std::size_t pos,
                         std::size_t nbits) {
  constexpr unsigned w = word_bits<W>;
  std::size_t full = nbits / w;
  unsigned rest = nbits % w;
  std::size_t i = 0;
  if (pos % w == 0) {
    std::size_t q = pos / w;
    for (; i < full && i < rn; ++i) r[i] = q + i < an ? a[q + i] : W{0};
  } else {
    for (; i < full && i < rn; ++i) r[i] = window(a, an, pos + i * w);
  }
  if (rest && i < rn) {
    r[i] = static_cast<W>(window(a, an, pos + full * w) & static_cast<W>((W{1} << rest) - 1));
    ++i;
  }
  for (; i < rn; ++i) r[i] = 0;
}

// r[0..rn) += x * 2^pos; returns the carry out of the top word.
template <Word W>
inline W add_at_bit(W* r, std::size_t rn, const W* x, std::size_t xn, std::size_t pos) {
  constexpr unsigned w = word_bits<W>;
  std::size_t q = pos / w;
  unsigned b = pos % w;
  if (q >= rn) return 0;
  std::size_t room = rn - q;
  W c = 0;
  std::size_t i = 0;
  if (b == 0) {
    std::size_t k = std::min(xn, room);
    c = add_n(r + q, r + q, x, k);
    i = k;
  } else {
    W prev = 0;
    for (; i < xn && i < room; ++i) {
      W v = static_cast<W>(static_cast<W>(x[i] << b) | static_cast<W>(prev >> (w - b)));
      prev = x[i];
      W s = static_cast<W>(r[q + i] + v);
      W c1 = s < v;
      W t = static_cast<W>(s + c);
      c = static_cast<W>(c1 | (t < s));
      r[q + i] = t;
    }
    if (i < room) {
      W v = static_cast<W>(prev >> (w - b));
      W s = static_cast<W>(r[q + i] + v);
      W c1 = s < v;
      W t = static_cast<W>(s + c);
      c = static_cast<W>(c1 | (t < s));
      r[q + i] = t;
      ++i;
    }
  }
  if (i < room) c = add_1(r + q + i, r + q + i, room - i, c);
  return c;
}

// Two-by-one division with a precomputed reciprocal (Moller-Granlund).
// d normalized, v = floor((W^2-1)/d) - W, requires u1 < d.
template <Word W>
inline W div_2by1(W& rem, W u1, W u0, W d, W v) {
  using D = dword_t<W>;
  constexpr unsigned w = word_bits<W>;
  D qq = static_cast<D>(static_cast<D>(v) * static_cast<D>(u1));
  qq = static_cast<D>(qq + ((static_cast<D>(u1) << w) | static_cast<D>(u0)));
  W q1 = static_cast<W>(static_cast<W>(qq >> w) + 1);
  W q0 = static_cast<W>(qq);
  W r = static_cast<W>(u0 - mul_lo<W>(q1, d));
  if (r > q0) {
    q1 = static_cast<W>(q1 - 1);
    r = static_cast<W>(r + d);
  }
  if (r >= d) {
    q1 = static_cast<W>(q1 + 1);
    r = static_cast<W>(r - d);
  }
  rem = r;
  return q1;
}

template <Word W>
inline W reciprocal_word(W d) {
  using D = dword_t<W>;
  D all = static_cast<D>(~D{0});
  return static_cast<W>(all / d);  // low w bits of floor((W^2-1)/d) == that value minus W
}

// Divisor with its normalized form cached, for repeated remainders.
template <Word W>
class Divisor {
 public:
  explicit Divisor(const W* d, std::size_t n) {
    n = normalized_size(d, n);
    assert(n > 0);
    shift_ = count_leading_zeros(d[n - 1]);
    dn_.assign(d, d + n);
    if (shift_) lshift(dn_.data(), dn_.data(), n, shift_);
    inv_ = reciprocal_word(dn_[n - 1]);
  }
  std::size_t size() const { return dn_.size(); }

  // q[0..an-n+1) (optional) and r[0..n) of a[0..an); scratch needs an+1 words.
  void divrem(W* q, W* r, const W* a, std::size_t an, W* scratch) const {
    const std::size_t n = dn_.size();
    if (an < n) {
      copy(r, a, an);
      zero(r + an, n - an);
      if (q) zero(q, 1);
      return;
    }
    W* u = scratch;
    if (shift_)
      u[an] = lshift(u, a, an, shift_);
    else {
      copy(u, a, an);
      u[an] = 0;
    }
    const W* d = dn_.data();
    if (n == 1) {
      W rem = u[an];
      for (std::size_t i = an; i-- > 0;) {
        W qi = div_2by1(rem, rem, u[i], d[0], inv_);
        if (q) q[i] = qi;
      }
      r[0] = static_cast<W>(rem >> shift_);
      return;
    }
    const W dh = d[n - 1], dl = d[n - 2];
    using D = dword_t<W>;
    constexpr unsigned w = word_bits<W>;
    for (std::size_t j = an - n + 1; j-- > 0;) {
      W u2 = u[j + n], u1 = u[j + n - 1], u0 = u[j + n - 2];
      W qhat, rhat;
      bool rhat_big = false;
      if (u2 >= dh) {
        qhat = word_max<W>;
        rhat = static_cast<W>(u1 + dh);
        rhat_big = rhat < u1;
      } else {
        qhat = div_2by1(rhat, u2, u1, dh, inv_);
      }
      if (!rhat_big) {
        // refine with the second divisor word
        while (true) {
          D lhs = static_cast<D>(static_cast<D>(qhat) * static_cast<D>(dl));
          D rhs = static_cast<D>((static_cast<D>(rhat) << w) | static_cast<D>(u0));
          if (lhs <= rhs) break;
          qhat = static_cast<W>(qhat - 1);
          W nr = static_cast<W>(rhat + dh);
          if (nr < rhat) break;
          rhat = nr;
        }
      }
      W borrow = submul_1(u + j, d, n, qhat);
      W top = u[j + n];
      u[j + n] = static_cast<W>(top - borrow);
      if (top < borrow) {
        qhat = static_cast<W>(qhat - 1);
        W c = add_n(u + j, u + j, d, n);
        u[j + n] = static_cast<W>(u[j + n] + c);
      }
      if (q) q[j] = qhat;
    }
    if (shift_)
      rshift(r, u, n, shift_);
    else
      copy(r, u, n);
  }

  void mod(W* r, const W* a, std::size_t an) const {
    std::vector<W> s(an + 1);
    divrem(nullptr, r, a, an, s.data());
  }

 private:
  std::vector<W> dn_;
  unsigned shift_ = 0;
  W inv_ = 0;
};

}  // namespace bigmul::mpn
