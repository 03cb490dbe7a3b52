#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bigmul/natural.hpp"

namespace bigmul {

struct InputTooLong : std::length_error {
  using std::length_error::length_error;
};

// Prime p = h*2^k + 1 just below W with generator g and a root of order 2^k.
template <Word W>
struct NttPrime {
  W p;
  W g;
  W omega;            // g^h, of order 2^log_order
  unsigned log_order;
};

template <Word W>
const NttPrime<W>& ntt_prime();

// Arithmetic mod a word prime with the top bit set; division replaced by a
// reciprocal multiply.
template <Word W>
class ModWord {
 public:
  ModWord() = default;
  explicit ModWord(W p) : p_(p), v_(mpn::reciprocal_word(p)) {}
  W p() const { return p_; }
  W mul(W x, W y) const {
    using D = dword_t<W>;
    D t = static_cast<D>(static_cast<D>(x) * static_cast<D>(y));
    W r;
    mpn::div_2by1<W>(r, static_cast<W>(t >> word_bits<W>), static_cast<W>(t), p_, v_);
    return r;
  }
  W add(W x, W y) const {
    W s = static_cast<W>(x + y);
    if (s < x || s >= p_) s = static_cast<W>(s - p_);
    return s;
  }
  W sub(W x, W y) const { return x >= y ? static_cast<W>(x - y) : static_cast<W>(x - y + p_); }
  W pow(W b, std::uint64_t e) const {
    W r = 1;
    for (; e; e >>= 1, b = mul(b, b))
      if (e & 1) r = mul(r, b);
    return r;
  }

 private:
  W p_ = 0;
  W v_ = 0;
};

template <Word W>
struct NttPlan {
  W p;
  W g;
  W omega;       // primitive n-th root
  std::size_t n;
  unsigned log_n;
  unsigned r;    // bits per coefficient
  W n_inv;
  ModWord<W> mod;
  std::vector<W> roots;  // omega^e for e < n/2
};

// alen, blen in bits.
template <Word W>
NttPlan<W> ntt_select_param(std::size_t alen, std::size_t blen);

template <Word W>
W modmul(W x, W y, const NttPlan<W>& plan) {
  return plan.mod.mul(x, y);
}

// r-bit coefficients of a, n of them (zero padded).
template <Word W>
std::vector<W> ntt_split(const Natural<W>& a, unsigned r, std::size_t n);

template <Word W>
Natural<W> qmul(const Natural<W>& a, const Natural<W>& b);

template <Word W>
void qmul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn);

// Largest product in words qmul accepts.
template <Word W>
std::size_t qmul_max_words();

}  // namespace bigmul
