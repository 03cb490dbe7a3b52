#include "bigmul/lucas_lehmer.hpp"

#include <stdexcept>
#include <vector>

#include "bigmul/mpn.hpp"

namespace bigmul {

namespace {

using W = std::uint64_t;
constexpr unsigned w = 64;

// x[0..2n) mod 2^p - 1 into s[0..n), canonical; p odd.
void mersenne_fold(W* s, const W* x, std::size_t n, unsigned p, std::vector<W>& hi) {
  const unsigned pb = p % w;
  const W top_mask = static_cast<W>((W{1} << pb) - 1);
  mpn::extract_bits(hi.data(), n, x, 2 * n, p, p);  // x >> p
  mpn::copy(s, x, n);
  s[n - 1] &= top_mask;
  mpn::add_n(s, s, hi.data(), n);
  // lo + hi < 2^(p+1): fold the one extra bit
  W over = static_cast<W>(s[n - 1] >> pb);
  s[n - 1] &= top_mask;
  if (over) mpn::add_1(s, s, n, over);
  // 2^p - 1 itself is 0
  bool ones = s[n - 1] == top_mask;
  for (std::size_t i = 0; i + 1 < n && ones; ++i) ones = s[i] == word_max<W>;
  if (ones) mpn::zero(s, n);
}

}  // namespace

LucasLehmerResult lucas_lehmer(unsigned p, Algorithm alg, const ThresholdTable& th) {
  if (p < 2) throw std::invalid_argument("lucas_lehmer: p < 2");
  if (p == 2) return {true, 0};
  if (p % 2 == 0) throw std::invalid_argument("lucas_lehmer: p must be odd");
  const std::size_t n = (p + w - 1) / w;
  std::vector<W> s(n, 0), sq(2 * n), hi(n);
  s[0] = 4;
  for (unsigned i = 0; i + 2 < p; ++i) {
    mul_n(sq.data(), s.data(), n, s.data(), n, alg, th);
    mersenne_fold(s.data(), sq.data(), n, p, hi);
    // s -= 2 mod 2^p - 1
    if (mpn::sub_1(s.data(), s.data(), n, W{2})) {
      // wrapped: add 2^p - 1 back, i.e. drop the bits above p and subtract 1
      const unsigned pb = p % w;
      s[n - 1] &= static_cast<W>((W{1} << pb) - 1);
      mpn::sub_1(s.data(), s.data(), n, W{1});
    }
  }
  return {mpn::is_zero(s.data(), n), s[0]};
}

}  // namespace bigmul
