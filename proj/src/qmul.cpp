#include "bigmul/qmul.hpp"

#include <algorithm>
#include <cassert>

#include "bigmul/arena.hpp"
#include "bigmul/fft.hpp"

namespace bigmul {

template <>
const NttPrime<std::uint8_t>& ntt_prime<std::uint8_t>() {
  static const NttPrime<std::uint8_t> row{193, 5, 125, 6};  // 3*2^6+1, 5^3
  return row;
}
template <>
const NttPrime<std::uint16_t>& ntt_prime<std::uint16_t>() {
  static const NttPrime<std::uint16_t> row{40961, 3, 243, 13};  // 5*2^13+1, 3^5
  return row;
}
template <>
const NttPrime<std::uint32_t>& ntt_prime<std::uint32_t>() {
  static const NttPrime<std::uint32_t> row{3489660929u, 3, 1594323u, 28};  // 13*2^28+1, 3^13
  return row;
}
template <>
const NttPrime<std::uint64_t>& ntt_prime<std::uint64_t>() {
  static const NttPrime<std::uint64_t> row{10232178353385766913ull, 3, 3419711604162223203ull,
                                           57};  // 71*2^57+1, 3^71
  return row;
}

namespace {

// Largest r with n * 2^(2r-1) <= p, or 0.
template <Word W>
unsigned max_coeff_bits(W p, std::uint64_t n) {
  unsigned r = 0;
  while (true) {
    unsigned e = 2 * (r + 1) - 1;
    if (e >= 120) break;
    unsigned __int128 need = static_cast<unsigned __int128>(n) << e;
    if (need > p) break;
    ++r;
  }
  return r;
}

template <Word W>
class QmulRing {
 public:
  QmulRing(W* v, std::size_t n, const NttPlan<W>& plan) : v_(v), n_(n), plan_(plan) {}
  std::size_t size() const { return n_; }
  std::uint64_t root_order() const { return plan_.n; }
  void swap(std::size_t i, std::size_t j) { std::swap(v_[i], v_[j]); }
  void mul_root(std::size_t i, std::uint64_t e) {
    t_ = e == 0 ? v_[i] : plan_.mod.mul(v_[i], plan_.roots[e]);
  }
  void sub_from(std::size_t d, std::size_t s) { v_[d] = plan_.mod.sub(v_[s], t_); }
  void add_to(std::size_t i) { v_[i] = plan_.mod.add(v_[i], t_); }

 private:
  W* v_;
  std::size_t n_;
  const NttPlan<W>& plan_;
  W t_ = 0;
};

}  // namespace

template <Word W>
NttPlan<W> ntt_select_param(std::size_t alen, std::size_t blen) {
  const NttPrime<W>& row = ntt_prime<W>();
  const std::uint64_t max_n = std::uint64_t{1} << row.log_order;
  constexpr unsigned w = word_bits<W>;
  // W/4 bits of output
  if (w < 64 && (alen + blen) > (std::uint64_t{1} << (w - 2)))
    throw InputTooLong("qmul: output longer than W/4 bits");
  alen = std::max<std::size_t>(alen, 1);
  blen = std::max<std::size_t>(blen, 1);

  std::uint64_t n = 1;
  unsigned r = 0;
  int iter = 0;
  for (;; ++iter) {
    if (iter >= 64) throw InputTooLong("qmul: parameter iteration did not settle");
    r = max_coeff_bits<W>(row.p, n);
    if (r == 0) throw InputTooLong("qmul: coefficients do not fit the prime");
    std::uint64_t need = ceil_div(alen, r) + ceil_div(blen, r) - 1;
    std::uint64_t n2 = next_pow2(need);
    if (n2 > max_n) throw InputTooLong("qmul: FFT longer than the root order");
    if (n2 <= n) break;
    n = n2;
  }
  r = max_coeff_bits<W>(row.p, n);

  NttPlan<W> plan;
  plan.p = row.p;
  plan.g = row.g;
  plan.n = static_cast<std::size_t>(n);
  plan.log_n = log2_floor(n);
  plan.r = r;
  plan.mod = ModWord<W>(row.p);
  plan.omega = plan.mod.pow(row.omega, max_n / n);
  // n^-1 = p - (p-1)/n since n * (p-1)/n = p-1 = -1
  plan.n_inv = static_cast<W>(row.p - (row.p - 1) / static_cast<W>(n));
  plan.roots.resize(std::max<std::size_t>(plan.n / 2, 1));
  plan.roots[0] = 1;
  for (std::size_t i = 1; i < plan.roots.size(); ++i)
    plan.roots[i] = plan.mod.mul(plan.roots[i - 1], plan.omega);
  return plan;
}

template <Word W>
std::vector<W> ntt_split(const Natural<W>& a, unsigned r, std::size_t n) {
  std::vector<W> c(n, W{0});
  const W mask = static_cast<W>((W{1} << r) - 1);
  std::size_t bits = a.bit_length();
  for (std::size_t i = 0; i < n && i * r < bits; ++i)
    c[i] = static_cast<W>(mpn::window(a.data(), a.size(), i * r) & mask);
  return c;
}

template <Word W>
std::size_t qmul_max_words() {
  const NttPrime<W>& row = ntt_prime<W>();
  std::uint64_t n = std::uint64_t{1} << row.log_order;
  unsigned r = max_coeff_bits<W>(row.p, n);
  std::uint64_t bits = n * r;
  if (word_bits<W> < 64) bits = std::min<std::uint64_t>(bits, std::uint64_t{1} << (word_bits<W> - 2));
  return static_cast<std::size_t>(std::min<std::uint64_t>(bits / word_bits<W>, SIZE_MAX));
}

template <Word W>
void qmul_n(W* res, const W* a, std::size_t an, const W* b, std::size_t bn) {
  const std::size_t rn = an + bn;
  mpn::zero(res, rn);
  an = mpn::normalized_size(a, an);
  bn = mpn::normalized_size(b, bn);
  if (an == 0 || bn == 0) return;
  constexpr unsigned w = word_bits<W>;
  std::size_t abits = an * w - count_leading_zeros(a[an - 1]);
  std::size_t bbits = bn * w - count_leading_zeros(b[bn - 1]);
  NttPlan<W> plan = ntt_select_param<W>(abits, bbits);
  const std::size_t n = plan.n;
  const unsigned r = plan.r;
  const W mask = static_cast<W>((W{1} << r) - 1);

  Scratch<W> va(n), vb(n);
  // split at bit boundaries straight into shuffled order
  auto split = [&](W* v, const W* x, std::size_t xn, std::size_t xbits) {
    mpn::zero(v, n);
    for (std::size_t i = 0; i * r < xbits; ++i)
      v[bit_rev(i, plan.log_n)] = static_cast<W>(mpn::window(x, xn, i * r) & mask);
  };
  split(va.data(), a, an, abits);
  split(vb.data(), b, bn, bbits);

  QmulRing<W> ra(va.data(), n, plan), rb(vb.data(), n, plan);
  fft_eval(ra);
  fft_eval(rb);
  for (std::size_t i = 0; i < n; ++i) va[i] = plan.mod.mul(va[i], vb[i]);
  shuffle(ra);
  fft_eval(ra);

  // coefficient l sits at index -l mod n, scaled by n
  for (std::size_t l = 0; l < n; ++l) {
    W c = va[(n - l) & (n - 1)];
    if (c == 0) continue;
    c = plan.mod.mul(c, plan.n_inv);
    W cy = mpn::add_at_bit(res, rn, &c, 1, l * r);
    assert(cy == 0);
    (void)cy;
  }
}

template <Word W>
Natural<W> qmul(const Natural<W>& a, const Natural<W>& b) {
  Natural<W> r;
  r.resize(a.size() + b.size());
  qmul_n(r.data(), a.data(), a.size(), b.data(), b.size());
  return r;
}

#define BIGMUL_INST(W)                                                          \
  template NttPlan<W> ntt_select_param<W>(std::size_t, std::size_t);            \
  template std::vector<W> ntt_split(const Natural<W>&, unsigned, std::size_t);  \
  template std::size_t qmul_max_words<W>();                                     \
  template void qmul_n(W*, const W*, std::size_t, const W*, std::size_t);       \
  template Natural<W> qmul(const Natural<W>&, const Natural<W>&);
BIGMUL_FOR_EACH_WORD(BIGMUL_INST)
#undef BIGMUL_INST

}  // namespace bigmul
