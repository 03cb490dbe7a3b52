#include "bigmul/fermat.hpp"

#include "bigmul/arena.hpp"
#include "bigmul/basecase.hpp"

namespace bigmul {
namespace fermat {

template <Word W>
void mul_basecase(W* r, const W* x, const W* y, std::size_t L, W* scratch,
                  const ThresholdTable& th) {
  if (x[L]) {
    neg(r, y, L);  // 2^K == -1
    return;
  }
  if (y[L]) {
    neg(r, x, L);
    return;
  }
  t3mul_n(scratch, x, L, y, L, th);
  reduce(r, L, scratch, 2 * L);
}

}  // namespace fermat

template <Word W>
FermatElement<W>::FermatElement(std::size_t K) : K_(K) {
  if (K == 0 || K % word_bits<W> != 0)
    throw std::invalid_argument("FermatElement: K must be a positive multiple of the word size");
  limbs_.assign(L() + 1, W{0});
}

template <Word W>
FermatElement<W>::FermatElement(std::size_t K, const Natural<W>& value) : FermatElement(K) {
  fermat::reduce(limbs_.data(), L(), value.data(), value.size());
}

template <Word W>
Natural<W> FermatElement<W>::value() const {
  Natural<W> r;
  r.limbs() = limbs_;
  return r.normalize();
}

namespace {
template <Word W>
void check_same(const FermatElement<W>& x, const FermatElement<W>& y) {
  if (x.K() != y.K()) throw std::invalid_argument("FermatElement: mismatched K");
}
}  // namespace

template <Word W>
FermatElement<W> fe_add(const FermatElement<W>& x, const FermatElement<W>& y) {
  check_same(x, y);
  FermatElement<W> r(x.K());
  fermat::add(r.data(), x.data(), y.data(), x.L());
  return r;
}

template <Word W>
FermatElement<W> fe_sub(const FermatElement<W>& x, const FermatElement<W>& y) {
  check_same(x, y);
  FermatElement<W> r(x.K());
  fermat::sub(r.data(), x.data(), y.data(), x.L());
  return r;
}

template <Word W>
FermatElement<W> fe_neg(const FermatElement<W>& x) {
  FermatElement<W> r(x.K());
  fermat::neg(r.data(), x.data(), x.L());
  return r;
}

template <Word W>
FermatElement<W> fe_mul_pow2(const FermatElement<W>& x, std::uint64_t e) {
  FermatElement<W> r(x.K());
  std::vector<W> tmp(2 * x.L() + 2);
  fermat::mul_pow2(r.data(), x.data(), x.L(), e % (2 * x.K()), tmp.data());
  return r;
}

template <Word W>
FermatElement<W> fe_mul(const FermatElement<W>& x, const FermatElement<W>& y) {
  check_same(x, y);
  FermatElement<W> r(x.K());
  std::vector<W> tmp(2 * x.L());
  fermat::mul_basecase(r.data(), x.data(), y.data(), x.L(), tmp.data(),
                       ThresholdTable::defaults());
  return r;
}

#define BIGMUL_INST(W)                                                                   \
  template void fermat::mul_basecase(W*, const W*, const W*, std::size_t, W*,           \
                                     const ThresholdTable&);                             \
  template class FermatElement<W>;                                                       \
  template FermatElement<W> fe_add(const FermatElement<W>&, const FermatElement<W>&);    \
  template FermatElement<W> fe_sub(const FermatElement<W>&, const FermatElement<W>&);    \
  template FermatElement<W> fe_neg(const FermatElement<W>&);                             \
  template FermatElement<W> fe_mul_pow2(const FermatElement<W>&, std::uint64_t);         \
  template FermatElement<W> fe_mul(const FermatElement<W>&, const FermatElement<W>&);
BIGMUL_FOR_EACH_WORD(BIGMUL_INST)
#undef BIGMUL_INST

}  // namespace bigmul
