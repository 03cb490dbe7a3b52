#include "bigmul/basecase.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "bigmul/arena.hpp"

namespace bigmul {

template <Word W>
void omul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn) {
  if (an == 0 || bn == 0) {
    mpn::zero(r, an + bn);
    return;
  }
  r[an] = mpn::mul_1(r, a, an, b[0]);
  for (std::size_t j = 1; j < bn; ++j) r[an + j] = mpn::addmul_1(r + j, a, an, b[j]);
}

namespace {

template <Word W>
void kmul_rec(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
              const ThresholdTable& th, KaratsubaTrace* trace, unsigned depth) {
  if (an < bn) {
    std::swap(a, b);
    std::swap(an, bn);
  }
  if (trace) trace->hit(depth);
  if (bn < th.kmul || bn < 2) {
    omul_n(r, a, an, b, bn);
    return;
  }
  const std::size_t llen = bn / 2;
  const std::size_t ahlen = an - llen;
  const std::size_t bhlen = bn - llen;

  kmul_rec(r, a, llen, b, llen, th, trace, depth + 1);                                // P0
  kmul_rec(r + 2 * llen, a + llen, ahlen, b + llen, bhlen, th, trace, depth + 1);     // P2

  const std::size_t plen = ahlen + bhlen + 1;
  Scratch<W> sa(ahlen), sb(bhlen), ps(plen);

  // |a1 - a0| and |b1 - b0|, keeping the signs
  bool aneg = mpn::cmp(a + llen, ahlen, a, llen) < 0;
  if (aneg) {
    mpn::zero(sa.data(), ahlen);
    mpn::copy(sa.data(), a, llen);
    mpn::sub(sa.data(), sa.data(), ahlen, a + llen, ahlen);
  } else {
    mpn::sub(sa.data(), a + llen, ahlen, a, llen);
  }
  bool bneg = mpn::cmp(b + llen, bhlen, b, llen) < 0;
  if (bneg) {
    mpn::zero(sb.data(), bhlen);
    mpn::copy(sb.data(), b, llen);
    mpn::sub(sb.data(), sb.data(), bhlen, b + llen, bhlen);
  } else {
    mpn::sub(sb.data(), b + llen, bhlen, b, llen);
  }
  kmul_rec(ps.data(), sa.data(), ahlen, sb.data(), bhlen, th, trace, depth + 1);     // P1
  ps[plen - 1] = 0;

  // middle = P0 + P2 - (a1-a0)(b1-b0); intermediate wrap-around is harmless
  // because the final value is nonnegative and fits plen words.
  const W* p0 = r;
  const W* p2 = r + 2 * llen;
  if (aneg == bneg) {
    Scratch<W> t(plen);
    mpn::zero(t.data(), plen);
    mpn::copy(t.data(), p0, 2 * llen);
    mpn::sub_n(t.data(), t.data(), ps.data(), plen);
    mpn::add(t.data(), t.data(), plen, p2, ahlen + bhlen);
    W c = mpn::add(r + llen, r + llen, an + bn - llen, t.data(), plen);
    assert(c == 0);
    (void)c;
  } else {
    mpn::add(ps.data(), ps.data(), plen, p0, 2 * llen);
    mpn::add(ps.data(), ps.data(), plen, p2, ahlen + bhlen);
    W c = mpn::add(r + llen, r + llen, an + bn - llen, ps.data(), plen);
    assert(c == 0);
    (void)c;
  }
}

// Signed value in a fixed-length word buffer.
template <Word W>
struct SVal {
  W* p;
  bool neg;
};

// d = x + y (signed); d may alias x or y.
template <Word W>
void s_add(std::size_t n, SVal<W>& d, const SVal<W>& x, const SVal<W>& y) {
  if (x.neg == y.neg) {
    mpn::add_n(d.p, x.p, y.p, n);
    d.neg = x.neg;
    return;
  }
  int c = mpn::cmp_n(x.p, y.p, n);
  if (c >= 0) {
    bool s = x.neg;
    mpn::sub_n(d.p, x.p, y.p, n);
    d.neg = c == 0 ? false : s;
  } else {
    bool s = y.neg;
    mpn::sub_n(d.p, y.p, x.p, n);
    d.neg = s;
  }
}

template <Word W>
void s_sub(std::size_t n, SVal<W>& d, const SVal<W>& x, const SVal<W>& y) {
  SVal<W> ny{y.p, !y.neg};
  if (mpn::is_zero(y.p, n)) ny.neg = false;
  s_add(n, d, x, ny);
}

// dst[0..n) = src[0..sn) zero-extended
template <Word W>
void load(W* dst, std::size_t n, const W* src, std::size_t sn) {
  mpn::copy(dst, src, std::min(n, sn));
  if (sn < n) mpn::zero(dst + sn, n - sn);
}

template <Word W>
void t3mul_rec(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
               const ThresholdTable& th) {
  if (an < bn) {
    std::swap(a, b);
    std::swap(an, bn);
  }
  if (bn < th.t3mul || bn < 3) {
    kmul_rec(r, a, an, b, bn, th, nullptr, 0);
    return;
  }
  const std::size_t rn = an + bn;
  if (an >= 2 * bn) {
    // Very unbalanced: multiply bn-word slices of a and accumulate.
    mpn::zero(r, rn);
    Scratch<W> t(2 * bn);
    for (std::size_t o = 0; o < an; o += bn) {
      std::size_t c = std::min(bn, an - o);
      t3mul_rec(t.data(), a + o, c, b, bn, th);
      W cy = mpn::add(r + o, r + o, rn - o, t.data(), c + bn);
      assert(cy == 0);
      (void)cy;
    }
    return;
  }

  const std::size_t k = (an + 2) / 3;
  const std::size_t a2n = an - 2 * k;
  const std::size_t b0n = std::min(k, bn);
  const std::size_t b1n = bn > k ? std::min(k, bn - k) : 0;
  const std::size_t b2n = bn > 2 * k ? bn - 2 * k : 0;
  const W* a0 = a;
  const W* a1 = a + k;
  const W* a2 = a + 2 * k;
  const W* b0 = b;
  const W* b1 = b + k;
  const W* b2 = b + 2 * k;

  const std::size_t e = k + 1;       // evaluation length
  const std::size_t L = 2 * k + 2;   // product length
  Scratch<W> buf(6 * e + 5 * L + e);
  W* ea1 = buf.data();
  W* eam1 = ea1 + e;
  W* eam2 = eam1 + e;
  W* eb1 = eam2 + e;
  W* ebm1 = eb1 + e;
  W* ebm2 = ebm1 + e;
  W* w0 = ebm2 + e;
  W* w1 = w0 + L;
  W* wm1 = w1 + L;
  W* wm2 = wm1 + L;
  W* winf = wm2 + L;
  W* tmp = winf + L;

  // Points 1, -1, -2 for a: A0 = a0 + a2, A(1) = A0 + a1, A(-1) = A0 - a1,
  // A(-2) = 2(A(-1) + a2) - a0.
  auto evaluate = [&](const W* x0, std::size_t x0n, const W* x1, std::size_t x1n, const W* x2,
                      std::size_t x2n, W* p1, W* pm1, W* pm2, bool& negm1, bool& negm2) {
    load(tmp, e, x0, x0n);
    W* t2 = pm2;  // reuse as scratch
    load(t2, e, x2, x2n);
    mpn::add_n(tmp, tmp, t2, e);  // A0
    W* t1 = p1;
    load(t1, e, x1, x1n);
    SVal<W> A0{tmp, false}, X1{t1, false}, M1{pm1, false};
    s_sub(e, M1, A0, X1);
    mpn::add_n(p1, tmp, t1, e);
    SVal<W> X2{t2, false}, M2{pm2, false};
    s_add(e, M2, M1, X2);
    mpn::lshift(pm2, pm2, e, 1);
    load(tmp, e, x0, x0n);
    SVal<W> X0{tmp, false};
    s_sub(e, M2, M2, X0);
    negm1 = M1.neg;
    negm2 = M2.neg;
  };
  bool an1, an2, bn1, bn2;
  evaluate(a0, k, a1, k, a2, a2n, ea1, eam1, eam2, an1, an2);
  evaluate(b0, b0n, b1, b1n, b2, b2n, eb1, ebm1, ebm2, bn1, bn2);

  t3mul_rec(w1, ea1, e, eb1, e, th);
  t3mul_rec(wm1, eam1, e, ebm1, e, th);
  t3mul_rec(wm2, eam2, e, ebm2, e, th);
  t3mul_rec(w0, a0, k, b0, b0n, th);
  mpn::zero(w0 + k + b0n, L - k - b0n);
  if (b2n) {
    t3mul_rec(winf, a2, a2n, b2, b2n, th);
    mpn::zero(winf + a2n + b2n, L - a2n - b2n);
  } else {
    mpn::zero(winf, L);
  }

  // Bodrato's interpolation sequence.
  SVal<W> W0{w0, false}, W1{w1, false}, Wm1{wm1, an1 != bn1}, Wm2{wm2, an2 != bn2},
      Winf{winf, false};
  if (mpn::is_zero(wm1, L)) Wm1.neg = false;
  if (mpn::is_zero(wm2, L)) Wm2.neg = false;
  SVal<W>& r3 = Wm2;
  SVal<W>& r1 = W1;
  SVal<W>& r2 = Wm1;
  s_sub(L, r3, Wm2, W1);  // (W(-2) - W(1)) / 3
  mpn::divexact_by3(r3.p, r3.p, L);
  s_sub(L, r1, W1, Wm1);  // (W(1) - W(-1)) / 2
  mpn::rshift(r1.p, r1.p, L, 1);
  s_sub(L, r2, Wm1, W0);  // W(-1) - W(0)
  s_sub(L, r3, r2, r3);   // (r2 - r3) / 2 + 2 Winf
  mpn::rshift(r3.p, r3.p, L, 1);
  s_add(L, r3, r3, Winf);
  s_add(L, r3, r3, Winf);
  s_add(L, r2, r2, r1);   // r2 + r1 - Winf
  s_sub(L, r2, r2, Winf);
  s_sub(L, r1, r1, r3);
  assert(!r1.neg && !r2.neg && !r3.neg);

  mpn::zero(r, rn);
  mpn::copy(r, w0, 2 * k);
  if (b2n) mpn::copy(r + 4 * k, winf, a2n + b2n);
  auto accumulate = [&](const W* v, std::size_t off) {
    std::size_t room = rn - off;
    std::size_t n = std::min(L, room);
    W c = mpn::add(r + off, r + off, room, v, n);
    assert(c == 0 && mpn::is_zero(v + n, L - n));
    (void)c;
  };
  accumulate(r1.p, k);
  accumulate(r2.p, 2 * k);
  accumulate(r3.p, 3 * k);
}

}  // namespace

template <Word W>
void kmul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
            const ThresholdTable& th, KaratsubaTrace* trace) {
  if (an == 0 || bn == 0) {
    mpn::zero(r, an + bn);
    return;
  }
  kmul_rec(r, a, an, b, bn, th, trace, 0);
}

template <Word W>
void t3mul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
             const ThresholdTable& th) {
  if (an == 0 || bn == 0) {
    mpn::zero(r, an + bn);
    return;
  }
  t3mul_rec(r, a, an, b, bn, th);
}

template <Word W>
Natural<W> omul(const Natural<W>& a, const Natural<W>& b) {
  Natural<W> r;
  r.resize(a.size() + b.size());
  omul_n(r.data(), a.data(), a.size(), b.data(), b.size());
  return r;
}

template <Word W>
Natural<W> kmul(const Natural<W>& a, const Natural<W>& b, const ThresholdTable& th,
                KaratsubaTrace* trace) {
  Natural<W> r;
  r.resize(a.size() + b.size());
  kmul_n(r.data(), a.data(), a.size(), b.data(), b.size(), th, trace);
  return r;
}

template <Word W>
Natural<W> t3mul(const Natural<W>& a, const Natural<W>& b, const ThresholdTable& th) {
  Natural<W> r;
  r.resize(a.size() + b.size());
  t3mul_n(r.data(), a.data(), a.size(), b.data(), b.size(), th);
  return r;
}

#define BIGMUL_INST(W)                                                                        \
  template void omul_n(W*, const W*, std::size_t, const W*, std::size_t);                     \
  template void kmul_n(W*, const W*, std::size_t, const W*, std::size_t,                      \
                       const ThresholdTable&, KaratsubaTrace*);                               \
  template void t3mul_n(W*, const W*, std::size_t, const W*, std::size_t,                     \
                        const ThresholdTable&);                                               \
  template Natural<W> omul(const Natural<W>&, const Natural<W>&);                             \
  template Natural<W> kmul(const Natural<W>&, const Natural<W>&, const ThresholdTable&,       \
                           KaratsubaTrace*);                                                  \
  template Natural<W> t3mul(const Natural<W>&, const Natural<W>&, const ThresholdTable&);
BIGMUL_FOR_EACH_WORD(BIGMUL_INST)
#undef BIGMUL_INST

}  // namespace bigmul
