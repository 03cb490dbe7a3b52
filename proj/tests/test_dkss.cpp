#include <doctest.h>

#include <algorithm>
#include <set>

#include "bigmul/arena.hpp"
#include "bigmul/basecase.hpp"
#include "bigmul/dkss.hpp"
#include "bigmul/fft.hpp"
#include "bigmul/numtheory.hpp"
#include "bigmul/smul.hpp"
#include "support.hpp"

using namespace bigmul;
using testing::rng;
using testing::to_mpz;

namespace {

// Elements of R with word-sized p, held as plain coefficient vectors.
using Poly = std::vector<std::uint64_t>;

std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

Poly pmul(const Poly& a, const Poly& b, std::uint64_t p) {
  const std::size_t m = a.size();
  Poly r(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::uint64_t t = mulm(a[i], b[j], p);
      std::size_t k = i + j;
      if (k < m)
        r[k] = (r[k] + t) % p;
      else
        r[k - m] = (r[k - m] + p - t) % p;
    }
  return r;
}

Poly padd(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

Poly pone(std::size_t m) {
  Poly r(m, 0);
  r[0] = 1;
  return r;
}

Poly ppow(Poly b, std::uint64_t e, std::uint64_t p) {
  Poly r = pone(b.size());
  for (; e; e >>= 1, b = pmul(b, b, p))
    if (e & 1) r = pmul(r, b, p);
  return r;
}

template <class W>
std::uint64_t plan_p(const DkssPlan<W>& plan) {
  return plan.P.modulus().low_u64();
}

template <class W>
Poly get(const W* x, const DkssPlan<W>& plan) {
  Poly r(plan.m);
  for (std::size_t i = 0; i < plan.m; ++i)
    r[i] = to_mpz(x + i * plan.iclen, plan.iclen).get_ui();
  return r;
}

template <class W>
void put(W* x, const Poly& a, const DkssPlan<W>& plan) {
  for (std::size_t i = 0; i < plan.m; ++i) {
    std::uint64_t v = a[i];
    for (std::size_t k = 0; k < plan.iclen; ++k) {
      x[i * plan.iclen + k] = static_cast<W>(v);
      v = word_bits<W> < 64 ? v >> (word_bits<W> % 64) : 0;
    }
  }
}

template <class W>
Poly random_poly(const DkssPlan<W>& plan) {
  Poly r(plan.m);
  for (auto& c : r) c = rng()() % plan_p(plan);
  return r;
}

template <class W>
std::vector<W> to_words(const std::vector<Poly>& v, const DkssPlan<W>& plan) {
  std::vector<W> out(v.size() * plan.oclen);
  for (std::size_t i = 0; i < v.size(); ++i) put(out.data() + i * plan.oclen, v[i], plan);
  return out;
}

template <class W>
std::vector<Poly> from_words(const std::vector<W>& w, const DkssPlan<W>& plan) {
  std::vector<Poly> out(w.size() / plan.oclen);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = get(w.data() + i * plan.oclen, plan);
  return out;
}

struct Toy {
  std::uint64_t p, zeta;
  std::size_t M, m, u;
};

template <class W>
DkssPlan<W> toy(const Toy& t) {
  return dkss_make_plan<W>(t.M * t.m / 2 * t.u, t.M, t.m, t.u, Natural<W>::from_uint(t.p), t.zeta);
}

std::uint64_t twiddles(std::size_t Mh, std::size_t m) {
  if (Mh <= m) return 0;
  std::size_t mu = Mh / m;
  return 2 * m * (mu - 1) + 2 * m * twiddles(mu / 2, m);
}

const Toy kToys[] = {
    {17, 3, 2, 2, 1},    {17, 3, 4, 2, 1},   {17, 3, 8, 2, 1},  {17, 3, 4, 4, 1},
    {17, 3, 8, 4, 1},    {193, 5, 8, 4, 1},  {97, 5, 8, 2, 1},  {40961, 3, 8, 4, 2},
    {40961, 3, 32, 4, 3}, {40961, 3, 64, 4, 3}, {40961, 3, 64, 8, 2},
};

}  // namespace

TEST_CASE("omega and the principal sum on toy plans") {
  DkssPlan<std::uint8_t> a = toy<std::uint8_t>({193, 5, 32, 2, 1});
  CHECK(a.omega.low_u64() == 125);
  for (const Toy& t : kToys) {
    auto plan = toy<std::uint16_t>(t);
    std::uint64_t p = t.p, w = plan.omega.low_u64(), n = 2 * t.M;
    // direct modular summation for every j
    for (std::uint64_t j = 1; j < n; ++j) {
      std::uint64_t s = 0, x = 1, wj = powmod(w, j, p);
      for (std::uint64_t i = 0; i < n; ++i, x = mulm(x, wj, p)) s = (s + x) % p;
      CHECK(s == 0);
    }
    CHECK(powmod(w, n, p) == 1);
    CHECK(principal_sum_check(plan.P, plan.omega, n));
    CHECK(plan.gamma.low_u64() == powmod(w, plan.mu, p));
    CHECK(mulm(plan.inv_2M.low_u64(), n, p) == 1);
  }
  // a root of too small an order fails
  auto plan = toy<std::uint16_t>(kToys[4]);
  CHECK_FALSE(principal_sum_check(plan.P, Natural<std::uint16_t>::from_uint(16), 8));
}

TEST_CASE("rho for m = 2 over Z/17 matches a brute-force search") {
  using W = std::uint8_t;
  for (std::size_t M : {2u, 4u, 8u}) {
    auto plan = toy<W>({17, 3, M, 2, 1});
    std::set<Poly> found;
    for (std::uint64_t c0 = 0; c0 < 17; ++c0)
      for (std::uint64_t c1 = 0; c1 < 17; ++c1) {
        Poly r{c0, c1};
        if (ppow(r, plan.mu, 17) == Poly{0, 1} && ppow(r, 2 * M, 17) == pone(2)) found.insert(r);
      }
    Poly rho = get(plan.rho.data(), plan);
    CHECK(found.count(rho) == 1);
    // the interpolation conditions rho(gamma^i) = omega^i, i odd
    std::uint64_t g = plan.gamma.low_u64(), w = plan.omega.low_u64();
    for (std::uint64_t i = 1; i < 4; i += 2)
      CHECK((rho[0] + rho[1] * powmod(g, i, 17)) % 17 == powmod(w, i, 17));
  }
}

TEST_CASE("roots on toy plans") {
  for (const Toy& t : kToys) {
    auto plan = toy<std::uint16_t>(t);
    CHECK(dkss_check_roots(plan));
    Poly rho = get(plan.rho.data(), plan);
    Poly alpha(t.m, 0);
    alpha[1] = 1;
    CHECK(ppow(rho, plan.mu, t.p) == alpha);
    CHECK(ppow(rho, 2 * t.M, t.p) == pone(t.m));
    // exactly mu cached powers
    CHECK(plan.rho_pow.size() == plan.mu * plan.oclen);
    for (std::size_t s = 0; s < plan.mu; ++s)
      CHECK(get(plan.rho_pow.data() + s * plan.oclen, plan) == ppow(rho, s, t.p));
  }
  CHECK_THROWS_AS(toy<std::uint8_t>({17, 3, 16, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(toy<std::uint8_t>({17, 3, 4, 8, 1}), std::invalid_argument);
}

TEST_CASE("r_mul against schoolbook multiplication mod (alpha^m+1, p)") {
  for (const Toy& t : kToys) {
    auto plan = toy<std::uint8_t>(t);
    std::vector<std::uint8_t> x(plan.oclen), y(plan.oclen), r(plan.oclen);
    for (int it = 0; it < 30; ++it) {
      Poly a = random_poly(plan), b = random_poly(plan);
      put(x.data(), a, plan);
      put(y.data(), b, plan);
      r_mul(r.data(), x.data(), y.data(), plan);
      CHECK(get(r.data(), plan) == pmul(a, b, t.p));
      // aliasing
      r_mul(x.data(), x.data(), x.data(), plan);
      CHECK(get(x.data(), plan) == pmul(a, a, t.p));
    }
    // identity and monomials
    Poly a = random_poly(plan);
    put(x.data(), a, plan);
    put(y.data(), pone(t.m), plan);
    r_mul(r.data(), x.data(), y.data(), plan);
    CHECK(get(r.data(), plan) == a);
    for (std::size_t i = 0; i < t.m; ++i)
      for (std::size_t j = 0; j < t.m; ++j) {
        Poly ai(t.m, 0), aj(t.m, 0), want(t.m, 0);
        ai[i] = 1;
        aj[j] = 1;
        std::size_t k = (i + j) % t.m;
        want[k] = (i + j) / t.m ? t.p - 1 : 1;
        put(x.data(), ai, plan);
        put(y.data(), aj, plan);
        r_mul(r.data(), x.data(), y.data(), plan);
        CHECK(get(r.data(), plan) == want);
        // and the shift path agrees
        poly_mul_xpow(r.data(), x.data(), j, plan);
        CHECK(get(r.data(), plan) == want);
      }
  }
}

TEST_CASE("r_mul with multi-word coefficients against GMP") {
  using W = std::uint64_t;
  const ProthTableEntry* e = proth_table_lookup(192);
  Natural<W> p = proth_value<W>(*e);
  auto plan = dkss_make_plan<W>(1 << 14, 64, 16, 40, p, e->g);
  mpz_class P = to_mpz(p);
  std::vector<W> x(plan.oclen), y(plan.oclen), r(plan.oclen);
  for (int it = 0; it < 10; ++it) {
    std::vector<mpz_class> a(plan.m), b(plan.m), want(plan.m, 0);
    for (std::size_t i = 0; i < plan.m; ++i) {
      a[i] = to_mpz(random_natural<W>(rng(), 3)) % P;
      b[i] = to_mpz(random_natural<W>(rng(), 3)) % P;
      mpn::zero(x.data() + i * 3, 3);
      mpn::zero(y.data() + i * 3, 3);
      Natural<W> na = testing::from_mpz<W>(a[i]), nb = testing::from_mpz<W>(b[i]);
      mpn::copy(x.data() + i * 3, na.data(), na.size());
      mpn::copy(y.data() + i * 3, nb.data(), nb.size());
    }
    for (std::size_t i = 0; i < plan.m; ++i)
      for (std::size_t j = 0; j < plan.m; ++j) {
        if (i + j < plan.m)
          want[i + j] += a[i] * b[j];
        else
          want[i + j - plan.m] -= a[i] * b[j];
      }
    r_mul(r.data(), x.data(), y.data(), plan);
    for (std::size_t k = 0; k < plan.m; ++k) {
      mpz_class wk = want[k] % P;
      if (wk < 0) wk += P;
      CHECK(testing::to_mpz(r.data() + k * 3, 3) == wk);
    }
  }
}

TEST_CASE("inner DFT against naive evaluation at alpha powers") {
  using W = std::uint16_t;
  for (const Toy& t : kToys) {
    auto plan = toy<W>(t);
    for (std::size_t len = 2; len <= 2 * t.m; len *= 2) {
      std::vector<Poly> v(len);
      for (auto& x : v) x = random_poly(plan);
      // root alpha^(2m/len)
      Poly root(t.m, 0);
      std::size_t e = 2 * t.m / len;
      if (e < t.m)
        root[e] = 1;
      else
        root[0] = t.p - 1;
      std::vector<Poly> want(len, Poly(t.m, 0));
      for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; j < len; ++j)
          want[i] = padd(want[i], pmul(v[j], ppow(root, i * j, t.p), t.p), t.p);
      auto words = to_words(shuffle(v), plan);
      dkss_inner_fft_eval(words.data(), len, plan);
      CHECK(from_words(words, plan) == want);
    }
    // linearity
    std::vector<Poly> x(2 * t.m), y(2 * t.m), s(2 * t.m);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = random_poly(plan);
      y[i] = random_poly(plan);
      s[i] = padd(x[i], y[i], t.p);
    }
    auto wx = to_words(x, plan), wy = to_words(y, plan), ws = to_words(s, plan);
    for (auto* w : {&wx, &wy, &ws}) dkss_inner_fft_eval(w->data(), 2 * t.m, plan);
    auto fx = from_words(wx, plan), fy = from_words(wy, plan), fs = from_words(ws, plan);
    for (std::size_t i = 0; i < fx.size(); ++i) CHECK(fs[i] == padd(fx[i], fy[i], t.p));
  }
}

TEST_CASE("dkss_fft against naive evaluation at rho powers") {
  for (const Toy& t : kToys) {
    auto plan = toy<std::uint16_t>(t);
    Poly rho = get(plan.rho.data(), plan);
    const std::size_t n = 2 * t.M;
    std::vector<Poly> a(n);
    for (auto& x : a) x = random_poly(plan);
    std::vector<Poly> want(n, Poly(t.m, 0));
    for (std::size_t i = 0; i < n; ++i) {
      Poly ri = ppow(rho, i, t.p), pw = pone(t.m);
      for (std::size_t j = 0; j < n; ++j, pw = pmul(pw, ri, t.p))
        want[i] = padd(want[i], pmul(a[j], pw, t.p), t.p);
    }
    auto words = to_words(a, plan);
    DkssStats before = dkss_stats();
    dkss_fft(words.data(), plan);
    DkssStats after = dkss_stats();
    CHECK(from_words(words, plan) == want);
    // one cyclic shift per twiddle and at most one r_mul with it
    std::uint64_t shifts = after.twiddle_shift - before.twiddle_shift;
    std::uint64_t muls = after.twiddle_mul - before.twiddle_mul;
    CHECK(shifts == twiddles(t.M, t.m));
    CHECK(muls <= shifts);
    CHECK(after.r_mul - before.r_mul == muls);
  }
}

TEST_CASE("bottom case equals the inner DFT") {
  auto plan = toy<std::uint8_t>({17, 3, 4, 4, 1});
  std::vector<Poly> a(8);
  for (auto& x : a) x = random_poly(plan);
  auto w1 = to_words(a, plan);
  auto w2 = to_words(shuffle(a), plan);
  dkss_fft(w1.data(), plan);
  dkss_inner_fft_eval(w2.data(), 8, plan);
  CHECK(w1 == w2);
}

TEST_CASE("twiddle exponents split into an alpha power and a cached rho power") {
  auto plan = toy<std::uint16_t>({40961, 3, 64, 4, 3});
  Poly rho = get(plan.rho.data(), plan);
  Poly alpha(plan.m, 0);
  alpha[1] = 1;
  for (std::uint64_t e = 0; e < 2 * plan.M; e += 7) {
    std::uint64_t r = e / plan.mu, s = e % plan.mu;
    Poly via = pmul(ppow(alpha, r, 40961), get(plan.rho_pow.data() + s * plan.oclen, plan), 40961);
    CHECK(via == ppow(rho, e, 40961));
  }
}

TEST_CASE("encode layout") {
  using W = std::uint16_t;
  auto plan = toy<W>({40961, 3, 8, 4, 2});
  auto z = dkss_encode(Natural<W>{0}, plan);
  CHECK(std::all_of(z.begin(), z.end(), [](W x) { return x == 0; }));
  auto one = dkss_encode(Natural<W>{1}, plan);
  CHECK(one[0] == 1);
  CHECK(std::count(one.begin(), one.end(), W(0)) == static_cast<long>(one.size() - 1));
  // a = sum c_{l,i} 2^(l*u*m/2 + i*u) with c < 2^u, upper halves zero
  Natural<W> a = random_natural<W>(rng(), 2);
  auto v = from_words(dkss_encode(a, plan), plan);
  mpz_class acc = 0;
  for (std::size_t l = 0; l < 2 * plan.M; ++l)
    for (std::size_t i = 0; i < plan.m; ++i) {
      if (l >= plan.M || i >= plan.m / 2) CHECK(v[l][i] == 0);
      CHECK(v[l][i] < (1u << plan.u));
      acc += mpz_class(v[l][i]) << (l * plan.u * plan.m / 2 + i * plan.u);
    }
  CHECK(acc == to_mpz(a));
}

TEST_CASE("forward transform twice inverts up to 2M and index reversal") {
  using W = std::uint16_t;
  for (const Toy& t : kToys) {
    auto plan = toy<W>(t);
    Natural<W> a = nat_low_bits(random_natural<W>(rng(), plan.N / 16 + 1), plan.N);
    auto v = dkss_encode(a, plan);
    dkss_fft(v.data(), plan);
    dkss_fft(v.data(), plan);
    CHECK(dkss_decode(v, plan) == Natural<W>(a).normalize());
    std::vector<W> zero(2 * plan.M * plan.oclen, 0);
    CHECK(dkss_decode(zero, plan).is_zero());
  }
}

TEST_CASE("toy products and the coefficient bound") {
  using W = std::uint8_t;
  for (const Toy& t : kToys) {
    auto plan = toy<W>(t);
    const std::size_t Mm = t.M * t.m;
    // the bound Mm * 2^(2u) must fit p for products to decode exactly
    bool fits = mpz_class(Mm) * (mpz_class(1) << (2 * t.u)) <= t.p;
    for (int it = 0; it < 10; ++it) {
      Natural<W> a = nat_low_bits(random_natural<W>(rng(), plan.N / 8 + 1), plan.N);
      Natural<W> b = nat_low_bits(random_natural<W>(rng(), plan.N / 8 + 1), plan.N);
      auto va = dkss_encode(a, plan), vb = dkss_encode(b, plan);
      auto ea = from_words(va, plan), eb = from_words(vb, plan);
      dkss_fft(va.data(), plan);
      dkss_fft(vb.data(), plan);
      for (std::size_t i = 0; i < 2 * t.M; ++i)
        r_mul(va.data() + i * plan.oclen, va.data() + i * plan.oclen, vb.data() + i * plan.oclen, plan);
      dkss_fft(va.data(), plan);
      // exact convolution of the encoded coefficients
      std::uint64_t maxc = 0;
      auto out = from_words(va, plan);
      const std::size_t n = 2 * t.M;
      std::uint64_t inv = plan.inv_2M.low_u64();
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < t.m; ++i) {
          std::uint64_t c = 0;
          for (std::size_t j = 0; j <= l; ++j)
            for (std::size_t s = 0; s <= i; ++s) c += ea[j][s] * eb[l - j][i - s];
          maxc = std::max(maxc, c);
          if (fits) CHECK(mulm(out[(n - l) % n][i], inv, t.p) == c);
        }
      CHECK(maxc < mpz_class(Mm) * (mpz_class(1) << (2 * t.u)));
      if (fits) CHECK(dkss_decode(va, plan) == omul(a, b).normalize());
    }
  }
}

TEST_CASE("parameter shapes of the profiled rows") {
  DkssShape a = dkss_shape(3648 * 64, 64);
  CHECK(a.m == 16);
  CHECK(a.d / 64 == 2);
  DkssShape b = dkss_shape(std::size_t{42991616} * 64, 64);
  CHECK(b.m == 32);
  CHECK(b.d / 64 == 3);
}

TEST_CASE("plan invariants for 2^10 to 2^24 bits") {
  using W = std::uint64_t;
  for (unsigned k = 10; k <= 24; ++k) {
    const std::size_t N = std::size_t{1} << k;
    DkssShape sh = dkss_shape(N, 64);
    const DkssPlan<W>& plan = dkss_plan_cached<W>(N);
    INFO(plan.trace);
    CHECK(is_pow2(plan.M));
    CHECK(is_pow2(plan.m));
    CHECK(plan.M >= plan.m);
    CHECK(plan.mu == plan.M / plan.m);
    CHECK(plan.u == ceil_div(2 * sh.N, plan.M * plan.m));
    CHECK(plan.N >= N);
    CHECK(plan.d % 64 == 0);
    CHECK(plan.z == 1);
    mpz_class P = to_mpz(plan.P.modulus());
    CHECK(mpz_sizeinbase(P.get_mpz_t(), 2) == plan.d);
    CHECK(P >= mpz_class(plan.M * plan.m) * (mpz_class(1) << (2 * plan.u)));
    CHECK((P - 1) % (2 * plan.M) == 0);
    CHECK(mpz_probab_prime_p(P.get_mpz_t(), 25) > 0);
    CHECK(dkss_check_roots(plan, 1024));
    CHECK(!plan.trace.empty());
  }
}

TEST_CASE("dmul against smul and GMP") {
  using W = std::uint64_t;
  Natural<W> a = random_natural<W>(rng(), 50);
  CHECK(dmul(a, Natural<W>{1}) == omul(a, Natural<W>{1}));
  CHECK(dmul(Natural<W>{0}, a).is_zero());
  for (std::size_t an = 1; an <= 24; ++an)
    for (std::size_t bn = 1; bn <= 24; bn += 5) {
      Natural<std::uint16_t> x = random_natural<std::uint16_t>(rng(), an);
      Natural<std::uint16_t> y = random_natural<std::uint16_t>(rng(), bn);
      CHECK(dmul(x, y) == omul(x, y));
    }
  for (std::size_t words : {1000u, 3000u, 3648u, 10000u, 28160u}) {
    Natural<W> x = random_natural<W>(rng(), words), y = random_natural<W>(rng(), words - 3);
    Natural<W> r = dmul(x, y);
    CHECK(r == smul(x, y));
    CHECK(to_mpz(r) == to_mpz(x) * to_mpz(y));
  }
  Natural<W> ones = all_ones<W>(3648);
  CHECK(dmul(ones, ones) == smul(ones, ones));
}

TEST_CASE("peak scratch stays within 25N to 33N bits") {
  using W = std::uint64_t;
  for (std::size_t words : {3648u, 7168u, 14336u, 28160u}) {
    Natural<W> x = random_natural<W>(rng(), words), y = random_natural<W>(rng(), words);
    x.data()[words - 1] |= W{1} << 63;
    y.data()[words - 1] |= W{1} << 63;
    dkss_plan_cached<W>(words * 64);
    std::vector<W> r(2 * words);
    ArenaPeakScope scope;
    dmul_n(r.data(), x.data(), words, y.data(), words);
    double ratio = 8.0 * static_cast<double>(scope.peak_bytes()) / (64.0 * words);
    INFO(words << " words, ratio " << ratio);
    CHECK(ratio >= 25.0);
    CHECK(ratio <= 33.0);
  }
}
