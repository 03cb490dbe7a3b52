#include <doctest.h>

#include <numeric>

#include "bigmul/fermat.hpp"
#include "support.hpp"

using namespace bigmul;
using testing::from_mpz;
using testing::rng;
using testing::to_mpz;

namespace {

template <class W>
FermatElement<W> fe(std::size_t K, const mpz_class& v) {
  return FermatElement<W>(K, from_mpz<W>(v));
}

template <class W>
FermatElement<W> random_fe(std::size_t K) {
  mpz_class mod = (mpz_class(1) << K) + 1;
  Natural<W> x = random_natural<W>(rng(), K / word_bits<W> + 1);
  return FermatElement<W>(K, from_mpz<W>(to_mpz(x) % mod));
}

unsigned v2(unsigned x) {
  unsigned r = 0;
  while (x % 2 == 0) x /= 2, ++r;
  return r;
}

}  // namespace

TEST_CASE("K = 8 examples with byte words") {
  using W = std::uint8_t;
  auto v = [](const FermatElement<W>& x) { return to_mpz(x.value()); };
  CHECK(v(fe_add(fe<W>(8, 0), fe<W>(8, 77))) == 77);
  CHECK(v(fe_add(fe<W>(8, 200), fe<W>(8, 100))) == 43);
  CHECK(v(fe_add(fe<W>(8, 256), fe<W>(8, 1))) == 0);
  CHECK(v(fe_sub(fe<W>(8, 91), fe<W>(8, 91))) == 0);
  CHECK(v(fe_sub(fe<W>(8, 0), fe<W>(8, 1))) == 256);
  CHECK(v(fe_sub(fe<W>(8, 5), fe<W>(8, 200))) == 62);
  CHECK(v(fe_mul_pow2(fe<W>(8, 1), 8)) == 256);
  CHECK(v(fe_mul_pow2(fe<W>(8, 123), 0)) == 123);
  CHECK(v(fe_neg(fe<W>(8, 256))) == 1);
  CHECK(v(fe_neg(fe<W>(8, 0))) == 0);
  // reduction on construction
  CHECK(v(fe<W>(8, 257 * 3 + 11)) == 11);
  CHECK_THROWS_AS(FermatElement<W>(12), std::invalid_argument);
}

TEST_CASE("exhaustive arithmetic mod 257") {
  using W = std::uint8_t;
  int bad = 0;
  for (unsigned x = 0; x <= 256; ++x)
    for (unsigned y = 0; y <= 256; ++y) {
      auto a = fe<W>(8, x), b = fe<W>(8, y);
      bad += to_mpz(fe_add(a, b).value()) != (x + y) % 257;
      bad += to_mpz(fe_sub(a, b).value()) != (x + 257 - y) % 257;
      bad += to_mpz(fe_mul(a, b).value()) != (x * y) % 257;
      auto s = fe_add(a, b);
      bad += !fermat::is_normalized(s.data(), s.L());
    }
  CHECK(bad == 0);
}

TEST_CASE_TEMPLATE("2 is a primitive 2K-th root", W, std::uint8_t, std::uint16_t) {
  for (std::size_t K = word_bits<W>; K <= 32; K += word_bits<W>) {
    auto one = fe<W>(K, 1);
    int ones = 0;
    for (std::uint64_t u = 1; u < 2 * K; ++u) ones += fe_mul_pow2(one, u) == one;
    CHECK(ones == 0);
    CHECK(fe_mul_pow2(fe_mul_pow2(one, K), K) == one);
    CHECK(to_mpz(fe_mul_pow2(one, K).value()) == (mpz_class(1) << K));
  }
}

TEST_CASE("gcd of 2^a-1 and 2^b+1") {
  // 1 when v2(a) <= v2(b), else 2^gcd(a,b)+1
  for (unsigned a = 1; a <= 40; ++a)
    for (unsigned b = 1; b <= 40; ++b) {
      mpz_class x = (mpz_class(1) << a) - 1, y = (mpz_class(1) << b) + 1, g;
      mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      unsigned ab = std::gcd(a, b);
      mpz_class want = v2(a) <= v2(b) ? mpz_class(1) : (mpz_class(1) << ab) + 1;
      CHECK(g == want);
    }
}

TEST_CASE_TEMPLATE("cyclic shifts", W, std::uint8_t, std::uint32_t, std::uint64_t) {
  for (std::size_t K : {std::size_t(word_bits<W>), std::size_t(2 * word_bits<W>), std::size_t(64),
                        std::size_t(192)}) {
    if (K % word_bits<W>) continue;
    mpz_class mod = (mpz_class(1) << K) + 1;
    for (int it = 0; it < 20; ++it) {
      auto x = random_fe<W>(K);
      CHECK(fe_mul_pow2(x, 2 * K) == x);
      CHECK(fe_mul_pow2(x, 0) == x);
      std::uint64_t e1 = rng()() % (2 * K), e2 = rng()() % (2 * K);
      CHECK(fe_mul_pow2(x, (e1 + e2) % (2 * K)) == fe_mul_pow2(fe_mul_pow2(x, e1), e2));
      mpz_class want = (to_mpz(x.value()) << e1) % mod;
      CHECK(to_mpz(fe_mul_pow2(x, e1).value()) == want);
    }
    // x = 2^K is the awkward normalized value
    auto top = fe<W>(K, mpz_class(1) << K);
    for (std::uint64_t e = 0; e < 2 * K; e += 3)
      CHECK(to_mpz(fe_mul_pow2(top, e).value()) == ((mpz_class(1) << K) << e) % mod);
  }
}

TEST_CASE_TEMPLATE("word path and bit path agree on every shift", W, std::uint8_t, std::uint64_t) {
  const std::size_t K = 4 * word_bits<W>, L = K / word_bits<W>;
  std::vector<W> tmp(2 * L + 2), fast(L + 1), slow(L + 1);
  for (int it = 0; it < 6; ++it) {
    auto x = it == 0 ? fe<W>(K, mpz_class(1) << K) : random_fe<W>(K);
    for (std::uint64_t e = 0; e < 2 * K; ++e) {
      fermat::mul_pow2(fast.data(), x.data(), L, e, tmp.data());
      fermat::mul_pow2_bitwise(slow.data(), x.data(), L, e);
      if (fast != slow) FAIL("shift " << e);
      CHECK(fermat::is_normalized(fast.data(), L));
    }
  }
}

TEST_CASE_TEMPLATE("products and reduce against GMP", W, std::uint16_t, std::uint64_t) {
  for (std::size_t K : {std::size_t(64), std::size_t(640), std::size_t(64 * 70)}) {
    mpz_class mod = (mpz_class(1) << K) + 1;
    for (int it = 0; it < 10; ++it) {
      auto x = random_fe<W>(K), y = random_fe<W>(K);
      CHECK(to_mpz(fe_mul(x, y).value()) == to_mpz(x.value()) * to_mpz(y.value()) % mod);
      CHECK(to_mpz(fe_add(x, y).value()) == (to_mpz(x.value()) + to_mpz(y.value())) % mod);
    }
    auto top = fe<W>(K, mpz_class(1) << K);
    CHECK(to_mpz(fe_mul(top, top).value()) == 1);
    // reduce of a long value
    const std::size_t L = K / word_bits<W>;
    Natural<W> a = random_natural<W>(rng(), 3 * L + 5);
    std::vector<W> r(L + 1);
    fermat::reduce(r.data(), L, a.data(), a.size());
    CHECK(testing::to_mpz(r.data(), L + 1) == to_mpz(a) % mod);
  }
}

TEST_CASE("fold handles large signed carries") {
  using W = std::uint8_t;
  const std::size_t L = 2, K = 16;
  mpz_class mod = (mpz_class(1) << K) + 1;
  for (std::int64_t t : {-1000, -300, -2, -1, 0, 1, 2, 255, 256, 999})
    for (unsigned v : {0u, 1u, 255u, 65535u}) {
      std::vector<W> r{W(v & 255), W(v >> 8), 0};
      fermat::fold(r.data(), L, t);
      mpz_class want = (mpz_class(v) + mpz_class(std::to_string(t)) * (mpz_class(1) << K)) % mod;
      if (want < 0) want += mod;
      CHECK(testing::to_mpz(r.data(), 3) == want);
      CHECK(fermat::is_normalized(r.data(), L));
    }
}
