#include <doctest.h>

#include "bigmul/basecase.hpp"
#include "support.hpp"

using namespace bigmul;
using testing::rng;
using testing::to_mpz;

TEST_CASE_TEMPLATE("omul examples", W, std::uint8_t, std::uint16_t, std::uint32_t, std::uint64_t) {
  Natural<W> a = random_natural<W>(rng(), 11);
  CHECK(omul(a, Natural<W>{1}) == a);
  CHECK(omul(Natural<W>{0}, a).is_zero());
  Natural<W> m = all_ones<W>(2);
  mpz_class base = mpz_class(1) << word_bits<W>;
  mpz_class want = (base * base - 1) * (base * base - 1);
  Natural<W> r = omul(m, m);
  CHECK(r.size() == 4);
  CHECK(to_mpz(r) == want);
}

TEST_CASE_TEMPLATE("all length pairs 1..64 at small words", W, std::uint8_t, std::uint16_t) {
  ThresholdTable th;
  th.kmul = 4;
  th.t3mul = 9;
  long bad = 0;
  for (std::size_t an = 1; an <= 64; ++an)
    for (std::size_t bn = 1; bn <= 64; ++bn) {
      Natural<W> a = random_natural<W>(rng(), an), b = random_natural<W>(rng(), bn);
      Natural<W> o = omul(a, b);
      bad += to_mpz(o) != to_mpz(a) * to_mpz(b);
      bad += !(kmul(a, b, th) == o);
      bad += !(t3mul(a, b, th) == o);
    }
  CHECK(bad == 0);
}

TEST_CASE("kmul and t3mul random pairs equal omul") {
  using W = std::uint64_t;
  ThresholdTable th;
  th.kmul = 6;
  th.t3mul = 20;
  int bad = 0;
  for (int it = 0; it < 1000; ++it) {
    std::size_t an = 1 + rng()() % 256, bn = 1 + rng()() % 256;
    Natural<W> a = random_natural<W>(rng(), an), b = random_natural<W>(rng(), bn);
    Natural<W> o = omul(a, b);
    bad += !(kmul(a, b, th) == o);
    bad += !(t3mul(a, b, th) == o);
  }
  CHECK(bad == 0);
  for (int it = 0; it < 40; ++it) {
    std::size_t an = 1 + rng()() % 1024, bn = 1 + rng()() % 1024;
    Natural<W> a = random_natural<W>(rng(), an), b = random_natural<W>(rng(), bn);
    bad += !(t3mul(a, b) == omul(a, b));
  }
  CHECK(bad == 0);
}

TEST_CASE("all-ones stress") {
  using W = std::uint64_t;
  Natural<W> a = all_ones<W>(100);
  Natural<W> o = omul(a, a);
  CHECK(to_mpz(o) == to_mpz(a) * to_mpz(a));
  ThresholdTable th;
  th.kmul = 4;
  th.t3mul = 12;
  CHECK(kmul(a, a, th) == o);
  CHECK(t3mul(a, a, th) == o);
  CHECK(kmul(a, a) == o);
}

TEST_CASE("below threshold kmul is omul") {
  using W = std::uint64_t;
  ThresholdTable th;
  KaratsubaTrace trace;
  Natural<W> a = random_natural<W>(rng(), th.kmul - 1), b = random_natural<W>(rng(), 50);
  CHECK(kmul(a, b, th, &trace) == omul(a, b));
  REQUIRE(trace.calls.size() == 1);
  CHECK(trace.calls[0] == 1);
}

TEST_CASE("Karatsuba makes 3^j calls at depth j") {
  using W = std::uint32_t;
  ThresholdTable th;
  th.kmul = 8;
  for (unsigned k = 3; k <= 10; ++k) {
    std::size_t n = std::size_t{1} << k;
    KaratsubaTrace trace;
    Natural<W> a = random_natural<W>(rng(), n), b = random_natural<W>(rng(), n);
    CHECK(kmul(a, b, th, &trace) == omul(a, b));
    // halving stops once the length drops below 8
    REQUIRE(trace.calls.size() == k - 1);
    std::size_t p = 1;
    for (std::size_t j = 0; j < trace.calls.size(); ++j, p *= 3) CHECK(trace.calls[j] == p);
  }
}

TEST_CASE("Karatsuba middle product under all four sign combinations") {
  using W = std::uint64_t;
  ThresholdTable th;
  th.kmul = 2;
  const W big = 0xF000000000000000ull, small = 3;
  for (bool ahi : {false, true})
    for (bool bhi : {false, true}) {
      // two-word operands; the high word is bigger or smaller than the low word
      Natural<W> a{ahi ? small : big, ahi ? big : small};
      Natural<W> b{bhi ? small : big, bhi ? big : small};
      KaratsubaTrace trace;
      Natural<W> r = kmul(a, b, th, &trace);
      CHECK(to_mpz(r) == to_mpz(a) * to_mpz(b));
      CHECK(trace.calls.size() == 2);
    }
  // equal halves give a zero middle difference
  Natural<W> e{7, 7};
  CHECK(kmul(e, e, th) == omul(e, e));
}

TEST_CASE("t3mul unbalanced 300 by 7 words") {
  using W = std::uint64_t;
  Natural<W> a = random_natural<W>(rng(), 300), b = random_natural<W>(rng(), 7);
  ThresholdTable th;
  th.kmul = 3;
  th.t3mul = 6;
  CHECK(t3mul(a, b, th) == omul(a, b));
  CHECK(t3mul(b, a, th) == omul(a, b));
  CHECK(t3mul(a, b) == omul(a, b));
  CHECK(t3mul(a, Natural<W>{1}) == omul(a, Natural<W>{1}));
}
