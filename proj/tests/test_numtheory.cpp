#include <doctest.h>

#include <numeric>

#include "bigmul/numtheory.hpp"
#include "support.hpp"

using namespace bigmul;
using testing::from_mpz;
using testing::mpz_u64;
using testing::rng;
using testing::to_mpz;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

Factorization trial_factor(std::uint64_t n) {
  Factorization f;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    unsigned e = 0;
    while (n % q == 0) n /= q, ++e;
    if (e) f.factors.push_back({q, e});
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

bool is_generator(const mpz_class& p, const mpz_class& g) {
  std::vector<mpz_class> qs;
  mpz_class n = p - 1, t;
  for (unsigned long q = 2; mpz_class(q) * q <= n; ++q)
    if (n % q == 0) {
      qs.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) qs.push_back(n);
  for (const mpz_class& q : qs) {
    mpz_class e = (p - 1) / q;
    mpz_powm(t.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (t == 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("powmod") {
  CHECK(powmod(12345, 0, 97) == 1);
  CHECK(powmod(3, 71, 10232178353385766913ull) == 3419711604162223203ull);
  for (int it = 0; it < 300; ++it) {
    std::uint64_t m = 2 + rng()() % 1000, b = rng()() % 5000, e = rng()() % 60;
    std::uint64_t want = 1 % m;
    for (std::uint64_t i = 0; i < e; ++i) want = want * (b % m) % m;
    CHECK(powmod(b, e, m) == want);
  }
  using W = std::uint32_t;
  auto P = Natural<W>::from_uint(10232178353385766913ull);
  CHECK(powmod(Natural<W>::from_uint(3), Natural<W>::from_uint(71), P).low_u64() ==
        3419711604162223203ull);
  for (int it = 0; it < 30; ++it) {
    Natural<W> b = random_natural<W>(rng(), 9), e = random_natural<W>(rng(), 3),
               m = random_natural<W>(rng(), 6);
    m.data()[0] |= 1;
    mpz_class want;
    mpz_powm(want.get_mpz_t(), to_mpz(b).get_mpz_t(), to_mpz(e).get_mpz_t(), to_mpz(m).get_mpz_t());
    CHECK(to_mpz(powmod(b, e, m)) == want);
    CHECK(to_mpz(mulmod(b, e, m)) == to_mpz(b) * to_mpz(e) % to_mpz(m));
  }
}

TEST_CASE("modinv") {
  CHECK(modinv(1, 1000) == 1);
  std::uint64_t found = 0;
  for (std::uint64_t x = 1; x < 17; ++x)
    if (2 * x % 17 == 1) found = x;
  CHECK(modinv(2, 17) == found);
  CHECK(found == 9);
  for (int it = 0; it < 500; ++it) {
    std::uint64_t m = 2 + rng()() % 100000, x = rng()() % m;
    if (std::gcd(x, m) != 1) {
      CHECK_THROWS_AS(modinv(x, m), NotInvertible);
      continue;
    }
    CHECK(mulmod_u64(x, modinv(x, m), m) == 1 % m);
  }
  using W = std::uint16_t;
  Natural<W> p = proth_value<W>(*proth_table_lookup(128));
  for (int it = 0; it < 20; ++it) {
    Natural<W> x = nat_mod(random_natural<W>(rng(), 8), p);
    if (x.is_zero()) continue;
    mpz_class want;
    mpz_invert(want.get_mpz_t(), to_mpz(x).get_mpz_t(), to_mpz(p).get_mpz_t());
    CHECK(to_mpz(modinv(x, p)) == want);
  }
  CHECK_THROWS_AS(modinv(Natural<W>::from_uint(6), Natural<W>::from_uint(9)), NotInvertible);
}

TEST_CASE("factor_smooth") {
  CHECK(factor_smooth(192) == Factorization{{{2, 6}, {3, 1}}});
  CHECK(factor_smooth(40960) == Factorization{{{2, 13}, {5, 1}}});
  for (int it = 0; it < 300; ++it) {
    std::uint64_t h = (rng()() % 1000) | 1;
    std::uint64_t n = h << (1 + rng()() % 40);
    CHECK(factor_smooth(n) == trial_factor(n));
  }
  // a cofactor with two primes above the trial bound cannot be factored
  std::uint64_t big = 1048583ull * 1048601ull;
  CHECK_THROWS(factor_smooth(big));
  using W = std::uint64_t;
  Natural<W> n = Natural<W>::from_hex("3");  // 3 * 2^300
  n = nat_shl(n, 300);
  CHECK(factor_smooth(n) == Factorization{{{2, 300}, {3, 1}}});
}

TEST_CASE("lucas test examples") {
  CHECK(lucas_prime_test(193, factor_smooth(192)));
  CHECK_FALSE(lucas_prime_test(33, factor_smooth(32)));
  CHECK(lucas_prime_test(40961, factor_smooth(40960)));
  CHECK_THROWS_AS(lucas_prime_test(193, Factorization{{{2, 6}}}), std::invalid_argument);
}

TEST_CASE("lucas test matches trial division on Proth numbers below 10^6") {
  int checked = 0, bad = 0;
  for (unsigned k = 1; k < 20; ++k)
    for (std::uint64_t h = 1; h < (std::uint64_t{1} << k); h += 2) {
      std::uint64_t n = (h << k) + 1;
      if (n >= 1000000) break;
      bad += lucas_prime_test(n, factor_smooth(n - 1)) != trial_prime(n);
      ++checked;
    }
  CHECK(bad == 0);
  CHECK(checked > 1000);
}

TEST_CASE("find_proth_prime") {
  ProthPrime a = find_proth_prime(64, 8);
  CHECK(a.h == 3);
  CHECK(a.g == 5);
  CHECK(a.p.low_u64() == 193);
  ProthPrime b = find_proth_prime(std::uint64_t{1} << 57, 64);
  CHECK(b.h == 71);
  CHECK(b.g == 3);
  CHECK(b.p.low_u64() == 10232178353385766913ull);
  for (auto [twoM, bits] : {std::pair{16ull, 20u}, {1024ull, 40u}, {1ull << 20, 64u}}) {
    ProthPrime p = find_proth_prime(twoM, bits);
    mpz_class P = to_mpz(p.p);
    CHECK(mpz_probab_prime_p(P.get_mpz_t(), 40) > 0);
    CHECK(mpz_sizeinbase(P.get_mpz_t(), 2) >= bits);
    CHECK((P - 1) % mpz_u64(twoM) == 0);
    CHECK(is_generator(P, mpz_u64(p.g)));
    // nothing smaller of that shape
    for (std::uint64_t h = (p.h > 50 ? p.h - 50 : 1) | 1; h < p.h; h += 2) {
      mpz_class q = mpz_u64(h) * mpz_u64(twoM) + 1;
      if (mpz_sizeinbase(q.get_mpz_t(), 2) >= bits) CHECK(mpz_probab_prime_p(q.get_mpz_t(), 30) == 0);
    }
  }
}

TEST_CASE("find_generator") {
  using W = std::uint64_t;
  for (std::uint64_t p : {193ull, 257ull, 40961ull, 3489660929ull, 998244353ull}) {
    auto P = Natural<W>::from_uint(p);
    std::uint64_t g = find_generator(P, factor_smooth(p - 1));
    CHECK(is_generator(mpz_u64(p), mpz_u64(g)));
    // smallest prime candidate
    for (std::uint64_t c : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull})
      if (c < g) CHECK_FALSE(is_generator(mpz_u64(p), mpz_u64(c)));
  }
}

TEST_CASE("hensel_lift") {
  using W = std::uint64_t;
  auto nat = [](std::uint64_t x) { return Natural<W>::from_uint(x); };
  CHECK(hensel_lift(nat(2), nat(5), 1) == nat(2));
  // oracle: exhaustive search mod 25 for x = 2 mod 5 with x^4 = 1
  std::uint64_t want = 0;
  for (std::uint64_t x = 2; x < 25; x += 5)
    if (x * x * x * x % 25 == 1) want = x;
  CHECK(want == 7);
  CHECK(hensel_lift(nat(2), nat(5), 2) == nat(want));
  Natural<W> z3 = hensel_lift(nat(3), nat(17), 3);
  mpz_class t, e = 16, mod = 17 * 17 * 17;
  mpz_powm(t.get_mpz_t(), to_mpz(z3).get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  CHECK(t == 1);
  CHECK(to_mpz(z3) % 17 == 3);
  // lifting to z then reducing mod p^(z-1) gives the lift to z-1
  for (unsigned z = 2; z <= 6; ++z) {
    mpz_class pz1;
    mpz_ui_pow_ui(pz1.get_mpz_t(), 193, z - 1);
    CHECK(to_mpz(hensel_lift(nat(5), nat(193), z)) % pz1 == to_mpz(hensel_lift(nat(5), nat(193), z - 1)));
  }
}

TEST_CASE("shipped Proth table") {
  auto table = proth_table();
  REQUIRE(table.size() == 1704 / 8);
  unsigned expect_bits = 8;
  for (const ProthTableEntry& e : table) {
    CHECK(e.bits == expect_bits);
    expect_bits += 8;
    CHECK(e.h % 2 == 1);
    Natural<std::uint64_t> p = proth_value<std::uint64_t>(e);
    mpz_class P = to_mpz(p);
    CHECK(mpz_sizeinbase(P.get_mpz_t(), 2) == e.bits);
    CHECK(mpz_probab_prime_p(P.get_mpz_t(), 25) > 0);
    CHECK(is_generator(P, mpz_u64(e.g)));
    // same value for every word size
    CHECK(to_mpz(proth_value<std::uint8_t>(e)) == P);
    CHECK(proth_table_lookup(e.bits) == &e);
  }
  CHECK(proth_table_lookup(12) == nullptr);
  CHECK(proth_table_lookup(1712) == nullptr);
  // small rows also pass our own Lucas test and match a fresh search
  for (unsigned bits : {8u, 16u, 64u, 128u, 192u}) {
    const ProthTableEntry* e = proth_table_lookup(bits);
    Natural<std::uint64_t> p = proth_value<std::uint64_t>(*e);
    Natural<std::uint64_t> pm1 = nat_sub_abs(p, Natural<std::uint64_t>::from_uint(1)).value;
    CHECK(lucas_prime_test(p, factor_smooth(pm1)));
    ProthPrime fresh = proth_prime_for_bits(bits);
    CHECK(fresh.h == e->h);
    CHECK(fresh.g == e->g);
  }
}
