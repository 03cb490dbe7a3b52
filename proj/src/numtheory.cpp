#include "bigmul/numtheory.hpp"

#include <algorithm>

#include "bigmul/basecase.hpp"

namespace bigmul {

namespace {

using u128 = unsigned __int128;

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> v;
    const std::uint64_t limit = 4096;
    std::vector<bool> comp(limit, false);
    for (std::uint64_t i = 2; i < limit; ++i) {
      if (comp[i]) continue;
      v.push_back(i);
      for (std::uint64_t j = i * i; j < limit; j += i) comp[j] = true;
    }
    return v;
  }();
  return primes;
}

bool is_small_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

void push_factor(Factorization& f, std::uint64_t q, unsigned e) {
  if (e == 0) return;
  for (auto& [p, k] : f.factors)
    if (p == q) {
      k += e;
      return;
    }
  f.factors.emplace_back(q, e);
  std::sort(f.factors.begin(), f.factors.end());
}

// Trial division of an odd cofactor that fits 64 bits.
void factor_odd_u64(std::uint64_t n, Factorization& f) {
  for (std::uint64_t d = 3; d <= kTrialDivisionBound && d * d <= n; d += 2) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    push_factor(f, d, e);
  }
  if (n > 1) {
    if (static_cast<u128>(kTrialDivisionBound) * kTrialDivisionBound < n)
      throw std::domain_error("factor_smooth: cofactor above trial-division bound");
    push_factor(f, n, 1);
  }
}

template <Word W>
Natural<W> from_u64(std::uint64_t v) {
  return Natural<W>::from_uint(v);
}

template <Word W>
Natural<W> product_of(const Factorization& f) {
  Natural<W> r = from_u64<W>(1);
  for (auto [q, e] : f.factors)
    for (unsigned i = 0; i < e; ++i) r = t3mul(r, from_u64<W>(q)).normalize();
  return r;
}

template <Word W>
Natural<W> sub_small(const Natural<W>& a, std::uint64_t b) {
  return nat_sub_abs(a, from_u64<W>(b)).value;
}

template <Word W>
bool is_one(const Natural<W>& a) {
  return a == from_u64<W>(1);
}

template <Word W>
Natural<W> div_small(const Natural<W>& a, std::uint64_t q) {
  Natural<W> quo;
  nat_divmod(a, from_u64<W>(q), &quo, static_cast<Natural<W>*>(nullptr));
  return quo;
}

}  // namespace

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("powmod: modulus < 2");
  std::uint64_t r = 1;
  base %= modulus;
  for (; exp; exp >>= 1, base = mulmod_u64(base, base, modulus))
    if (exp & 1) r = mulmod_u64(r, base, modulus);
  return r;
}

std::uint64_t modinv(std::uint64_t x, std::uint64_t modulus) {
  // extended Euclid with the cofactor kept reduced
  __int128 r0 = modulus, r1 = x % modulus, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t % static_cast<__int128>(modulus);
  }
  if (r0 != 1) throw NotInvertible("modinv: not invertible");
  __int128 m = modulus;
  return static_cast<std::uint64_t>(((s0 % m) + m) % m);
}

Factorization factor_smooth(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factor_smooth: zero");
  Factorization f;
  unsigned e = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++e;
  }
  push_factor(f, 2, e);
  factor_odd_u64(n, f);
  return f;
}

bool lucas_prime_test(std::uint64_t n, const Factorization& f) {
  return lucas_prime_test(Natural<std::uint64_t>::from_uint(n), f);
}

template <Word W>
Natural<W> mulmod(const Natural<W>& a, const Natural<W>& b, const Natural<W>& m) {
  return nat_mod(t3mul(a, b), m).normalize();
}

template <Word W>
Natural<W> powmod(const Natural<W>& base, const Natural<W>& exp, const Natural<W>& modulus) {
  if (nat_cmp(modulus, from_u64<W>(2)) < 0) throw std::invalid_argument("powmod: modulus < 2");
  Natural<W> b = nat_mod(base, modulus).normalize();
  Natural<W> r = nat_mod(from_u64<W>(1), modulus).normalize();
  for (std::size_t i = exp.bit_length(); i-- > 0;) {
    r = mulmod(r, r, modulus);
    if (exp.bit(i)) r = mulmod(r, b, modulus);
  }
  return r;
}

template <Word W>
Natural<W> modinv(const Natural<W>& x, const Natural<W>& modulus) {
  Natural<W> r0 = Natural<W>(modulus).normalize();
  Natural<W> r1 = nat_mod(x, modulus).normalize();
  Natural<W> s0 = from_u64<W>(0), s1 = from_u64<W>(1);
  while (!r1.is_zero()) {
    Natural<W> q, rem;
    nat_divmod(r0, r1, &q, &rem);
    r0 = std::move(r1);
    r1 = rem.normalize();
    // s0 - q*s1 mod m
    Natural<W> qs = mulmod(q, s1, modulus);
    Natural<W> t = nat_sub_abs(nat_add(s0, modulus), qs).value;
    t = nat_mod(t, modulus).normalize();
    s0 = std::move(s1);
    s1 = std::move(t);
  }
  if (!is_one(r0)) throw NotInvertible("modinv: not invertible");
  return nat_mod(s0, modulus).normalize();
}

template <Word W>
Factorization factor_smooth(const Natural<W>& n) {
  if (n.is_zero()) throw std::invalid_argument("factor_smooth: zero");
  Factorization f;
  std::size_t tz = 0;
  while (!n.bit(tz)) ++tz;
  push_factor(f, 2, static_cast<unsigned>(tz));
  Natural<W> odd = nat_shr(n, tz).normalize();
  if (odd.bit_length() <= 64) {
    factor_odd_u64(odd.low_u64(), f);
    return f;
  }
  for (std::uint64_t d = 3; d <= kTrialDivisionBound; d += 2) {
    Natural<W> dn = from_u64<W>(d);
    while (true) {
      Natural<W> q, r;
      nat_divmod(odd, dn, &q, &r);
      if (!r.is_zero()) break;
      odd = q.normalize();
      push_factor(f, d, 1);
    }
    if (odd.bit_length() <= 64) {
      factor_odd_u64(odd.low_u64(), f);
      return f;
    }
  }
  throw std::domain_error("factor_smooth: cofactor above trial-division bound");
}

template <Word W>
bool lucas_prime_test(const Natural<W>& n, const Factorization& f) {
  Natural<W> one = from_u64<W>(1);
  if (nat_cmp(n, from_u64<W>(2)) < 0) {
    if (!f.factors.empty())
      throw std::invalid_argument("lucas_prime_test: factorization does not match n-1");
    return false;
  }
  Natural<W> nm1 = sub_small(n, 1);
  if (!(product_of<W>(f) == nm1))
    throw std::invalid_argument("lucas_prime_test: factorization does not match n-1");
  if (is_one(nm1)) return true;  // n = 2
  std::vector<Natural<W>> exps;
  for (auto [q, e] : f.factors) exps.push_back(div_small(nm1, q));
  const std::uint64_t limit = 1u << 17;
  for (std::uint64_t a = 2; a < limit; ++a) {
    Natural<W> an = from_u64<W>(a);
    if (nat_cmp(an, n) >= 0) break;
    if (!is_one(powmod(an, nm1, n))) return false;
    bool all = true;
    for (const auto& ex : exps)
      if (is_one(powmod(an, ex, n))) {
        all = false;
        break;
      }
    if (all) return true;
  }
  if (nat_cmp(from_u64<W>(limit), n) < 0)
    throw std::runtime_error("lucas_prime_test: witness search exhausted");
  return false;
}

template <Word W>
std::uint64_t find_generator(const Natural<W>& p, const Factorization& f) {
  Natural<W> pm1 = sub_small(p, 1);
  std::vector<Natural<W>> exps;
  for (auto [q, e] : f.factors) exps.push_back(div_small(pm1, q));
  for (std::uint64_t g = 2; g < (1u << 20); ++g) {
    if (!is_small_prime(g)) continue;
    Natural<W> gn = from_u64<W>(g);
    if (nat_cmp(gn, p) >= 0) break;
    bool ok = true;
    for (const auto& ex : exps)
      if (is_one(powmod(gn, ex, p))) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::runtime_error("find_generator: no generator found");
}

template <Word W>
Natural<W> hensel_lift(const Natural<W>& zeta, const Natural<W>& p, unsigned target_z) {
  if (target_z == 0) throw std::invalid_argument("hensel_lift: target_z must be >= 1");
  Natural<W> pm1 = sub_small(p, 1);
  if (!is_one(powmod(zeta, pm1, p)))
    throw std::invalid_argument("hensel_lift: zeta^(p-1) != 1 mod p");
  Natural<W> z = nat_mod(zeta, p).normalize();
  Natural<W> q = Natural<W>(p).normalize();
  Natural<W> pm2 = sub_small(p, 2);
  for (unsigned s = 1; s < target_z; ++s) {
    q = t3mul(q, p).normalize();  // p^(s+1)
    // z <- z - f(z)/f'(z), f(x) = x^(p-1) - 1
    Natural<W> fz = nat_add(powmod(z, pm1, q), sub_small(q, 1));
    fz = nat_mod(fz, q).normalize();
    Natural<W> dz = mulmod(pm1, powmod(z, pm2, q), q);
    Natural<W> step = mulmod(fz, modinv(dz, q), q);
    z = nat_mod(nat_sub_abs(nat_add(z, q), step).value, q).normalize();
  }
  return z;
}

namespace {

using N64 = Natural<std::uint64_t>;

// p = h*2^k + 1; sieve, Fermat base 2, then Lucas with the known factorization.
bool proth_is_prime(const N64& p, std::uint64_t h, unsigned k, Factorization& f) {
  for (std::uint64_t q : small_primes()) {
    if (q == 2) continue;
    std::uint64_t r = (h % q) * powmod(2, k, q) % q;
    r = (r + 1) % q;
    if (r == 0) {
      if (p == N64::from_uint(q)) break;
      return false;
    }
  }
  N64 pm1 = sub_small(p, 1);
  if (nat_cmp(p, N64::from_uint(3)) > 0 && !is_one(powmod(N64::from_uint(2), pm1, p))) return false;
  f = factor_smooth(h);
  if (f.factors.size() == 1 && f.factors[0].first == 2 && f.factors[0].second == 0) f.factors.clear();
  f.factors.erase(std::remove_if(f.factors.begin(), f.factors.end(),
                                 [](auto& x) { return x.second == 0; }),
                  f.factors.end());
  push_factor(f, 2, k);
  return lucas_prime_test(p, f);
}

N64 proth_value(std::uint64_t h, unsigned k) {
  N64 r = nat_shl(N64::from_uint(h), k);
  return nat_add(r, N64::from_uint(1)).normalize();
}

}  // namespace

ProthPrime find_proth_prime(std::uint64_t two_M, unsigned min_bits) {
  if (!is_pow2(two_M)) throw std::invalid_argument("find_proth_prime: two_M must be a power of 2");
  if (min_bits < 2) min_bits = 2;
  unsigned k = log2_floor(two_M);
  // smallest h with h*two_M + 1 >= 2^(min_bits-1)
  std::uint64_t h = 1;
  if (min_bits - 1 > k) {
    unsigned sh = min_bits - 1 - k;
    if (sh >= 63) throw std::invalid_argument("find_proth_prime: min_bits too large for h");
    h = std::uint64_t{1} << sh;  // h*2^k = 2^(min_bits-1)
  }
  if (h % 2 == 0) ++h;
  for (std::uint64_t end = h + (std::uint64_t{1} << 21); h < end; h += 2) {
    N64 p = proth_value(h, k);
    Factorization f;
    if (!proth_is_prime(p, h, k, f)) continue;
    return {p, h, find_generator(p, f)};
  }
  throw std::runtime_error("find_proth_prime: search exhausted");
}

ProthPrime proth_prime_for_bits(unsigned bits) {
  if (bits < 2) throw std::invalid_argument("proth_prime_for_bits: bits < 2");
  for (std::uint64_t h = 1;; h += 2) {
    unsigned hb = log2_floor(h) + 1;
    if (hb >= bits) break;
    unsigned k = bits - hb;
    N64 p = proth_value(h, k);
    Factorization f;
    if (!proth_is_prime(p, h, k, f)) continue;
    return {p, h, find_generator(p, f)};
  }
  throw std::runtime_error("proth_prime_for_bits: search exhausted");
}

const ProthTableEntry* proth_table_lookup(unsigned bits) {
  for (const auto& e : proth_table())
    if (e.bits == bits) return &e;
  return nullptr;
}

template <Word W>
Natural<W> proth_value(const ProthTableEntry& e) {
  unsigned hb = log2_floor(e.h) + 1;
  Natural<W> r = nat_shl(Natural<W>::from_uint(e.h), e.bits - hb);
  return nat_add(r, Natural<W>::from_uint(1)).normalize();
}

#define BIGMUL_INST(W)                                                                        \
  template Natural<W> mulmod(const Natural<W>&, const Natural<W>&, const Natural<W>&);        \
  template Natural<W> powmod(const Natural<W>&, const Natural<W>&, const Natural<W>&);        \
  template Natural<W> modinv(const Natural<W>&, const Natural<W>&);                           \
  template Factorization factor_smooth(const Natural<W>&);                                    \
  template bool lucas_prime_test(const Natural<W>&, const Factorization&);                    \
  template std::uint64_t find_generator(const Natural<W>&, const Factorization&);             \
  template Natural<W> hensel_lift(const Natural<W>&, const Natural<W>&, unsigned);            \
  template Natural<W> proth_value<W>(const ProthTableEntry&);
BIGMUL_FOR_EACH_WORD(BIGMUL_INST)
#undef BIGMUL_INST

}  // namespace bigmul
