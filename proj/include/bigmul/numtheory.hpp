#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bigmul/natural.hpp"

namespace bigmul {

struct NotInvertible : std::domain_error {
  using std::domain_error::domain_error;
};

// (prime, exponent) pairs, primes strictly increasing.
struct Factorization {
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

// 64-bit forms
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);
std::uint64_t modinv(std::uint64_t x, std::uint64_t modulus);
Factorization factor_smooth(std::uint64_t n);
bool lucas_prime_test(std::uint64_t n, const Factorization& f);

// Multi-word forms
template <Word W>
Natural<W> mulmod(const Natural<W>& a, const Natural<W>& b, const Natural<W>& m);
template <Word W>
Natural<W> powmod(const Natural<W>& base, const Natural<W>& exp, const Natural<W>& modulus);
template <Word W>
Natural<W> modinv(const Natural<W>& x, const Natural<W>& modulus);
template <Word W>
Factorization factor_smooth(const Natural<W>& n);
template <Word W>
bool lucas_prime_test(const Natural<W>& n, const Factorization& f);
// Smallest of 2, 3, 5, 7, ... generating (Z/pZ)*, given p-1 = prod f.
template <Word W>
std::uint64_t find_generator(const Natural<W>& p, const Factorization& f);
template <Word W>
Natural<W> hensel_lift(const Natural<W>& zeta, const Natural<W>& p, unsigned target_z);

struct ProthPrime {
  Natural<std::uint64_t> p;
  std::uint64_t h;
  std::uint64_t g;
};

// Smallest odd h with p = h*two_M + 1 prime and at least min_bits bits.
ProthPrime find_proth_prime(std::uint64_t two_M, unsigned min_bits);

// p = h * 2^(bits - bitlen(h)) + 1 with the smallest odd h making it prime.
ProthPrime proth_prime_for_bits(unsigned bits);

inline constexpr std::uint64_t kTrialDivisionBound = std::uint64_t{1} << 20;

// Precomputed table: one prime per bit length 8, 16, ..., 1704, each
// p = h * 2^(bits - bitlen(h)) + 1 with generator g (data/proth_primes.txt).
struct ProthTableEntry {
  unsigned bits;
  std::uint64_t h;
  std::uint64_t g;
};
std::span<const ProthTableEntry> proth_table();
const ProthTableEntry* proth_table_lookup(unsigned bits);  // nullptr if absent

template <Word W>
Natural<W> proth_value(const ProthTableEntry& e);

}  // namespace bigmul
