#pragma once

// GMP is only an oracle here; the library never links it.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "bigmul/natural.hpp"

namespace testing {

template <class W>
mpz_class to_mpz(const bigmul::Natural<W>& a) {
  mpz_class z;
  if (a.size()) mpz_import(z.get_mpz_t(), a.size(), -1, sizeof(W), 0, 0, a.data());
  return z;
}

template <class W>
mpz_class to_mpz(const W* a, std::size_t n) {
  mpz_class z;
  if (n) mpz_import(z.get_mpz_t(), n, -1, sizeof(W), 0, 0, a);
  return z;
}

template <class W>
bigmul::Natural<W> from_mpz(const mpz_class& z) {
  std::size_t n = (mpz_sizeinbase(z.get_mpz_t(), 2) + 8 * sizeof(W) - 1) / (8 * sizeof(W));
  std::vector<W> v(n ? n : 1);
  std::size_t got = 0;
  mpz_export(v.data(), &got, -1, sizeof(W), 0, 0, z.get_mpz_t());
  return bigmul::Natural<W>(std::move(v));
}

inline mpz_class mpz_u64(std::uint64_t x) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
  return z;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240601);
  return g;
}

}  // namespace testing
