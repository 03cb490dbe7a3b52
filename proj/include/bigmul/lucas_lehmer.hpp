#pragma once

#include <cstdint>

#include "bigmul/multiply.hpp"

namespace bigmul {

struct LucasLehmerResult {
  bool is_prime;
  std::uint64_t residue64;  // low 64 bits of the last s
};

// Lucas-Lehmer test of 2^p - 1 with every squaring done by alg.
LucasLehmerResult lucas_lehmer(unsigned p, Algorithm alg = Algorithm::automatic,
                               const ThresholdTable& th = ThresholdTable::defaults());

}  // namespace bigmul
