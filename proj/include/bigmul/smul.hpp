#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bigmul/natural.hpp"
#include "bigmul/thresholds.hpp"

namespace bigmul {

// Parameters of one Schonhage-Strassen level. The product is computed mod
// 2^N+1 (or exactly, at the outermost level) from n = 2^m coefficients of s
// bits each, which are multiplied in Z/(2^K+1)Z.
struct SmulPlan {
  std::size_t N = 0;
  unsigned m = 0;
  std::size_t n = 0;
  std::size_t s = 0;
  std::size_t K = 0;
  std::uint64_t omega_exp = 0;  // omega = 2^omega_exp, order n
  std::uint64_t theta_exp = 0;  // theta = 2^theta_exp, theta^2 = omega; unused when outermost
  bool outermost = false;

  bool valid(unsigned word_bits) const;
  friend bool operator==(const SmulPlan&, const SmulPlan&) = default;
};

// Plan with FFT depth m and the smallest admissible word-aligned K, or an
// invalid plan (n == 0) if m does not fit. For negacyclic plans N must be a
// multiple of the word size; for outermost plans N is the product bit count
// and gets rounded up.
template <Word W>
SmulPlan smul_plan(std::size_t N, unsigned m, bool outermost);

// All plans considered by the selector, including bumped K values.
template <Word W>
std::vector<SmulPlan> smul_candidate_plans(std::size_t N, bool outermost,
                                           const ThresholdTable& th = ThresholdTable::defaults());

// Estimated word operations for one multiplication with this plan.
template <Word W>
double smul_plan_cost(const SmulPlan& plan, const ThresholdTable& th = ThresholdTable::defaults());

template <Word W>
SmulPlan smul_select_params(std::size_t N, bool outermost,
                            const ThresholdTable& th = ThresholdTable::defaults());

// r = a*b mod 2^N+1. a, b and r hold N/w+1 words with value at most 2^N.
// r may alias a or b.
template <Word W>
void smul_mod_n(W* r, const W* a, const W* b, const SmulPlan& plan,
                const ThresholdTable& th = ThresholdTable::defaults());

template <Word W>
Natural<W> smul_mod(const Natural<W>& a, const Natural<W>& b, const SmulPlan& plan,
                    const ThresholdTable& th = ThresholdTable::defaults());

// Negacyclic convolution of the n coefficients (residues mod 2^K+1) through
// the weight / transform / counterweight pipeline of smul_mod.
template <Word W>
std::vector<Natural<W>> smul_negacyclic(const SmulPlan& plan, const std::vector<Natural<W>>& a,
                                        const std::vector<Natural<W>>& b,
                                        const ThresholdTable& th = ThresholdTable::defaults());

// Full product; r receives an+bn words.
template <Word W>
void smul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
            const ThresholdTable& th = ThresholdTable::defaults());

template <Word W>
Natural<W> smul(const Natural<W>& a, const Natural<W>& b,
                const ThresholdTable& th = ThresholdTable::defaults());

}  // namespace bigmul
