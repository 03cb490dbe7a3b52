#pragma once

#include <cstddef>
#include <vector>

#include "bigmul/natural.hpp"
#include "bigmul/thresholds.hpp"

namespace bigmul {

// Counts Karatsuba invocations per recursion depth (depth 0 = top call).
struct KaratsubaTrace {
  std::vector<std::size_t> calls;
  void hit(unsigned depth) {
    if (calls.size() <= depth) calls.resize(depth + 1);
    ++calls[depth];
  }
};

// Word-array forms: r receives an+bn words and must not overlap a or b.
template <Word W>
void omul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn);
template <Word W>
void kmul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
            const ThresholdTable& th = ThresholdTable::defaults(), KaratsubaTrace* trace = nullptr);
template <Word W>
void t3mul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
             const ThresholdTable& th = ThresholdTable::defaults());

template <Word W>
Natural<W> omul(const Natural<W>& a, const Natural<W>& b);
template <Word W>
Natural<W> kmul(const Natural<W>& a, const Natural<W>& b,
                const ThresholdTable& th = ThresholdTable::defaults(),
                KaratsubaTrace* trace = nullptr);
template <Word W>
Natural<W> t3mul(const Natural<W>& a, const Natural<W>& b,
                 const ThresholdTable& th = ThresholdTable::defaults());

}  // namespace bigmul
