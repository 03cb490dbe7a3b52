#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bigmul/natural.hpp"
#include "bigmul/thresholds.hpp"

namespace bigmul {

enum class Algorithm { omul, kmul, t3mul, qmul, smul, dmul, automatic };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
// The six concrete multipliers, slowest growth last.
std::span<const Algorithm> all_algorithms();

// What automatic dispatch picks for these operand lengths (in words).
template <Word W>
Algorithm choose_algorithm(std::size_t an, std::size_t bn,
                           const ThresholdTable& th = ThresholdTable::defaults());

// r receives an+bn words and must not overlap the inputs.
template <Word W>
void mul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
           Algorithm alg = Algorithm::automatic,
           const ThresholdTable& th = ThresholdTable::defaults());

template <Word W>
Natural<W> multiply(const Natural<W>& a, const Natural<W>& b, Algorithm alg = Algorithm::automatic,
                    const ThresholdTable& th = ThresholdTable::defaults());

}  // namespace bigmul
