#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>

namespace bigmul {

// Crossover points in words of the shorter operand. Dispatch goes
// omul < kmul < t3mul < qmul < smul < dmul; an empty band just means the
// algorithm is never picked automatically.
struct ThresholdTable {
  std::size_t kmul = 24;
  std::size_t t3mul = 100;
  std::size_t qmul = 3000;
  std::size_t smul = 3000;
  std::size_t dmul = std::numeric_limits<std::size_t>::max();
  // Pointwise products in SMUL recurse into smul_mod once K/w reaches this.
  std::size_t smul_recursion = 512;
  // Calibrated FFT depth per bucket; key = floor(log2(product words)).
  std::map<unsigned, unsigned> smul_fft_depth;

  bool valid() const;
  std::string serialize() const;
  static ThresholdTable parse(std::string_view text);
  void save(const std::string& path) const;
  static ThresholdTable load(const std::string& path);

  static const ThresholdTable& defaults();

  friend bool operator==(const ThresholdTable&, const ThresholdTable&) = default;
};

}  // namespace bigmul
