#include "bigmul/multiply.hpp"

#include <array>
#include <stdexcept>

#include "bigmul/basecase.hpp"
#include "bigmul/dkss.hpp"
#include "bigmul/qmul.hpp"
#include "bigmul/smul.hpp"

namespace bigmul {

namespace {
constexpr std::array<Algorithm, 6> kAll = {Algorithm::omul, Algorithm::kmul, Algorithm::t3mul,
                                           Algorithm::qmul, Algorithm::smul, Algorithm::dmul};
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::omul: return "omul";
    case Algorithm::kmul: return "kmul";
    case Algorithm::t3mul: return "t3mul";
    case Algorithm::qmul: return "qmul";
    case Algorithm::smul: return "smul";
    case Algorithm::dmul: return "dmul";
    case Algorithm::automatic: return "auto";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAll)
    if (algorithm_name(a) == name) return a;
  if (name == "auto") return Algorithm::automatic;
  return std::nullopt;
}

std::span<const Algorithm> all_algorithms() { return kAll; }

template <Word W>
Algorithm choose_algorithm(std::size_t an, std::size_t bn, const ThresholdTable& th) {
  std::size_t n = std::min(an, bn);
  if (n >= th.dmul) return Algorithm::dmul;
  if (n >= th.smul) return Algorithm::smul;
  if (n >= th.qmul && an + bn <= qmul_max_words<W>()) return Algorithm::qmul;
  if (n >= th.t3mul) return Algorithm::t3mul;
  if (n >= th.kmul) return Algorithm::kmul;
  return Algorithm::omul;
}

template <Word W>
void mul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn, Algorithm alg,
           const ThresholdTable& th) {
  if (alg == Algorithm::automatic) alg = choose_algorithm<W>(an, bn, th);
  switch (alg) {
    case Algorithm::omul: omul_n(r, a, an, b, bn); return;
    case Algorithm::kmul: kmul_n(r, a, an, b, bn, th); return;
    case Algorithm::t3mul: t3mul_n(r, a, an, b, bn, th); return;
    case Algorithm::qmul: qmul_n(r, a, an, b, bn); return;
    case Algorithm::smul: smul_n(r, a, an, b, bn, th); return;
    case Algorithm::dmul: dmul_n(r, a, an, b, bn, th); return;
    case Algorithm::automatic: break;
  }
  throw std::logic_error("mul_n: bad algorithm");
}

template <Word W>
Natural<W> multiply(const Natural<W>& a, const Natural<W>& b, Algorithm alg,
                    const ThresholdTable& th) {
  Natural<W> r;
  r.resize(a.size() + b.size());
  mul_n(r.data(), a.data(), a.size(), b.data(), b.size(), alg, th);
  return r;
}

#define BIGMUL_INST(W)                                                                      \
  template Algorithm choose_algorithm<W>(std::size_t, std::size_t, const ThresholdTable&); \
  template void mul_n(W*, const W*, std::size_t, const W*, std::size_t, Algorithm,          \
                      const ThresholdTable&);                                               \
  template Natural<W> multiply(const Natural<W>&, const Natural<W>&, Algorithm,             \
                               const ThresholdTable&);
BIGMUL_FOR_EACH_WORD(BIGMUL_INST)
#undef BIGMUL_INST

}  // namespace bigmul
