#pragma once

// DKSS multiplication over R = P[alpha]/(alpha^m+1), P = Z/pZ.
//
// Inputs are cut into M outer blocks of u*m/2 bits and each block into m/2
// inner coefficients of u bits. Polynomials of length 2M over R are
// transformed with rho, a principal 2M-th root of unity in R with
// rho^(2M/2m) = alpha, so most root multiplications are cyclic shifts.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bigmul/mpn.hpp"
#include "bigmul/natural.hpp"
#include "bigmul/thresholds.hpp"

namespace bigmul {

// Residues mod a prime p of exactly len*w bits, stored in len words.
template <Word W>
class ModP {
 public:
  ModP() = default;
  explicit ModP(const Natural<W>& p);

  std::size_t len() const { return len_; }
  const W* p() const { return p_.data(); }
  const Natural<W>& modulus() const { return pn_; }

  void add(W* r, const W* x, const W* y) const;
  void sub(W* r, const W* x, const W* y) const;
  void neg(W* r, const W* x) const;
  // r = a[0..an) mod p; scratch holds an+1 words.
  void reduce(W* r, const W* a, std::size_t an, W* scratch) const;
  // scratch holds 4*len+1 words.
  void mul(W* r, const W* x, const W* y, W* scratch) const;

 private:
  std::size_t len_ = 0;
  std::vector<W> p_;
  Natural<W> pn_;
  std::vector<mpn::Divisor<W>> div_;  // zero or one entry
};

template <Word W>
struct DkssPlan {
  std::size_t N = 0;      // input bits
  std::size_t M = 0;      // transform length is 2M
  std::size_t m = 0;      // alpha^m = -1
  unsigned log2M = 0, log2m = 0;
  std::size_t mu = 0;     // 2M/2m
  std::size_t u = 0;      // input bits per inner coefficient
  unsigned z = 1;
  std::size_t d = 0;      // bits of p, a word multiple
  std::size_t iclen = 0;  // words per inner coefficient
  std::size_t oclen = 0;  // words per element of R, m*iclen
  std::uint64_t h = 0;    // p = h*2^k + 1
  std::uint64_t zeta = 0; // generator of F_p^*
  ModP<W> P;
  Natural<W> omega;       // principal 2M-th root in P
  Natural<W> gamma;       // omega^mu, primitive 2m-th root
  Natural<W> inv_2M;
  std::vector<W> rho;      // oclen words
  std::vector<W> rho_pow;  // rho^s for s < mu, mu*oclen words
  std::string trace;       // how the parameters were chosen
};

// Parameters only; no roots.
struct DkssShape {
  std::size_t N, M, m, u, d;
};
DkssShape dkss_shape(std::size_t N, unsigned word_bits);

// Builds the plan for N-bit inputs, including omega, rho and the rho powers.
template <Word W>
DkssPlan<W> dkss_select_params(std::size_t N);

// Same, for explicit toy parameters (p prime with 2M | p-1, generator zeta).
template <Word W>
DkssPlan<W> dkss_make_plan(std::size_t N, std::size_t M, std::size_t m, std::size_t u,
                           const Natural<W>& p, std::uint64_t zeta);

// Cached plan; plans never change after construction.
template <Word W>
const DkssPlan<W>& dkss_plan_cached(std::size_t N);

template <Word W>
Natural<W> find_root_omega(const DkssPlan<W>& plan);
template <Word W>
std::vector<W> compute_rho(const DkssPlan<W>& plan);

// Checks used by the tests: rho^mu == alpha, rho^2M == 1 and the principal
// sum condition on omega (summed directly when 2M <= full_sum_limit, else by
// checking that omega has order exactly 2M, which is equivalent in a field).
template <Word W>
bool dkss_check_roots(const DkssPlan<W>& plan, std::size_t full_sum_limit = 4096);
template <Word W>
bool principal_sum_check(const ModP<W>& P, const Natural<W>& root, std::size_t order);

// Elements of R are m*iclen words; all take the plan for the sizes and p.
struct DkssStats {
  std::uint64_t r_mul = 0;
  std::uint64_t twiddle_shift = 0;
  std::uint64_t twiddle_mul = 0;
};
DkssStats& dkss_stats();  // per thread

template <Word W>
void poly_add(W* r, const W* x, const W* y, const DkssPlan<W>& plan);
template <Word W>
void poly_sub(W* r, const W* x, const W* y, const DkssPlan<W>& plan);
// r = x * alpha^e; r must not alias x.
template <Word W>
void poly_mul_xpow(W* r, const W* x, std::uint64_t e, const DkssPlan<W>& plan);
// r = x*y in R by Kronecker substitution; r may alias x or y.
template <Word W>
void r_mul(W* r, const W* x, const W* y, const DkssPlan<W>& plan,
           const ThresholdTable& th = ThresholdTable::defaults());

// Length-len DFT (len <= 2m) with alpha^(2m/len) as root; input pre-shuffled.
template <Word W>
void dkss_inner_fft_eval(W* v, std::size_t len, const DkssPlan<W>& plan);

// v holds 2M elements of R; afterwards v[i] = a(rho^i).
template <Word W>
void dkss_fft(W* v, const DkssPlan<W>& plan, const ThresholdTable& th = ThresholdTable::defaults());

template <Word W>
std::vector<W> dkss_encode(const Natural<W>& a, const DkssPlan<W>& plan);
// v is the product sequence after the second forward transform.
template <Word W>
Natural<W> dkss_decode(const std::vector<W>& v, const DkssPlan<W>& plan);

template <Word W>
void dmul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn,
            const ThresholdTable& th = ThresholdTable::defaults());
template <Word W>
Natural<W> dmul(const Natural<W>& a, const Natural<W>& b,
                const ThresholdTable& th = ThresholdTable::defaults());

}  // namespace bigmul
