#include "bigmul/smul.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "bigmul/arena.hpp"
#include "bigmul/basecase.hpp"
#include "bigmul/fermat.hpp"
#include "bigmul/fft.hpp"

namespace bigmul {

bool SmulPlan::valid(unsigned wb) const {
  if (m == 0 || m >= 63 || n != (std::size_t{1} << m)) return false;
  if (K == 0 || K % wb != 0 || N % wb != 0) return false;
  if (N != s * n) return false;
  if (K < m + 2 * s + 1) return false;
  if (outermost) {
    if (s % wb != 0) return false;
    return (2 * K) % n == 0 && omega_exp == 2 * K / n;
  }
  return K % n == 0 && omega_exp == 2 * K / n && theta_exp == K / n;
}

template <Word W>
SmulPlan smul_plan(std::size_t N, unsigned m, bool outermost) {
  constexpr std::size_t w = word_bits<W>;
  SmulPlan p;
  if (m == 0 || m > 40 || N == 0) return p;
  const std::size_t n = std::size_t{1} << m;
  p.m = m;
  p.outermost = outermost;
  if (outermost) {
    p.s = round_up(ceil_div(N, n), w);
    p.N = p.s * n;
    p.K = round_up(m + 2 * p.s + 1, std::max(w, n / 2));
    p.omega_exp = 2 * p.K / n;
  } else {
    if (N % w != 0 || N % n != 0) return p;
    p.N = N;
    p.s = N / n;
    p.K = round_up(m + 2 * p.s + 1, std::max(w, n));
    p.omega_exp = 2 * p.K / n;
    p.theta_exp = p.K / n;
  }
  p.n = n;
  return p;
}

namespace {

unsigned trailing_zeros(std::size_t x) {
  unsigned t = 0;
  while (x && !(x & 1)) {
    x >>= 1;
    ++t;
  }
  return t;
}

// Same plan with K raised to the next value holding a higher power of 2.
SmulPlan bump_k(SmulPlan p) {
  std::size_t step = std::size_t{1} << (trailing_zeros(p.K) + 1);
  p.K = round_up(p.K + 1, step);
  p.omega_exp = 2 * p.K / p.n;
  if (!p.outermost) p.theta_exp = p.K / p.n;
  return p;
}

double basecase_cost(double L, const ThresholdTable& th) {
  const double k = static_cast<double>(std::max<std::size_t>(th.kmul, 2));
  const double t = static_cast<double>(std::max(th.t3mul, th.kmul));
  if (L < k) return L * L;
  const double c1 = k * k / std::pow(k, 1.585);
  if (L < t) return c1 * std::pow(L, 1.585);
  const double c2 = c1 * std::pow(t, 1.585) / std::pow(t, 1.465);
  return c2 * std::pow(L, 1.465);
}

template <Word W>
class FermatVector {
 public:
  FermatVector(W* v, const SmulPlan& plan, W* t, W* tmp)
      : v_(v), n_(plan.n), L_(plan.K / word_bits<W>), omega_exp_(plan.omega_exp),
        two_k_(2 * static_cast<std::uint64_t>(plan.K)), t_(t), tmp_(tmp) {}
  std::size_t size() const { return n_; }
  std::uint64_t root_order() const { return n_; }
  W* elem(std::size_t i) { return v_ + i * (L_ + 1); }
  void swap(std::size_t i, std::size_t j) { std::swap_ranges(elem(i), elem(i) + L_ + 1, elem(j)); }
  void mul_root(std::size_t i, std::uint64_t e) {
    std::uint64_t ex = (e * omega_exp_) % two_k_;
    if (ex == 0)
      mpn::copy(t_, elem(i), L_ + 1);
    else
      fermat::mul_pow2(t_, elem(i), L_, ex, tmp_);
  }
  void sub_from(std::size_t d, std::size_t s) { fermat::sub(elem(d), elem(s), t_, L_); }
  void add_to(std::size_t i) { fermat::add(elem(i), elem(i), t_, L_); }

 private:
  W* v_;
  std::size_t n_, L_;
  std::uint64_t omega_exp_, two_k_;
  W* t_;
  W* tmp_;
};

// Transforms A and B (already weighted and in bit-reversed order), multiplies
// pointwise and transforms back; A then holds n * c'_{-l} at index l.
template <Word W>
void transform_product(W* A, W* B, const SmulPlan& plan, const ThresholdTable& th, W* t, W* tmp) {
  const std::size_t L = plan.K / word_bits<W>;
  FermatVector<W> ra(A, plan, t, tmp), rb(B, plan, t, tmp);
  fft_eval(ra);
  fft_eval(rb);
  if (L >= th.smul_recursion) {
    SmulPlan child = smul_select_params<W>(plan.K, false, th);
    for (std::size_t i = 0; i < plan.n; ++i) smul_mod_n(ra.elem(i), ra.elem(i), rb.elem(i), child, th);
  } else {
    Scratch<W> prod(2 * L);
    for (std::size_t i = 0; i < plan.n; ++i)
      fermat::mul_basecase(ra.elem(i), ra.elem(i), rb.elem(i), L, prod.data(), th);
  }
  shuffle(ra);
  fft_eval(ra);
}

// dst = c_l: counterweight theta^-l and the 1/n scale folded into one shift.
template <Word W>
void unweight(W* dst, W* A, std::size_t l, const SmulPlan& plan, W* tmp) {
  const std::size_t L = plan.K / word_bits<W>;
  const std::uint64_t two_k = 2 * static_cast<std::uint64_t>(plan.K);
  std::size_t idx = (plan.n - l) & (plan.n - 1);
  std::uint64_t down = plan.m + (plan.outermost ? 0 : l * plan.theta_exp);
  std::uint64_t ex = (two_k - down % two_k) % two_k;
  fermat::mul_pow2(dst, A + idx * (L + 1), L, ex, tmp);
}

}  // namespace

template <Word W>
std::vector<SmulPlan> smul_candidate_plans(std::size_t N, bool outermost, const ThresholdTable& th) {
  constexpr std::size_t w = word_bits<W>;
  std::vector<SmulPlan> out;
  unsigned max_m = outermost ? log2_ceil(std::max<std::size_t>(N, 2)) : trailing_zeros(N);
  max_m = std::min(max_m, 30u);
  for (unsigned m = 1; m <= max_m; ++m) {
    SmulPlan p = smul_plan<W>(N, m, outermost);
    if (!p.valid(w)) continue;
    // the coefficient ring must shrink, or recursion would not terminate
    if (!outermost && p.K >= N) continue;
    out.push_back(p);
    if (p.K / w >= th.smul_recursion) {
      SmulPlan q = bump_k(p);
      if (q.valid(w) && (outermost || q.K < N)) out.push_back(q);
    }
  }
  return out;
}

template <Word W>
double smul_plan_cost(const SmulPlan& plan, const ThresholdTable& th) {
  const double L = static_cast<double>(plan.K / word_bits<W>);
  const double n = static_cast<double>(plan.n);
  double fft = 8.0 * n * plan.m * (L + 1);
  double other = 3.0 * n * (L + 1);
  double pw;
  if (plan.K / word_bits<W> >= th.smul_recursion) {
    SmulPlan child = smul_select_params<W>(plan.K, false, th);
    pw = n * smul_plan_cost<W>(child, th);
  } else {
    pw = n * basecase_cost(L, th);
  }
  return fft + pw + other;
}

template <Word W>
SmulPlan smul_select_params(std::size_t N, bool outermost, const ThresholdTable& th) {
  constexpr std::size_t w = word_bits<W>;
  if (outermost && !th.smul_fft_depth.empty()) {
    unsigned bucket = log2_floor(std::max<std::size_t>(ceil_div(N, w), 1));
    auto it = th.smul_fft_depth.find(bucket);
    if (it != th.smul_fft_depth.end()) {
      SmulPlan p = smul_plan<W>(N, it->second, true);
      if (p.valid(w)) return p;
    }
  }
  std::vector<SmulPlan> cands = smul_candidate_plans<W>(N, outermost, th);
  if (cands.empty()) {
    // tiny negacyclic sizes: any m = 1 plan is still correct, just not smaller
    SmulPlan p = smul_plan<W>(N, 1, outermost);
    if (!p.valid(w)) throw std::invalid_argument("smul_select_params: no plan for N");
    return p;
  }
  const SmulPlan* best = nullptr;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const auto& p : cands) {
    double c = smul_plan_cost<W>(p, th);
    if (c < best_cost) {
      best_cost = c;
      best = &p;
    }
  }
  return *best;
}

template <Word W>
void smul_mod_n(W* r, const W* a, const W* b, const SmulPlan& plan, const ThresholdTable& th) {
  constexpr std::size_t w = word_bits<W>;
  const std::size_t NL = plan.N / w;
  if (a[NL]) {
    fermat::neg(r, b, NL);  // 2^N == -1
    return;
  }
  if (b[NL]) {
    fermat::neg(r, a, NL);
    return;
  }
  const std::size_t L = plan.K / w, st = L + 1, n = plan.n;
  const unsigned logn = plan.m;
  Scratch<W> A(n * st), B(n * st), t(st), tmp(2 * L + 2);

  // split, weight by theta^i, store bit-reversed
  auto load = [&](W* V, const W* x) {
    for (std::size_t i = 0; i < n; ++i) {
      W* dst = V + bit_rev(i, logn) * st;
      mpn::extract_bits(dst, st, x, NL, i * plan.s, plan.s);
      if (i) fermat::mul_pow2(dst, dst, L, i * plan.theta_exp, tmp.data());
    }
  };
  load(A.data(), a);
  load(B.data(), b);
  transform_product(A.data(), B.data(), plan, th, t.data(), tmp.data());

  // signed recombination: positive and negative coefficients kept apart
  const std::size_t PN = NL + L + 2;
  Scratch<W> P(PN), Q(PN);
  mpn::zero(P.data(), PN);
  mpn::zero(Q.data(), PN);
  const std::size_t bound = plan.m + 2 * plan.s;
  for (std::size_t l = 0; l < n; ++l) {
    unweight(t.data(), A.data(), l, plan, tmp.data());
    std::size_t sig = mpn::normalized_size(t.data(), L);
    bool negative = t[L] != 0 ||
                    (sig && (sig - 1) * w + (w - count_leading_zeros(t[sig - 1])) > bound);
    if (negative) {
      fermat::neg(t.data(), t.data(), L);
      mpn::add_at_bit(Q.data(), PN, t.data(), st, l * plan.s);
    } else {
      mpn::add_at_bit(P.data(), PN, t.data(), st, l * plan.s);
    }
  }
  Scratch<W> Pr(NL + 1), Qr(NL + 1);
  fermat::reduce(Pr.data(), NL, P.data(), PN);
  fermat::reduce(Qr.data(), NL, Q.data(), PN);
  fermat::sub(r, Pr.data(), Qr.data(), NL);
}

template <Word W>
Natural<W> smul_mod(const Natural<W>& a, const Natural<W>& b, const SmulPlan& plan,
                    const ThresholdTable& th) {
  const std::size_t NL = plan.N / word_bits<W>;
  std::vector<W> x(NL + 1), y(NL + 1);
  fermat::reduce(x.data(), NL, a.data(), a.size());
  fermat::reduce(y.data(), NL, b.data(), b.size());
  Natural<W> r;
  r.resize(NL + 1);
  smul_mod_n(r.data(), x.data(), y.data(), plan, th);
  return r.normalize();
}

template <Word W>
std::vector<Natural<W>> smul_negacyclic(const SmulPlan& plan, const std::vector<Natural<W>>& a,
                                        const std::vector<Natural<W>>& b, const ThresholdTable& th) {
  if (a.size() != plan.n || b.size() != plan.n)
    throw std::invalid_argument("smul_negacyclic: need n coefficients");
  if (plan.outermost) throw std::invalid_argument("smul_negacyclic: plan must be negacyclic");
  const std::size_t L = plan.K / word_bits<W>, st = L + 1, n = plan.n;
  Scratch<W> A(n * st), B(n * st), t(st), tmp(2 * L + 2);
  auto load = [&](W* V, const std::vector<Natural<W>>& x) {
    for (std::size_t i = 0; i < n; ++i) {
      W* dst = V + bit_rev(i, plan.m) * st;
      fermat::reduce(dst, L, x[i].data(), x[i].size());
      if (i) fermat::mul_pow2(dst, dst, L, i * plan.theta_exp, tmp.data());
    }
  };
  load(A.data(), a);
  load(B.data(), b);
  transform_product(A.data(), B.data(), plan, th, t.data(), tmp.data());
  std::vector<Natural<W>> out(n);
  for (std::size_t l = 0; l < n; ++l) {
    unweight(t.data(), A.data(), l, plan, tmp.data());
    out[l] = Natural<W>(std::vector<W>(t.data(), t.data() + st)).normalize();
  }
  return out;
}

template <Word W>
void smul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn, const ThresholdTable& th) {
  constexpr std::size_t w = word_bits<W>;
  const std::size_t rn = an + bn;
  an = mpn::normalized_size(a, an);
  bn = mpn::normalized_size(b, bn);
  if (an == 0 || bn == 0) {
    mpn::zero(r, rn);
    return;
  }
  const std::size_t abits = an * w - count_leading_zeros(a[an - 1]);
  const std::size_t bbits = bn * w - count_leading_zeros(b[bn - 1]);
  const SmulPlan plan = smul_select_params<W>(abits + bbits, true, th);
  const std::size_t L = plan.K / w, st = L + 1, n = plan.n;
  Scratch<W> A(n * st), B(n * st), t(st), tmp(2 * L + 2);

  // cyclic: no weights; coefficients past the operand stay zero
  auto load = [&](W* V, const W* x, std::size_t xn, std::size_t xbits) {
    for (std::size_t i = 0; i < n; ++i) {
      W* dst = V + bit_rev(i, plan.m) * st;
      if (i * plan.s < xbits)
        mpn::extract_bits(dst, st, x, xn, i * plan.s, plan.s);
      else
        mpn::zero(dst, st);
    }
  };
  load(A.data(), a, an, abits);
  load(B.data(), b, bn, bbits);
  transform_product(A.data(), B.data(), plan, th, t.data(), tmp.data());

  mpn::zero(r, rn);
  for (std::size_t l = 0; l < n; ++l) {
    if (l * plan.s >= abits + bbits) break;
    unweight(t.data(), A.data(), l, plan, tmp.data());
    mpn::add_at_bit(r, rn, t.data(), st, l * plan.s);
  }
}

template <Word W>
Natural<W> smul(const Natural<W>& a, const Natural<W>& b, const ThresholdTable& th) {
  Natural<W> r;
  r.resize(a.size() + b.size());
  smul_n(r.data(), a.data(), a.size(), b.data(), b.size(), th);
  return r;
}

#define BIGMUL_INST(W)                                                                        \
  template SmulPlan smul_plan<W>(std::size_t, unsigned, bool);                                \
  template std::vector<SmulPlan> smul_candidate_plans<W>(std::size_t, bool,                   \
                                                         const ThresholdTable&);              \
  template double smul_plan_cost<W>(const SmulPlan&, const ThresholdTable&);                  \
  template SmulPlan smul_select_params<W>(std::size_t, bool, const ThresholdTable&);          \
  template void smul_mod_n(W*, const W*, const W*, const SmulPlan&, const ThresholdTable&);   \
  template Natural<W> smul_mod(const Natural<W>&, const Natural<W>&, const SmulPlan&,         \
                               const ThresholdTable&);                                        \
  template std::vector<Natural<W>> smul_negacyclic(const SmulPlan&,                           \
                                                   const std::vector<Natural<W>>&,            \
                                                   const std::vector<Natural<W>>&,            \
                                                   const ThresholdTable&);                    \
  template void smul_n(W*, const W*, std::size_t, const W*, std::size_t,                      \
                       const ThresholdTable&);                                                \
  template Natural<W> smul(const Natural<W>&, const Natural<W>&, const ThresholdTable&);
BIGMUL_FOR_EACH_WORD(BIGMUL_INST)
#undef BIGMUL_INST

}  // namespace bigmul
