#include "bigmul/dkss.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "bigmul/arena.hpp"
#include "bigmul/basecase.hpp"
#include "bigmul/fft.hpp"
#include "bigmul/numtheory.hpp"
#include "bigmul/smul.hpp"

namespace bigmul {

template <Word W>
ModP<W>::ModP(const Natural<W>& p) : pn_(Natural<W>(p).normalize()) {
  len_ = pn_.size();
  if (len_ == 0) throw std::invalid_argument("ModP: zero modulus");
  p_ = pn_.limbs();
  div_.emplace_back(p_.data(), len_);
}

template <Word W>
void ModP<W>::add(W* r, const W* x, const W* y) const {
  W c = mpn::add_n(r, x, y, len_);
  if (c || mpn::cmp_n(r, p_.data(), len_) >= 0) mpn::sub_n(r, r, p_.data(), len_);
}

template <Word W>
void ModP<W>::sub(W* r, const W* x, const W* y) const {
  if (mpn::sub_n(r, x, y, len_)) mpn::add_n(r, r, p_.data(), len_);
}

template <Word W>
void ModP<W>::neg(W* r, const W* x) const {
  if (mpn::is_zero(x, len_))
    mpn::zero(r, len_);
  else
    mpn::sub_n(r, p_.data(), x, len_);
}

template <Word W>
void ModP<W>::reduce(W* r, const W* a, std::size_t an, W* scratch) const {
  div_[0].divrem(nullptr, r, a, an, scratch);
}

template <Word W>
void ModP<W>::mul(W* r, const W* x, const W* y, W* scratch) const {
  t3mul_n(scratch, x, len_, y, len_);
  reduce(r, scratch, 2 * len_, scratch + 2 * len_);
}

DkssStats& dkss_stats() {
  thread_local DkssStats s;
  return s;
}

DkssShape dkss_shape(std::size_t N, unsigned w) {
  N = std::max<std::size_t>(N, 2);
  const double lg = std::log2(static_cast<double>(N));
  // p ~ N^5 / (2 log N), rounded up to whole words
  double d0 = std::log2(static_cast<double>(N) / lg) + 4.0 * lg - 1.0;
  std::size_t d = round_up(static_cast<std::size_t>(std::ceil(std::max(d0, 1.0))), w);
  const std::size_t twoN = 2 * N;
  for (;; d += w) {
    if (d > 1704) throw std::length_error("dkss: no prime for this input length");
    const ProthTableEntry* e = proth_table_lookup(static_cast<unsigned>(d));
    if (!e) continue;
    // largest u with log(Mm) + 2u <= d - 1
    std::size_t u = 0, Mm = 0;
    for (std::size_t cu = (d - 1) / 2; cu >= 1; --cu) {
      std::size_t cMm = std::max<std::size_t>(4, next_pow2(ceil_div(twoN, cu)));
      if (log2_floor(cMm) + 2 * cu <= d - 1) {
        u = cu;
        Mm = cMm;
        break;
      }
    }
    if (u == 0) continue;
    u = ceil_div(twoN, Mm);
    const unsigned lMm = log2_floor(Mm);
    // M/m ~ N/log^3 N
    double q = lg - 3.0 * std::log2(lg);
    long lm = std::lround((static_cast<double>(lMm) - q) / 2.0);
    lm = std::max<long>(lm, 1);
    lm = std::min<long>(lm, lMm / 2);
    std::size_t m = std::size_t{1} << lm;
    std::size_t M = Mm / m;
    unsigned hb = log2_floor(e->h) + 1;
    if (d - hb < log2_floor(2 * M)) continue;  // need 2M | p-1
    return {N, M, m, u, d};
  }
}

template <Word W>
Natural<W> find_root_omega(const DkssPlan<W>& plan) {
  const Natural<W>& p = plan.P.modulus();
  Natural<W> e;
  nat_divmod(nat_sub_abs(p, Natural<W>::from_uint(1)).value, Natural<W>::from_uint(2 * plan.M), &e,
             static_cast<Natural<W>*>(nullptr));
  return powmod(Natural<W>::from_uint(plan.zeta), e, p);
}

namespace {

template <Word W>
void store(W* dst, const Natural<W>& x, std::size_t len) {
  mpn::zero(dst, len);
  mpn::copy(dst, x.data(), std::min(len, x.significant_words()));
}

template <Word W>
Natural<W> load(const W* src, std::size_t len) {
  return Natural<W>(std::vector<W>(src, src + len)).normalize();
}

template <Word W>
class InnerRing {
 public:
  InnerRing(W* v, std::size_t len, const DkssPlan<W>& plan, W* t)
      : v_(v), len_(len), plan_(plan), t_(t) {}
  std::size_t size() const { return len_; }
  std::uint64_t root_order() const { return 2 * plan_.m; }
  W* elem(std::size_t i) { return v_ + i * plan_.oclen; }
  void swap(std::size_t i, std::size_t j) {
    std::swap_ranges(elem(i), elem(i) + plan_.oclen, elem(j));
  }
  void mul_root(std::size_t i, std::uint64_t e) { poly_mul_xpow(t_, elem(i), e, plan_); }
  void sub_from(std::size_t d, std::size_t s) { poly_sub(elem(d), elem(s), t_, plan_); }
  void add_to(std::size_t i) { poly_add(elem(i), elem(i), t_, plan_); }

 private:
  W* v_;
  std::size_t len_;
  const DkssPlan<W>& plan_;
  W* t_;
};

}  // namespace

template <Word W>
void poly_add(W* r, const W* x, const W* y, const DkssPlan<W>& plan) {
  const std::size_t c = plan.iclen;
  for (std::size_t i = 0; i < plan.m; ++i) plan.P.add(r + i * c, x + i * c, y + i * c);
}

template <Word W>
void poly_sub(W* r, const W* x, const W* y, const DkssPlan<W>& plan) {
  const std::size_t c = plan.iclen;
  for (std::size_t i = 0; i < plan.m; ++i) plan.P.sub(r + i * c, x + i * c, y + i * c);
}

template <Word W>
void poly_mul_xpow(W* r, const W* x, std::uint64_t e, const DkssPlan<W>& plan) {
  const std::size_t m = plan.m, c = plan.iclen;
  e %= 2 * m;
  bool flip = e >= m;
  if (flip) e -= m;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = i + static_cast<std::size_t>(e);
    bool negate = flip;
    if (j >= m) {
      j -= m;
      negate = !negate;  // alpha^m = -1
    }
    if (negate)
      plan.P.neg(r + j * c, x + i * c);
    else
      mpn::copy(r + j * c, x + i * c, c);
  }
}

template <Word W>
void r_mul(W* r, const W* x, const W* y, const DkssPlan<W>& plan, const ThresholdTable& th) {
  constexpr std::size_t w = word_bits<W>;
  ++dkss_stats().r_mul;
  const std::size_t m = plan.m, c = plan.iclen;
  // coefficients of the plain product are below m*p^2
  const std::size_t F = 2 * plan.P.modulus().bit_length() + plan.log2m;
  const std::size_t PW = ceil_div(m * F, w);
  const std::size_t CW = ceil_div(F, w);
  Scratch<W> X(PW), Y(PW), Z(2 * PW), ck(CW), lo(c), hi(c), sc(CW + 1);
  mpn::zero(X.data(), PW);
  mpn::zero(Y.data(), PW);
  for (std::size_t i = 0; i < m; ++i) {
    mpn::add_at_bit(X.data(), PW, x + i * c, c, i * F);
    mpn::add_at_bit(Y.data(), PW, y + i * c, c, i * F);
  }
  if (PW >= th.dmul && PW >= 64)
    dmul_n(Z.data(), X.data(), PW, Y.data(), PW, th);
  else if (PW >= th.smul)
    smul_n(Z.data(), X.data(), PW, Y.data(), PW, th);
  else
    t3mul_n(Z.data(), X.data(), PW, Y.data(), PW, th);
  for (std::size_t k = 0; k < m; ++k) {
    mpn::extract_bits(ck.data(), CW, Z.data(), 2 * PW, k * F, F);
    plan.P.reduce(lo.data(), ck.data(), CW, sc.data());
    if (k + m < 2 * m - 1) {
      mpn::extract_bits(ck.data(), CW, Z.data(), 2 * PW, (k + m) * F, F);
      plan.P.reduce(hi.data(), ck.data(), CW, sc.data());
      plan.P.sub(r + k * c, lo.data(), hi.data());  // alpha^m = -1
    } else {
      mpn::copy(r + k * c, lo.data(), c);
    }
  }
}

template <Word W>
std::vector<W> compute_rho(const DkssPlan<W>& plan) {
  const std::size_t m = plan.m;
  const Natural<W>& p = plan.P.modulus();
  // rho(gamma^i) = omega^i for odd i; the gamma^i are the roots of alpha^m + 1
  std::vector<Natural<W>> acc(m, Natural<W>::from_uint(0));
  std::vector<Natural<W>> xs, ys;
  for (std::size_t i = 1; i < 2 * m; i += 2) {
    xs.push_back(powmod(plan.gamma, Natural<W>::from_uint(i), p));
    ys.push_back(powmod(plan.omega, Natural<W>::from_uint(i), p));
  }
  for (std::size_t i = 0; i < m; ++i) {
    Natural<W> den = Natural<W>::from_uint(1);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      Natural<W> diff = nat_mod(nat_sub_abs(nat_add(xs[i], p), xs[j]).value, p);
      den = mulmod(den, diff, p);
    }
    Natural<W> scale = mulmod(ys[i], modinv(den, p), p);  // throws if not a unit
    // (alpha^m + 1) / (alpha - x_i) by synthetic division
    std::vector<Natural<W>> q(m);
    q[m - 1] = Natural<W>::from_uint(1);
    for (std::size_t k = m - 1; k >= 1; --k) q[k - 1] = mulmod(xs[i], q[k], p);
    for (std::size_t k = 0; k < m; ++k)
      acc[k] = nat_mod(nat_add(acc[k], mulmod(scale, q[k], p)), p).normalize();
  }
  std::vector<W> rho(plan.oclen, W{0});
  for (std::size_t k = 0; k < m; ++k) store(rho.data() + k * plan.iclen, acc[k], plan.iclen);
  return rho;
}

template <Word W>
DkssPlan<W> dkss_make_plan(std::size_t N, std::size_t M, std::size_t m, std::size_t u,
                           const Natural<W>& p, std::uint64_t zeta) {
  if (!is_pow2(M) || !is_pow2(m) || m < 2 || M < m)
    throw std::invalid_argument("dkss: M and m must be powers of 2 with M >= m >= 2");
  DkssPlan<W> plan;
  plan.N = N;
  plan.M = M;
  plan.m = m;
  plan.log2M = log2_floor(M);
  plan.log2m = log2_floor(m);
  plan.mu = M / m;
  plan.u = u;
  plan.P = ModP<W>(p);
  plan.iclen = plan.P.len();
  plan.oclen = m * plan.iclen;
  plan.d = plan.iclen * word_bits<W>;
  plan.zeta = zeta;
  Natural<W> pm1 = nat_sub_abs(p, Natural<W>::from_uint(1)).value;
  Natural<W> q, r;
  nat_divmod(pm1, Natural<W>::from_uint(2 * M), &q, &r);
  if (!r.is_zero()) throw std::invalid_argument("dkss: 2M does not divide p-1");
  plan.omega = find_root_omega(plan);
  plan.gamma = powmod(plan.omega, Natural<W>::from_uint(plan.mu), p);
  plan.inv_2M = modinv(Natural<W>::from_uint(2 * M), p);
  plan.rho = compute_rho(plan);
  plan.rho_pow.assign(plan.mu * plan.oclen, W{0});
  plan.rho_pow[0] = 1;
  for (std::size_t s = 1; s < plan.mu; ++s)
    r_mul(plan.rho_pow.data() + s * plan.oclen, plan.rho_pow.data() + (s - 1) * plan.oclen,
          plan.rho.data(), plan);
  return plan;
}

template <Word W>
DkssPlan<W> dkss_select_params(std::size_t N) {
  DkssShape sh = dkss_shape(N, word_bits<W>);
  const ProthTableEntry* e = proth_table_lookup(static_cast<unsigned>(sh.d));
  // inputs up to M*m/2*u bits share this plan
  std::size_t cap = sh.M * sh.m / 2 * sh.u;
  DkssPlan<W> plan = dkss_make_plan<W>(cap, sh.M, sh.m, sh.u, proth_value<W>(*e), e->g);
  plan.h = e->h;
  std::ostringstream os;
  os << "N=" << sh.N << " bits: d=" << sh.d << " (p=" << e->h << "*2^" << (sh.d - log2_floor(e->h) - 1)
     << "+1, g=" << e->g << ") u=" << sh.u << " Mm=" << sh.M * sh.m << " M=" << sh.M
     << " m=" << sh.m << " mu=" << plan.mu << " capacity=" << cap << " bits";
  plan.trace = os.str();
  return plan;
}

template <Word W>
const DkssPlan<W>& dkss_plan_cached(std::size_t N) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>,
                  std::unique_ptr<const DkssPlan<W>>>
      cache;
  DkssShape sh = dkss_shape(N, word_bits<W>);
  auto key = std::make_tuple(sh.M, sh.m, sh.u, sh.d);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<const DkssPlan<W>>(dkss_select_params<W>(N))).first;
  return *it->second;
}

template <Word W>
bool principal_sum_check(const ModP<W>& P, const Natural<W>& root, std::size_t order) {
  const Natural<W>& p = P.modulus();
  Natural<W> one = Natural<W>::from_uint(1);
  if (!(powmod(root, Natural<W>::from_uint(order), p) == one)) return false;
  for (std::size_t j = 1; j < order; ++j) {
    Natural<W> wj = powmod(root, Natural<W>::from_uint(j), p);
    Natural<W> term = one, sum = Natural<W>::from_uint(0);
    for (std::size_t i = 0; i < order; ++i) {
      sum = nat_mod(nat_add(sum, term), p);
      term = mulmod(term, wj, p);
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

template <Word W>
bool dkss_check_roots(const DkssPlan<W>& plan, std::size_t full_sum_limit) {
  const std::size_t oc = plan.oclen;
  std::vector<W> t(oc), alpha(oc, W{0}), one(oc, W{0});
  one[0] = 1;
  alpha[plan.iclen] = 1;
  // rho^mu
  r_mul(t.data(), plan.rho_pow.data() + (plan.mu - 1) * oc, plan.rho.data(), plan);
  if (t != alpha) return false;
  // rho^(2M) by squaring
  t = plan.rho;
  for (unsigned i = 0; i < plan.log2M + 1; ++i) r_mul(t.data(), t.data(), t.data(), plan);
  if (t != one) return false;
  const Natural<W>& p = plan.P.modulus();
  if (2 * plan.M <= full_sum_limit) return principal_sum_check(plan.P, plan.omega, 2 * plan.M);
  Natural<W> pm1 = nat_sub_abs(p, Natural<W>::from_uint(1)).value;
  return powmod(plan.omega, Natural<W>::from_uint(2 * plan.M), p) == Natural<W>::from_uint(1) &&
         powmod(plan.omega, Natural<W>::from_uint(plan.M), p) == pm1;
}

template <Word W>
void dkss_inner_fft_eval(W* v, std::size_t len, const DkssPlan<W>& plan) {
  Scratch<W> t(plan.oclen);
  InnerRing<W> ring(v, len, plan, t.data());
  fft_eval(ring, 0, len);
}

namespace {

template <Word W>
void fft_frame(W* a, std::size_t Mh, const DkssPlan<W>& plan, const ThresholdTable& th,
               std::uint64_t base_pow) {
  const std::size_t m = plan.m, oc = plan.oclen;
  if (Mh <= m) {
    Scratch<W> t(oc);
    InnerRing<W> ring(a, 2 * Mh, plan, t.data());
    shuffle(ring, 0, 2 * Mh);
    fft_eval(ring, 0, 2 * Mh);
    return;
  }
  const std::size_t mu = Mh / m;
  const unsigned log2m = plan.log2m + 1;
  Scratch<W> abar(2 * Mh * oc), el(2 * m * oc), t(oc);

  // inner DFTs of e_l(y) = sum_j a_{j*mu+l} y^j, assembled in shuffled order
  for (std::size_t l = 0; l < mu; ++l) {
    for (std::size_t j = 0; j < 2 * m; ++j)
      mpn::copy(el.data() + bit_rev(j, log2m) * oc, a + (j * mu + l) * oc, oc);
    InnerRing<W> ring(el.data(), 2 * m, plan, t.data());
    fft_eval(ring, 0, 2 * m);
    for (std::size_t v = 0; v < 2 * m; ++v)
      mpn::copy(abar.data() + (v * mu + l) * oc, el.data() + v * oc, oc);
  }

  // twiddles rho^(v*l) = alpha^pe * rho^pi, then outer DFTs of length mu
  const std::uint64_t top_mu = mu * base_pow;
  const unsigned psh = log2_floor(top_mu);
  DkssStats& st = dkss_stats();
  for (std::size_t v = 0; v < 2 * m; ++v) {
    W* abar_v = abar.data() + v * mu * oc;
    std::uint64_t vlbase = 0;
    for (std::size_t l = 1; l < mu; ++l) {
      vlbase += v * base_pow;
      W* abar_vl = abar_v + l * oc;
      std::uint64_t pi = vlbase & (top_mu - 1);
      std::uint64_t pe = vlbase >> psh;
      ++st.twiddle_shift;
      if (pi == 0) {
        poly_mul_xpow(t.data(), abar_vl, pe, plan);
        mpn::copy(abar_vl, t.data(), oc);
      } else {
        poly_mul_xpow(t.data(), plan.rho_pow.data() + pi * oc, pe, plan);
        ++st.twiddle_mul;
        r_mul(abar_vl, abar_vl, t.data(), plan, th);
      }
    }
    fft_frame(abar_v, mu / 2, plan, th, base_pow * 2 * m);
    for (std::size_t f = 0; f < mu; ++f) mpn::copy(a + (v + 2 * m * f) * oc, abar_v + f * oc, oc);
  }
}

template <Word W>
void encode_into(W* dst, const W* a, std::size_t an, const DkssPlan<W>& plan) {
  const std::size_t c = plan.iclen, oc = plan.oclen, half = plan.m / 2;
  mpn::zero(dst, 2 * plan.M * oc);
  std::size_t abits = an ? an * word_bits<W> - count_leading_zeros(a[an - 1]) : 0;
  for (std::size_t l = 0; l < plan.M; ++l)
    for (std::size_t i = 0; i < half; ++i) {
      std::size_t pos = (l * half + i) * plan.u;
      if (pos >= abits) return;
      mpn::extract_bits(dst + l * oc + i * c, c, a, an, pos, plan.u);
    }
}

// r[0..rn) = sum of c_l,i * 2^(l*u*m/2 + i*u), c_l read from index -l, scaled by 1/2M.
template <Word W>
void decode_into(W* r, std::size_t rn, const W* v, const DkssPlan<W>& plan) {
  const std::size_t c = plan.iclen, oc = plan.oclen, n = 2 * plan.M;
  Scratch<W> x(c), sc(4 * c + 1);
  std::vector<W> inv(c);
  store(inv.data(), plan.inv_2M, c);
  mpn::zero(r, rn);
  const std::size_t limit = rn * word_bits<W>;
  for (std::size_t l = 0; l < n; ++l) {
    const W* cl = v + ((n - l) & (n - 1)) * oc;
    for (std::size_t i = 0; i < plan.m; ++i) {
      std::size_t pos = l * plan.u * (plan.m / 2) + i * plan.u;
      if (pos >= limit) break;
      if (mpn::is_zero(cl + i * c, c)) continue;
      plan.P.mul(x.data(), cl + i * c, inv.data(), sc.data());
      mpn::add_at_bit(r, rn, x.data(), c, pos);
    }
  }
}

}  // namespace

template <Word W>
void dkss_fft(W* v, const DkssPlan<W>& plan, const ThresholdTable& th) {
  fft_frame(v, plan.M, plan, th, 1);
}

template <Word W>
std::vector<W> dkss_encode(const Natural<W>& a, const DkssPlan<W>& plan) {
  std::vector<W> v(2 * plan.M * plan.oclen);
  encode_into(v.data(), a.data(), a.significant_words(), plan);
  return v;
}

template <Word W>
Natural<W> dkss_decode(const std::vector<W>& v, const DkssPlan<W>& plan) {
  std::size_t bits = 2 * plan.M * plan.u * (plan.m / 2) + plan.d + word_bits<W>;
  Natural<W> r;
  r.resize(ceil_div(bits, word_bits<W>));
  decode_into(r.data(), r.size(), v.data(), plan);
  return r.normalize();
}

template <Word W>
void dmul_n(W* r, const W* a, std::size_t an, const W* b, std::size_t bn, const ThresholdTable& th) {
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
  const DkssPlan<W>& plan = dkss_plan_cached<W>(std::max(abits, bbits));
  const std::size_t len = 2 * plan.M * plan.oclen;
  Scratch<W> A(len), B(len);
  encode_into(A.data(), a, an, plan);
  encode_into(B.data(), b, bn, plan);
  dkss_fft(A.data(), plan, th);
  dkss_fft(B.data(), plan, th);
  for (std::size_t i = 0; i < 2 * plan.M; ++i)
    r_mul(A.data() + i * plan.oclen, A.data() + i * plan.oclen, B.data() + i * plan.oclen, plan, th);
  dkss_fft(A.data(), plan, th);
  decode_into(r, rn, A.data(), plan);
}

template <Word W>
Natural<W> dmul(const Natural<W>& a, const Natural<W>& b, const ThresholdTable& th) {
  Natural<W> r;
  r.resize(a.size() + b.size());
  dmul_n(r.data(), a.data(), a.size(), b.data(), b.size(), th);
  return r;
}

#define BIGMUL_INST(W)                                                                          \
  template class ModP<W>;                                                                       \
  template Natural<W> find_root_omega(const DkssPlan<W>&);                                      \
  template std::vector<W> compute_rho(const DkssPlan<W>&);                                      \
  template DkssPlan<W> dkss_make_plan(std::size_t, std::size_t, std::size_t, std::size_t,      \
                                      const Natural<W>&, std::uint64_t);                        \
  template DkssPlan<W> dkss_select_params<W>(std::size_t);                                      \
  template const DkssPlan<W>& dkss_plan_cached<W>(std::size_t);                                 \
  template bool principal_sum_check(const ModP<W>&, const Natural<W>&, std::size_t);            \
  template bool dkss_check_roots(const DkssPlan<W>&, std::size_t);                              \
  template void poly_add(W*, const W*, const W*, const DkssPlan<W>&);                           \
  template void poly_sub(W*, const W*, const W*, const DkssPlan<W>&);                           \
  template void poly_mul_xpow(W*, const W*, std::uint64_t, const DkssPlan<W>&);                 \
  template void r_mul(W*, const W*, const W*, const DkssPlan<W>&, const ThresholdTable&);       \
  template void dkss_inner_fft_eval(W*, std::size_t, const DkssPlan<W>&);                       \
  template void dkss_fft(W*, const DkssPlan<W>&, const ThresholdTable&);                        \
  template std::vector<W> dkss_encode(const Natural<W>&, const DkssPlan<W>&);                   \
  template Natural<W> dkss_decode(const std::vector<W>&, const DkssPlan<W>&);                   \
  template void dmul_n(W*, const W*, std::size_t, const W*, std::size_t, const ThresholdTable&); \
  template Natural<W> dmul(const Natural<W>&, const Natural<W>&, const ThresholdTable&);
BIGMUL_FOR_EACH_WORD(BIGMUL_INST)
#undef BIGMUL_INST

}  // namespace bigmul
