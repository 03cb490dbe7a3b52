#include "bigmul/natural.hpp"

#include <algorithm>
#include <stdexcept>

namespace bigmul {

template <Word W>
Natural<W> Natural<W>::from_uint(std::uint64_t v) {
  Natural r;
  if (v == 0) return Natural({W{0}});
  while (v) {
    r.limbs_.push_back(static_cast<W>(v));
    if constexpr (word_bits<W> >= 64)
      v = 0;
    else
      v >>= word_bits<W>;
  }
  return r;
}

template <Word W>
Natural<W> Natural<W>::power_of_two(std::size_t bits) {
  Natural r;
  r.resize(bits / word_bits<W> + 1);
  r.limbs_[bits / word_bits<W>] = static_cast<W>(W{1} << (bits % word_bits<W>));
  return r;
}

template <Word W>
Natural<W> Natural<W>::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  Natural r;
  constexpr unsigned digits_per_word = word_bits<W> / 4;
  r.resize((hex.size() + digits_per_word - 1) / digits_per_word);
  std::size_t pos = 0;
  for (std::size_t i = hex.size(); i-- > 0; ++pos) {
    char c = hex[i];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw std::invalid_argument("bad hex digit");
    r.limbs_[pos / digits_per_word] |= static_cast<W>(W(v) << (4 * (pos % digits_per_word)));
  }
  if (r.limbs_.empty()) r.limbs_.push_back(0);
  return r;
}

template <Word W>
std::string Natural<W>::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  std::size_t n = significant_words();
  for (std::size_t i = 0; i < n; ++i) {
    W x = limbs_[i];
    for (unsigned k = 0; k < word_bits<W> / 4; ++k) {
      s.push_back(digits[x & 15]);
      x = static_cast<W>(x >> 4);
    }
  }
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (s.empty()) s = "0";
  std::reverse(s.begin(), s.end());
  return s;
}

template <Word W>
Natural<W>& Natural<W>::normalize() {
  limbs_.resize(significant_words());
  return *this;
}

template <Word W>
std::size_t Natural<W>::bit_length() const {
  std::size_t n = significant_words();
  if (n == 0) return 0;
  return n * word_bits<W> - count_leading_zeros(limbs_[n - 1]);
}

template <Word W>
bool Natural<W>::bit(std::size_t i) const {
  std::size_t q = i / word_bits<W>;
  if (q >= limbs_.size()) return false;
  return (limbs_[q] >> (i % word_bits<W>)) & 1;
}

template <Word W>
std::uint64_t Natural<W>::low_u64() const {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i * word_bits<W> < 64 && i < limbs_.size(); ++i)
    v |= static_cast<std::uint64_t>(limbs_[i]) << (i * word_bits<W>);
  return v;
}

template <Word W>
Natural<W> nat_add(const Natural<W>& a, const Natural<W>& b) {
  const Natural<W>& x = a.size() >= b.size() ? a : b;
  const Natural<W>& y = a.size() >= b.size() ? b : a;
  Natural<W> r;
  r.resize(x.size() + 1);
  r.limbs()[x.size()] = mpn::add(r.data(), x.data(), x.size(), y.data(), y.size());
  if (r.size() > 1 && r.limbs().back() == 0) r.limbs().pop_back();
  return r;
}

template <Word W>
SubAbs<W> nat_sub_abs(const Natural<W>& a, const Natural<W>& b) {
  std::size_t an = a.significant_words(), bn = b.significant_words();
  int c = mpn::cmp(a.data(), an, b.data(), bn);
  Natural<W> r;
  if (c == 0) return {Natural<W>({W{0}}), false};
  const W* x = c > 0 ? a.data() : b.data();
  const W* y = c > 0 ? b.data() : a.data();
  std::size_t xn = c > 0 ? an : bn, yn = c > 0 ? bn : an;
  r.resize(xn);
  mpn::sub(r.data(), x, xn, y, yn);
  r.normalize();
  return {std::move(r), c < 0};
}

template <Word W>
std::strong_ordering nat_cmp(const Natural<W>& a, const Natural<W>& b) {
  int c = mpn::cmp(a.data(), a.size(), b.data(), b.size());
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

template <Word W>
Natural<W> nat_shl(const Natural<W>& a, std::size_t bits) {
  std::size_t q = bits / word_bits<W>;
  unsigned s = bits % word_bits<W>;
  Natural<W> r;
  if (a.size() == 0) return Natural<W>({W{0}});
  r.resize(a.size() + q + (s ? 1 : 0));
  if (s)
    r.limbs()[a.size() + q] = mpn::lshift(r.data() + q, a.data(), a.size(), s);
  else
    mpn::copy(r.data() + q, a.data(), a.size());
  return r;
}

template <Word W>
Natural<W> nat_shr(const Natural<W>& a, std::size_t bits) {
  std::size_t q = bits / word_bits<W>;
  unsigned s = bits % word_bits<W>;
  if (q >= a.size()) return Natural<W>({W{0}});
  Natural<W> r;
  r.resize(a.size() - q);
  if (s)
    mpn::rshift(r.data(), a.data() + q, r.size(), s);
  else
    mpn::copy(r.data(), a.data() + q, r.size());
  return r;
}

template <Word W>
Natural<W> nat_low_bits(const Natural<W>& a, std::size_t bits) {
  Natural<W> r;
  r.resize(ceil_div(bits, word_bits<W>));
  if (r.size()) mpn::extract_bits(r.data(), r.size(), a.data(), a.size(), 0, bits);
  return r;
}

template <Word W>
void nat_divmod(const Natural<W>& a, const Natural<W>& d, Natural<W>* q, Natural<W>* r) {
  std::size_t dn = d.significant_words();
  if (dn == 0) throw std::domain_error("division by zero");
  std::size_t an = std::max(a.significant_words(), dn);
  std::vector<W> av(a.limbs().begin(), a.limbs().begin() + std::min(a.size(), an));
  av.resize(an, W{0});
  mpn::Divisor<W> div(d.data(), dn);
  std::vector<W> scratch(an + 1), qv(an - dn + 1), rv(dn);
  div.divrem(qv.data(), rv.data(), av.data(), an, scratch.data());
  if (q) *q = Natural<W>(std::move(qv)).normalize();
  if (r) *r = Natural<W>(std::move(rv));
}

template <Word W>
Natural<W> nat_mod(const Natural<W>& a, const Natural<W>& d) {
  Natural<W> r;
  nat_divmod(a, d, static_cast<Natural<W>*>(nullptr), &r);
  return r;
}

#define BIGMUL_INST(W)                                                                   \
  template class Natural<W>;                                                             \
  template Natural<W> nat_add(const Natural<W>&, const Natural<W>&);                     \
  template SubAbs<W> nat_sub_abs(const Natural<W>&, const Natural<W>&);                  \
  template std::strong_ordering nat_cmp(const Natural<W>&, const Natural<W>&);           \
  template Natural<W> nat_shl(const Natural<W>&, std::size_t);                           \
  template Natural<W> nat_shr(const Natural<W>&, std::size_t);                           \
  template Natural<W> nat_low_bits(const Natural<W>&, std::size_t);                      \
  template void nat_divmod(const Natural<W>&, const Natural<W>&, Natural<W>*, Natural<W>*); \
  template Natural<W> nat_mod(const Natural<W>&, const Natural<W>&);
BIGMUL_FOR_EACH_WORD(BIGMUL_INST)
#undef BIGMUL_INST

}  // namespace bigmul
