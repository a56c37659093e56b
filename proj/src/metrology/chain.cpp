#include "qls/metrology/chain.hpp"

#include "qls/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace qls::metrology {

namespace {

using Int = Rational::Int;

Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw PrecisionError("frequency chain arithmetic overflows 128 bits");
  return r;
}

Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw PrecisionError("frequency chain arithmetic overflows 128 bits");
  return r;
}

std::string to_string(Int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string s;
  // Work with negative values so that the minimum does not overflow.
  if (!neg) v = -v;
  while (v != 0) {
    s.push_back(static_cast<char>('0' - static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Int parse_int(const std::string& text) {
  if (text.empty()) throw ConfigError("empty integer");
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw ConfigError("malformed integer '" + text + "'");
  Int v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ConfigError("malformed integer '" + text + "'");
    v = add(mul(v, 10), text[i] - '0');
  }
  return neg ? -v : v;
}

} // namespace

Rational::Rational(Int num, Int den) : num_(num), den_(den) {
  if (den_ == 0) throw DomainError("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const Int g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_int(text));
  const std::string frac = text.substr(dot + 1);
  Int den = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) den = mul(den, 10);
  const std::string whole = text.substr(0, dot);
  const bool neg = !whole.empty() && whole[0] == '-';
  const Int w = whole.empty() || whole == "-" || whole == "+" ? 0 : parse_int(whole);
  const Int f = frac.empty() ? 0 : parse_int(frac);
  const Int mag = add(mul(w < 0 ? -w : w, den), f);
  return Rational(neg ? -mag : mag, den);
}

Rational Rational::operator+(const Rational& o) const {
  const Int g = gcd(den_, o.den_);
  const Int l = den_ / g;
  return Rational(add(mul(num_, o.den_ / g), mul(o.num_, l)), mul(l, o.den_));
}

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce first to keep intermediates small.
  const Int g1 = gcd(num_, o.den_);
  const Int g2 = gcd(o.num_, den_);
  const Int a = g1 ? num_ / g1 : num_, d2 = g1 ? o.den_ / g1 : o.den_;
  const Int b = g2 ? o.num_ / g2 : o.num_, d1 = g2 ? den_ / g2 : den_;
  return Rational(mul(a, b), mul(d1, d2));
}

std::int64_t Rational::round_to_int64() const {
  const Int q = num_ / den_;
  const Int r = num_ % den_;
  Int out = q;
  if (2 * (r < 0 ? -r : r) >= den_) out += num_ < 0 ? -1 : 1;
  if (out > std::numeric_limits<std::int64_t>::max() || out < std::numeric_limits<std::int64_t>::min())
    throw PrecisionError("frequency does not fit 64-bit mHz");
  return static_cast<std::int64_t>(out);
}

std::string Rational::str() const { return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_); }

FrequencyChainNode FrequencyChainNode::scale(std::string label, Rational a) {
  if (a.num() == 0) throw DomainError("chain node factor must be nonzero");
  return {std::move(label), a, Rational(0)};
}

FrequencyChainNode FrequencyChainNode::comb_transfer(std::string label, std::int64_t n_in, Rational offset_in_mhz,
                                                     std::int64_t n_out, Rational offset_out_mhz) {
  if (n_in <= 0 || n_out <= 0) throw DomainError("comb mode numbers must be > 0");
  const Rational a(n_out, n_in);
  return {std::move(label), a, offset_out_mhz + -(a * offset_in_mhz)};
}

Rational frequency_chain_exact(const std::vector<FrequencyChainNode>& chain, std::int64_t anchor_mhz) {
  if (chain.empty()) throw DomainError("frequency chain is empty");
  Rational v(anchor_mhz);
  for (const auto& node : chain) {
    if (node.a.num() == 0) throw DomainError("chain node '" + node.label + "' has a zero factor");
    v = node.a * v + node.b_mhz;
  }
  return v;
}

std::int64_t frequency_chain_eval(const std::vector<FrequencyChainNode>& chain, std::int64_t anchor_mhz) {
  return frequency_chain_exact(chain, anchor_mhz).round_to_int64();
}

std::int64_t parse_hz_to_mhz(const std::string& text) {
  return (Rational::parse(text) * Rational(1000)).round_to_int64();
}

std::string format_mhz_as_hz(std::int64_t mhz) {
  const bool neg = mhz < 0;
  const unsigned long long mag = neg ? 0ULL - static_cast<unsigned long long>(mhz) : static_cast<unsigned long long>(mhz);
  std::string frac = std::to_string(mag % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  return (neg ? "-" : "") + std::to_string(mag / 1000) + "." + frac;
}

} // namespace qls::metrology
