#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qls::metrology {

// Exact fraction over 128-bit integers, always reduced with a positive
// denominator. Any overflow throws PrecisionError.
class Rational {
public:
  using Int = __int128;

  Rational(Int num = 0, Int den = 1);
  static Rational parse(const std::string& text); // "p", "p/q" or a decimal such as "-12.345"

  Int num() const { return num_; }
  Int den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

  // Nearest integer, halves away from zero.
  std::int64_t round_to_int64() const;
  std::string str() const;

private:
  Int num_;
  Int den_;
};

// nu_out = a nu_in + b with b in mHz.
struct FrequencyChainNode {
  std::string label;
  Rational a{1};
  Rational b_mhz{0};

  static FrequencyChainNode scale(std::string label, Rational a);
  // Comb transfer from an optical line locked at comb mode n_in with total
  // offset (f_ceo + beat) off_in to the line at mode n_out with offset off_out:
  // nu_out = (n_out / n_in)(nu_in - off_in) + off_out.
  static FrequencyChainNode comb_transfer(std::string label, std::int64_t n_in, Rational offset_in_mhz,
                                          std::int64_t n_out, Rational offset_out_mhz);
};

// Composes the nodes left to right starting from the anchor (mHz) and returns
// the exact result.
Rational frequency_chain_exact(const std::vector<FrequencyChainNode>& chain, std::int64_t anchor_mhz);
// Same, rounded to the nearest mHz.
std::int64_t frequency_chain_eval(const std::vector<FrequencyChainNode>& chain, std::int64_t anchor_mhz);

// "1122842857334736" or "1122842857334736.123" (Hz) -> mHz, exactly.
std::int64_t parse_hz_to_mhz(const std::string& text);
std::string format_mhz_as_hz(std::int64_t mhz);

} // namespace qls::metrology
