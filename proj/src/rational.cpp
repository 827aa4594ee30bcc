#include "treeavg/rational.hpp"

#include "treeavg/errors.hpp"

namespace treeavg {

std::string wide_to_string(Wide x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x)
                            : static_cast<unsigned __int128>(x);
  char buf[48];
  int pos = 48;
  while (u > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  std::string s(buf + pos, buf + 48);
  return neg ? "-" + s : s;
}

std::string Rational::str() const {
  if (den_ == 1) return wide_to_string(num_);
  return wide_to_string(num_) + "/" + wide_to_string(den_);
}

Wide wide_lcm(Wide a, Wide b) {
  if (a == 0 || b == 0) return 0;
  return wide_abs(wide_mul(a / wide_gcd(a, b), b));
}

void throw_rational_overflow() {
  throw ResourceError("exact rational arithmetic overflowed 128 bits");
}

}  // namespace treeavg
