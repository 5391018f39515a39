#include "dhtk/rational.hpp"

#include "dhtk/error.hpp"

namespace dhtk {

Rational makeRational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational makeRational(long num, long den) {
  return makeRational(Integer(num), Integer(den));
}

std::string toString(const Rational& q) { return q.get_str(); }

std::string toString(const Integer& z) { return z.get_str(); }

Rational parseRational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  Integer num;
  Integer den = 1;
  auto parseInt = [&](const std::string& part, Integer& out) {
    std::string digits = part;
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    if (digits.empty() || out.set_str(digits, 10) != 0)
      throw Error(ErrorCode::InvalidInput, "malformed rational '" + s + "'");
  };
  if (slash == std::string::npos) {
    parseInt(s, num);
  } else {
    parseInt(s.substr(0, slash), num);
    parseInt(s.substr(slash + 1), den);
  }
  return makeRational(num, den);
}

bool isInteger(const Rational& q) { return q.get_den() == 1; }

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace dhtk
