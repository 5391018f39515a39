#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dhtk {

using Integer = mpz_class;
/// Exact rational in lowest terms with positive denominator. gmpxx keeps
/// arithmetic results canonical; construct through makeRational to keep it so.
using Rational = mpq_class;

Rational makeRational(const Integer& num, const Integer& den = 1);
Rational makeRational(long num, long den = 1);

/// "3", "-1/2".
std::string toString(const Rational& q);
std::string toString(const Integer& z);

/// Accepts "n" or "n/d" with optional sign; throws Error(InvalidInput).
Rational parseRational(std::string_view text);

bool isInteger(const Rational& q);

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

}  // namespace dhtk
