#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatfiber {

using Integer = mpz_class;
using Rational = mpq_class;

// Base class for every error the toolkit reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses "p/q", "p" or "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor_of(const Rational& q);
Rational fractional_part(const Rational& q);
bool is_integral(const Rational& q);
Integer floor_div(const Integer& a, const Integer& b);
Integer lcm_of(const Integer& a, const Integer& b);
Integer gcd_of(const Integer& a, const Integer& b);
Integer abs_of(const Integer& a);

}  // namespace flatfiber
