#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace mdil {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_floor(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);  // den > 0 canonically
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

inline BigInt rat_ceil(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  BigInt q = num / den;
  if (num > 0 && q * den != num) ++q;
  return q;
}

inline double rat_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string rat_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace mdil
