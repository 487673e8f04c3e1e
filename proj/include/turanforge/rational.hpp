#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace turanforge {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

}  // namespace turanforge
