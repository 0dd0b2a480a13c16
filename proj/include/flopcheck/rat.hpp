#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace flopcheck {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

/// "p/q" with q > 0; integers are written "p/1".
std::string format_rat(const Rat& x);
/// Accepts "p/q" or a bare integer "p".
Rat parse_rat(std::string_view text);

inline bool is_zero(const Rat& x) { return x == 0; }

Integer binomial(long n, long k);
Integer factorial(long n);

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Rat> bernoulli_numbers(int n);

/// Taylor coefficients of x / (1 - e^{-x}) through x^n.
std::vector<Rat> todd_series(int n);
/// Taylor coefficients of e^x through x^n.
std::vector<Rat> exp_series(int n);

}  // namespace flopcheck
