// Exact arithmetic aliases shared by the counting and bound modules.
//
// All combinatorial censuses use BigInt, all exact statistics BigRat.
// BigFloat (50 decimal digits) is reserved for the closed-form worst-case
// bound evaluation, where integer exactness is impossible but double
// precision would be awkward to justify.

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace platgenus {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// num/den as long double for num, den >= 0, num <= den.  Values of
// astronomical magnitude (3^100000 and friends) overflow any float type,
// so both operands are shifted down to <= 96 significant bits first; the
// result is accurate to ~2^-63 relative error.
inline long double ratio_as_long_double(const BigInt& num, const BigInt& den) {
    if (num == 0) {
        return 0.0L;
    }
    unsigned shift = 0;
    const unsigned den_bits = boost::multiprecision::msb(den) + 1;
    if (den_bits > 96) {
        shift = den_bits - 96;
    }
    const BigInt n2 = num >> shift;
    const BigInt d2 = den >> shift;
    return n2.convert_to<long double>() / d2.convert_to<long double>();
}

inline double ratio_as_double(const BigInt& num, const BigInt& den) {
    return static_cast<double>(ratio_as_long_double(num, den));
}

inline double rat_as_double(const BigRat& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    bool neg = num < 0;
    if (neg) {
        num = -num;
    }
    // numerator may exceed denominator; split into integer + fractional part
    BigInt whole = num / den;
    BigInt rem = num % den;
    double v = whole.convert_to<double>() + ratio_as_double(rem, den);
    return neg ? -v : v;
}

} // namespace platgenus
