#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rankone {

// Heights grow faster than n!, so every count and measure is kept exact.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Largest k with k^3 <= x.  Exact; no floating point near cube boundaries.
inline Int icbrt(const Int& x) {
    if (x < 0) throw std::invalid_argument("icbrt: negative argument");
    if (x == 0) return 0;
    Int lo = 0, hi = 1;
    while (hi * hi * hi <= x) hi <<= 1;
    while (lo + 1 < hi) {
        Int mid = (lo + hi) >> 1;
        if (mid * mid * mid <= x) lo = mid;
        else hi = mid;
    }
    return lo;
}

inline std::string fraction_string(const Rat& r) {
    std::ostringstream os;
    os << num(r) << '/' << den(r);
    return os.str();
}

namespace detail_numeric {

inline Int pow10(long k) {
    return boost::multiprecision::pow(Int(10), (unsigned)k);
}

}  // namespace detail_numeric

// Decimal rendering with `digits` significant digits, scientific form when the
// exponent is far from zero.  Exact integer arithmetic throughout; the
// exponent comes from digit counts so huge numerators and denominators stay
// cheap.
inline std::string decimal_string(const Rat& r, int digits = 6) {
    if (r == 0) return "0";
    Int n = num(r), d = den(r);
    bool neg = n < 0;
    if (neg) n = -n;

    // decimal exponent e with 10^e <= n/d < 10^(e+1)
    long dn = (long)n.str().size(), dd = (long)d.str().size();
    long e = dn - dd;  // value / 10^e is in [0.1, 10)
    bool ge_one = (e >= 0) ? (n >= d * detail_numeric::pow10(e))
                           : (n * detail_numeric::pow10(-e) >= d);
    if (!ge_one) --e;

    // mantissa digits: floor(n * 10^(digits-1-e) / d), rounded half up
    long shift = digits - 1 - e;
    Int q, rem;
    if (shift >= 0) {
        Int scaled = n * detail_numeric::pow10(shift);
        q = scaled / d;
        rem = scaled % d;
        if (2 * rem >= d) ++q;
    } else {
        q = n / (d * detail_numeric::pow10(-shift));
    }
    std::string mant = q.str();
    if ((long)mant.size() > digits) {  // rounding carried over
        mant = mant.substr(0, digits);
        ++e;
    }
    while ((long)mant.size() < digits) mant += '0';

    std::string out = neg ? "-" : "";
    if (e >= -4 && e < digits + 3) {
        if (e >= 0) {
            std::string ip = mant.substr(0, e + 1);
            while ((long)ip.size() < e + 1) ip += '0';
            std::string fp = (e + 1 < (long)mant.size()) ? mant.substr(e + 1) : "";
            out += ip;
            if (!fp.empty()) out += "." + fp;
        } else {
            out += "0.";
            for (long i = 0; i < -e - 1; ++i) out += '0';
            out += mant;
        }
    } else {
        out += mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(e);
    }
    return out;
}

// Errors that map to the CLI usage/budget exit code rather than a check failure.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct horizon_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rankone
