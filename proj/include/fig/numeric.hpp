#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace fig {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_dec(const Int &v) { return v.str(); }

inline Int int_from_dec(const std::string &s) { return Int(s); }

// "n" or "n/d", exact
inline std::string to_ratstr(const Rat &v) {
    if (boost::multiprecision::denominator(v) == 1)
        return boost::multiprecision::numerator(v).str();
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

inline Rat rat_from_str(const std::string &s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline Int pow10(int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= 10;
    return r;
}

inline int dec_digits(Int v) {
    if (v == 0) return 1;
    int n = 0;
    while (v > 0) { v /= 10; ++n; }
    return n;
}

} // namespace fig
