#pragma once

#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <limits>
#include <type_traits>

namespace sst {

/// Extended-precision evaluation hook: the curve and partition-function
/// templates instantiate over this type for oracle cross-checks.
using MpComplex = boost::multiprecision::cpp_complex_50;

namespace num {

template <class C>
using real_of = std::decay_t<decltype(std::declval<C>().real())>;

inline double as_double(double v) { return v; }
inline double as_double(float v) { return v; }
template <class B, boost::multiprecision::expression_template_option E>
double as_double(const boost::multiprecision::number<B, E>& v) {
    return v.template convert_to<double>();
}

template <class C>
C make(double re, double im = 0.0) {
    return C(static_cast<real_of<C>>(re), static_cast<real_of<C>>(im));
}

template <class C>
std::complex<double> to_std(const C& c) {
    return {as_double(c.real()), as_double(c.imag())};
}

template <class C>
double abs_double(const C& c) {
    using std::abs;
    return as_double(abs(c));
}

/// Integer power by repeated squaring; negative exponents invert.
template <class C>
C pow_int(C base, long long e) {
    if (e < 0) return make<C>(1.0) / pow_int(base, -e);
    C acc = make<C>(1.0);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// Principal cube root.
template <class C>
C cbrt(const C& c) {
    using std::exp;
    using std::log;
    if (c == make<C>(0.0)) return make<C>(0.0);
    return exp(log(c) / make<C>(3.0));
}

template <class C>
double epsilon() {
    return as_double(std::numeric_limits<real_of<C>>::epsilon());
}

}  // namespace num
}  // namespace sst
