#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace sst {

/// Exact integer used for all lattice pairings, series coefficients and
/// moment entries. Sum-rule verdicts must never suffer overflow.
using Integer = boost::multiprecision::cpp_int;

struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_even(const Integer& v) { return (v & 1) == 0; }
inline bool is_odd(const Integer& v) { return !is_even(v); }

/// Mathematical floor of num/den (den > 0), also for negative numerators.
inline long long floor_div(long long num, long long den) {
    long long q = num / den;
    if (num % den != 0 && ((num < 0) != (den < 0))) --q;
    return q;
}

/// Parity of an Integer exponent, as the sign (-1)^v.
inline int parity_sign(const Integer& v) { return is_even(v) ? +1 : -1; }

inline double to_double(const Integer& v) { return v.convert_to<double>(); }

}  // namespace sst
