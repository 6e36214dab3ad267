#pragma once

// Exact arbitrary-precision arithmetic used by the genus and formula code.
// Everything downstream of a census or a closed-form evaluation is integer
// or rational; no floating point appears anywhere in the toolkit.

#include <boost/multiprecision/cpp_int.hpp>

namespace hq {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

}  // namespace hq
