#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace deductron {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace deductron
