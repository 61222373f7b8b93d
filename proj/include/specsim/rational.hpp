#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace specsim {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Canonical form: "p/q" in lowest terms, "p" when q == 1, sign on the numerator.
std::string rat_to_string(const Rat& q);

// Accepts "p" or "p/q" with an optional leading '-' on the numerator.
// Throws std::invalid_argument on anything else (including q <= 0).
Rat rat_from_string(const std::string& s);

}  // namespace specsim
