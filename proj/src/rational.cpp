#include "specsim/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace specsim {

std::string rat_to_string(const Rat& q) {
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool valid_integer_(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer_(s)) throw std::invalid_argument("not a rational: '" + s + "'");
    return Rat(Int(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_integer_(num) || !valid_integer_(den) || den.empty() || den[0] == '-')
    throw std::invalid_argument("not a rational: '" + s + "'");
  const Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rat(Int(num), d);
}

}  // namespace specsim
