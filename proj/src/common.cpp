#include "afg/common.hpp"

#include <cmath>

namespace afg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::RankTooSmall: return "rank-too-small";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::MissingData: return "missing-data";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::IdentityViolated: return "identity-violated";
  }
  return "unknown";
}

Integer ipow(const Integer& base, unsigned exp) {
  Integer result = 1;
  Integer b = base;
  while (exp) {
    if (exp & 1u) result *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return result;
}

std::uint64_t ipow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string to_string(const Integer& v) { return v.str(); }

std::string to_string(const Rational& v) {
  const Integer num = boost::multiprecision::numerator(v);
  const Integer den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double log_ratio(const Integer& num, const Integer& base) {
  return std::log(num.convert_to<double>()) / std::log(base.convert_to<double>());
}

Caps& default_caps() {
  static Caps caps;
  return caps;
}

}  // namespace afg
