#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace afg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorKind {
  InvalidArgument,
  RankTooSmall,
  CapExceeded,
  MissingData,
  Unsupported,
  IdentityViolated,
};

// Every recoverable failure in the library is a DomainError; the CLI maps
// these to exit status 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw DomainError(kind, what);
}

const char* to_string(ErrorKind kind);

Integer ipow(const Integer& base, unsigned exp);
std::uint64_t ipow_u64(std::uint64_t base, unsigned exp);

std::string to_string(const Integer& v);
// num/den, or plain num when den == 1.
std::string to_string(const Rational& v);

double log_ratio(const Integer& num, const Integer& base);

// Enumeration budgets, overridable from the CLI with --cap.
struct Caps {
  std::uint64_t group_elements = 10'000'000;
  std::uint64_t matrix_tuples = 1'000'000'000;
  std::uint64_t orbit = 1'000'000;
  std::uint64_t subspaces = 1'000'000;
  std::uint64_t action_degree = std::uint64_t{1} << 22;
};

Caps& default_caps();

}  // namespace afg
