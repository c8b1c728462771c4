#pragma once

#include <stdexcept>
#include <string>

namespace pq {

// Error hierarchy. Every failure mode named in a module contract gets its
// own type so callers can catch precisely; all derive from Error.

struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct CapExceeded : Error {
  explicit CapExceeded(const std::string &msg) : Error(msg) {}
};

struct NotInSubgroup : Error {
  explicit NotInSubgroup(const std::string &msg) : Error(msg) {}
};

struct CosetLimitExceeded : Error {
  explicit CosetLimitExceeded(const std::string &msg) : Error(msg) {}
};

struct WordNotInSubgroup : Error {
  explicit WordNotInSubgroup(const std::string &msg) : Error(msg) {}
};

struct NotAppropriate : Error {
  explicit NotAppropriate(const std::string &msg) : Error(msg) {}
};

struct NotSurjective : Error {
  explicit NotSurjective(const std::string &msg) : Error(msg) {}
};

struct ThetaZero : Error {
  explicit ThetaZero(const std::string &msg) : Error(msg) {}
};

struct NonIntegralGenus : Error {
  explicit NonIntegralGenus(const std::string &msg) : Error(msg) {}
};

struct BadType : Error {
  explicit BadType(const std::string &msg) : Error(msg) {}
};

struct SingularSystem : Error {
  explicit SingularSystem(const std::string &msg) : Error(msg) {}
};

struct OrbitCapExceeded : Error {
  explicit OrbitCapExceeded(const std::string &msg) : Error(msg) {}
};

struct ParseError : Error {
  ParseError(const std::string &msg, int line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
  int line_number;
};

struct OrderMismatch : Error {
  explicit OrderMismatch(const std::string &msg) : Error(msg) {}
};

// Signals that a fixed-width integer fast path overflowed and the caller
// must redo the computation with arbitrary precision.
struct ArithmeticOverflow : Error {
  explicit ArithmeticOverflow(const std::string &msg) : Error(msg) {}
};

} // namespace pq
