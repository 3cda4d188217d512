#pragma once

#include <stdexcept>
#include <string>

namespace alphasun {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside the documented domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Evaluation point within tolerance of a pole of a gamma factor or a
// series denominator.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Two pole sequences of the second-order density form closer than the
// separation the term-by-term evaluation can tolerate.
class PoleCollisionError : public PoleError {
 public:
  explicit PoleCollisionError(const std::string& msg) : PoleError(msg) {}
};

// Series or iteration hit its term/iteration budget before the stopping
// rule fired, or a halving check disagreed.
class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

// Request whose exact-arithmetic cost is past the supported range.
class ComplexityError : public Error {
 public:
  explicit ComplexityError(const std::string& msg) : Error(msg) {}
};

// A product over conjugate root pairs came out with a nonreal residue.
class ConjugacyError : public Error {
 public:
  explicit ConjugacyError(const std::string& msg) : Error(msg) {}
};

// Truncated integral whose discarded tail fails its decay guard.
class TailError : public Error {
 public:
  explicit TailError(const std::string& msg) : Error(msg) {}
};

}  // namespace alphasun
