#pragma once

#include <stdexcept>
#include <string>

namespace segre {

// A differential pair whose composite is nonzero; computing homology of it
// would be meaningless, so this is always a hard error.
struct CompositionNotZero : std::runtime_error {
  explicit CompositionNotZero(const std::string& what) : std::runtime_error(what) {}
};

// A finite-field modulus that is not prime.
struct NotPrime : std::runtime_error {
  explicit NotPrime(const std::string& what) : std::runtime_error(what) {}
};

// Operands whose degrees or dimension parameters do not match.
struct DegreeMismatch : std::runtime_error {
  explicit DegreeMismatch(const std::string& what) : std::runtime_error(what) {}
};

// An index or parameter outside its legal range.
struct OutOfRange : std::out_of_range {
  explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

// A check invoked outside the hypotheses under which its statement holds.
struct HypothesisViolation : std::runtime_error {
  explicit HypothesisViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace segre
