#pragma once

#include <stdexcept>
#include <string>

namespace relex {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Two structures (or a structure and a class) disagree on their signature.
class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

// A size bound exceeded the configured enumeration cap.
class CapExceeded : public Error {
 public:
  CapExceeded(int requested, int cap)
      : Error("size " + std::to_string(requested) + " exceeds cap " +
              std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  int requested() const { return requested_; }
  int cap() const { return cap_; }

 private:
  int requested_;
  int cap_;
};

// A randomness query addressed a subset larger than the source's arity.
class ArityExceeded : public Error {
 public:
  using Error::Error;
};

// The greedy natural embedding ran out of candidates below the search bound.
// This is not a certificate of non-membership in the age.
class NoEmbeddingWithinBound : public Error {
 public:
  using Error::Error;
};

// A statistical test could not be carried out on the available counts.
class InsufficientCounts : public Error {
 public:
  using Error::Error;
};

}  // namespace relex
