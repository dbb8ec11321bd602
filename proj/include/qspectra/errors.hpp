#pragma once

#include <stdexcept>
#include <string>

namespace qspectra {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the domain of the operation (non-positive eigenvalue,
/// theta = 0, boundary simplex point, malformed partition, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or within the guard distance of) a pole of a zeta function.
class PoleError : public Error {
 public:
  PoleError(double s, double pole, const std::string& what)
      : Error(what), s_(s), pole_(pole) {}

  double s() const noexcept { return s_; }
  double pole() const noexcept { return pole_; }

 private:
  double s_;
  double pole_;
};

/// The requested transformation leaves the model family.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qspectra
