#ifndef INVERSIO_ERRORS_HPP
#define INVERSIO_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace inversio {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed (malformed rational, malformed scenario JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The inputs are valid but the requested method does not cover them.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Enumeration bound exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Iterative evaluation failed to converge; carries the last iterate.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double partial)
      : Error(what), partial_(partial) {}
  double partial() const noexcept { return partial_; }

 private:
  double partial_;
};

/// A search exhausted its bound; carries the best point seen.
class NotFoundError : public Error {
 public:
  NotFoundError(const std::string& what, std::uint64_t best_n, double best_prob)
      : Error(what), best_n_(best_n), best_prob_(best_prob) {}
  std::uint64_t best_n() const noexcept { return best_n_; }
  double best_prob() const noexcept { return best_prob_; }

 private:
  std::uint64_t best_n_;
  double best_prob_;
};

}  // namespace inversio

#endif  // INVERSIO_ERRORS_HPP
