#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace spz {

using Complex = std::complex<double>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates a precondition (bad count, negative gap, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Index outside the spectrum's level range.
class IndexError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Operation is defined only for a subset of spectrum kinds.
class UnsupportedSpectrum : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The argument lies outside the region where the series/product is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point coincides (within tolerance) with a pole.
///
/// `index` carries the integer label of the pole when the producing
/// operation has one (k in 2*pi*i*k/E0, an entry index of a ZeroSet, a mode
/// index of a QNM spectrum).
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, Complex location, std::optional<long long> index = std::nullopt)
      : DomainError(what), location_(location), index_(index) {}

  Complex location() const noexcept { return location_; }
  std::optional<long long> index() const noexcept { return index_; }

 private:
  Complex location_;
  std::optional<long long> index_;
};

/// Evaluation point coincides with a zero; the log of the result is -infinity.
class ZeroHitError : public DomainError {
 public:
  ZeroHitError(const std::string& what, Complex location, std::optional<long long> index = std::nullopt)
      : DomainError(what), location_(location), index_(index) {}

  Complex location() const noexcept { return location_; }
  std::optional<long long> index() const noexcept { return index_; }

 private:
  Complex location_;
  std::optional<long long> index_;
};

/// A factor fed to a log-domain product was exactly zero.
class ZeroFactorError : public DomainError {
 public:
  ZeroFactorError(const std::string& what, std::size_t index) : DomainError(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A single factor or term was not finite.
class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Zero scan ran out of window before finding the requested number of roots.
class WindowExhaustedError : public Error {
 public:
  WindowExhaustedError(const std::string& what, std::size_t found) : Error(what), found_(found) {}
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t found_;
};

/// Malformed input file. `line` is 1-based; 0 when the error concerns the whole file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace spz
