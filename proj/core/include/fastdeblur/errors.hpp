#ifndef FASTDEBLUR_ERRORS_HPP
#define FASTDEBLUR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fastdeblur {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad input: sizes, parameters, file contents, unsupported PSF/BC pairings.
/// The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
  using Error::Error;
};

class DimensionError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ParameterError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class FormatError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Numerical degeneracy discovered at run time (singular capacitance matrix,
/// all-zero GCV denominator). The CLI maps these to exit code 3.
class DegenerateError : public Error {
public:
  using Error::Error;
};

} // namespace fastdeblur

#endif // FASTDEBLUR_ERRORS_HPP
