#ifndef MCDECK_ERRORS_HPP
#define MCDECK_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mcdeck {

// Base for all library errors. Specific types exist so callers can react to
// the failure class, not so every message gets its own type.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SyntaxError : public Error {
public:
  using Error::Error;
};

// Input uses a documented-but-unsupported MCNP form (like/but, vertical
// format, periodic surfaces, universes declared in the data block).
class UnsupportedForm : public Error {
public:
  using Error::Error;
};

class MissingBlock : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

class DuplicateId : public Error {
public:
  using Error::Error;
};

class UnknownId : public Error {
public:
  using Error::Error;
};

class CollisionError : public Error {
public:
  using Error::Error;
};

class NonOrthonormal : public Error {
public:
  using Error::Error;
};

class NotAssemblable : public Error {
public:
  using Error::Error;
};

class UnsupportedBoundingExpression : public Error {
public:
  using Error::Error;
};

// Extraction refuses the ambient gas cell and the graveyard.
class GasOrGraveyardSelected : public Error {
public:
  using Error::Error;
};

class CapacityExceeded : public Error {
public:
  using Error::Error;
};

class MultipleMetadataBlocks : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

class UnsupportedMnemonic : public Error {
public:
  using Error::Error;
};

// Parse failure carrying every card-level message collected for the file.
class ParseFailure : public SyntaxError {
public:
  ParseFailure(const std::string& summary, std::vector<std::string> details)
      : SyntaxError(summary), details_(std::move(details)) {}
  const std::vector<std::string>& details() const { return details_; }

private:
  std::vector<std::string> details_;
};

} // namespace mcdeck

#endif
