#pragma once

#include <stdexcept>
#include <string>

namespace qplab {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  StepTooCoarse,
  Budget,
  EmptySet,
  TooFewSamples,
  PrecisionExhausted,
  OutOfRange,
  GridTooCoarse,
  TooFewScales,
  DimensionMismatch,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string token, const std::string& what)
      : Error(ErrorKind::Parse, what + " at position " + std::to_string(position) +
                                    (token.empty() ? std::string() : " near '" + token + "'")),
        position_(position),
        token_(std::move(token)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t position_;
  std::string token_;
};

}  // namespace qplab
