#ifndef SELPREF_ERROR_HPP
#define SELPREF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selpref {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file. Line numbers are 1-based; 0 means "whole file".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(line == 0 ? reason : "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  // The same error located in a named file: "path:line: reason".
  ParseError(const std::string& path, const ParseError& inner)
      : Error(path + ":" + (inner.line_ ? std::to_string(inner.line_) + ":" : std::string()) + " " +
              inner.reason_),
        line_(inner.line_),
        reason_(inner.reason_) {}

  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class UnknownConceptError : public Error {
 public:
  explicit UnknownConceptError(const std::string& id)
      : Error("unknown concept '" + id + "'"), id_(id) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

}  // namespace selpref

#endif
