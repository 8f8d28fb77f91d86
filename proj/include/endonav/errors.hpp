#pragma once

#include <stdexcept>
#include <string>

namespace endonav {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidShapeError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class ContactLockError : public Error {
public:
  using Error::Error;
};

class FilterError : public Error {
public:
  using Error::Error;
};

class RenderError : public Error {
public:
  using Error::Error;
};

class FormatError : public Error {
public:
  using Error::Error;
};

class EstimatorError : public Error {
public:
  using Error::Error;
};

class AdaptationError : public Error {
public:
  using Error::Error;
};

class ShiftError : public Error {
public:
  using Error::Error;
};

class EmissionError : public Error {
public:
  using Error::Error;
};

}  // namespace endonav
