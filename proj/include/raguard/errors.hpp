#pragma once

#include <stdexcept>
#include <string>

namespace raguard {

// Error classes map 1:1 onto CLI exit codes (see exit_code below).
enum class ErrorClass { validation, io, reference, configuration, transport };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

inline int exit_code(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::validation: return 2;
    case ErrorClass::io: return 3;
    case ErrorClass::reference: return 4;
    case ErrorClass::configuration: return 5;
    case ErrorClass::transport: return 6;
  }
  return 1;
}

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(ErrorClass::validation, what) {}
};

struct DuplicateIdError : ValidationError {
  explicit DuplicateIdError(const std::string& what) : ValidationError(what) {}
};

struct EmptyCorpusError : ValidationError {
  explicit EmptyCorpusError(const std::string& what) : ValidationError(what) {}
};

struct IndexMismatchError : ValidationError {
  explicit IndexMismatchError(const std::string& what) : ValidationError(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorClass::io, what) {}
};

struct ReferenceError : Error {
  explicit ReferenceError(const std::string& what) : Error(ErrorClass::reference, what) {}
};

struct AlignmentError : ReferenceError {
  explicit AlignmentError(const std::string& what) : ReferenceError(what) {}
};

struct ConfigurationError : Error {
  explicit ConfigurationError(const std::string& what) : Error(ErrorClass::configuration, what) {}
};

struct TransportError : Error {
  TransportError(const std::string& what, int retries) : Error(ErrorClass::transport, what), retries(retries) {}
  int retries = 0;
};

struct EndpointError : Error {
  EndpointError(const std::string& what, int status) : Error(ErrorClass::transport, what), status(status) {}
  int status = 0;
};

struct ProviderError : Error {
  ProviderError(const std::string& what, std::string chunk_id = {})
      : Error(ErrorClass::transport, what), chunk_id(std::move(chunk_id)) {}
  std::string chunk_id;
};

}  // namespace raguard
