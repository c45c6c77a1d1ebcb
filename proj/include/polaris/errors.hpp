#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polaris {

struct Route;

/// Broad failure class; the CLI maps it onto its exit code.
enum class ErrorKind {
  Data,        // malformed or inconsistent input files
  Algorithmic  // routing could not satisfy the request
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::Data, what) {}
};

class SchemaMismatch : public Error {
 public:
  explicit SchemaMismatch(const std::string& what)
      : Error(ErrorKind::Data, what) {}
};

class EmptyZone : public Error {
 public:
  explicit EmptyZone(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class DegenerateDistribution : public Error {
 public:
  explicit DegenerateDistribution(const std::string& what)
      : Error(ErrorKind::Data, what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what)
      : Error(ErrorKind::Algorithmic, what) {}
};

class SamplingExhausted : public Error {
 public:
  explicit SamplingExhausted(const std::string& what)
      : Error(ErrorKind::Algorithmic, what) {}
};

/// An alternative-routing request that ended with fewer routes than asked.
/// Carries whatever distinct routes were collected before giving up.
class IncompleteRouteSet : public Error {
 public:
  IncompleteRouteSet(const std::string& what, std::vector<Route> partial);
  const std::vector<Route>& partial() const noexcept { return partial_; }

 private:
  std::vector<Route> partial_;
};

class IterationCapExceeded : public IncompleteRouteSet {
 public:
  using IncompleteRouteSet::IncompleteRouteSet;
};

class InsufficientCandidates : public IncompleteRouteSet {
 public:
  using IncompleteRouteSet::IncompleteRouteSet;
};

}  // namespace polaris
