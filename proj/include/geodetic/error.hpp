// error.hpp — exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace geodetic {

/// Base class for every failure the library reports. The CLI maps these to
/// exit status 1; command-line misuse is handled separately.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument violates an operation's stated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (graph JSON, group spec, rewriting-system text).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A verification step failed that only fails when an assumption upstream
/// (typically geodeticity) was wrong.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Connected input required; carries one vertex from each of two components.
class DisconnectedError : public Error {
 public:
  DisconnectedError(std::string u, std::string v)
      : Error("graph is disconnected: '" + u + "' and '" + v +
              "' lie in different components"),
        component_a(std::move(u)),
        component_b(std::move(v)) {}
  std::string component_a;
  std::string component_b;
};

/// No path between the named vertices.
class UnreachableError : public Error {
 public:
  UnreachableError(std::string u, std::string v)
      : Error("no path from '" + u + "' to '" + v + "'"),
        from(std::move(u)),
        to(std::move(v)) {}
  std::string from;
  std::string to;
};

/// More than one geodesic where a unique one was required; carries two of
/// them (as vertex-name sequences).
class AmbiguousGeodesicError : public Error {
 public:
  AmbiguousGeodesicError(std::string u, std::string v,
                         std::vector<std::string> a, std::vector<std::string> b)
      : Error("multiple geodesics from '" + u + "' to '" + v + "'"),
        from(std::move(u)),
        to(std::move(v)),
        geodesic_a(std::move(a)),
        geodesic_b(std::move(b)) {}
  std::string from;
  std::string to;
  std::vector<std::string> geodesic_a;
  std::vector<std::string> geodesic_b;
};

/// Geodetic input required; carries the witness pair and its two geodesics.
class NotGeodeticError : public Error {
 public:
  NotGeodeticError(std::string u, std::string v,
                   std::vector<std::string> a, std::vector<std::string> b)
      : Error("graph is not geodetic: two geodesics join '" + u + "' and '" +
              v + "'"),
        from(std::move(u)),
        to(std::move(v)),
        geodesic_a(std::move(a)),
        geodesic_b(std::move(b)) {}
  std::string from;
  std::string to;
  std::vector<std::string> geodesic_a;
  std::vector<std::string> geodesic_b;
};

/// A finite-horizon computation could not conclude; never a counterexample.
class HorizonTooShortError : public Error {
 public:
  using Error::Error;
};

}  // namespace geodetic
