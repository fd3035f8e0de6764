#pragma once

#include <stdexcept>
#include <string>

namespace colombeau {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid parameters, mismatched grids, malformed grid functions.
class GridError : public Error {
 public:
  using Error::Error;
};

/// A sampling grid is too coarse for the requested regularization scale.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, long minimal_points)
      : Error(what), minimal_points_(minimal_points) {}
  long minimal_points() const { return minimal_points_; }

 private:
  long minimal_points_;
};

/// Requested derivative or Sobolev order outside the supported range.
class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be strictly positive was not.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The linear solver inside a time step failed to converge.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, long iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}
  long iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  long iterations_;
  double residual_;
};

}  // namespace colombeau
