#pragma once

#include <stdexcept>
#include <string>

namespace cadi {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input file or in-memory object violates a documented invariant
/// (bad shapes, non-finite coordinates, malformed CSV, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A metric is mathematically undefined for the given input
/// (single class, no valid triplets, fewer than 3 clusters for CDS, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// The constrained triplet space is empty: the partition has no class pair
/// (a, b) with a reference point in a and an unordered pair in b.
class EmptyTripletSpaceError : public DegenerateInputError {
 public:
  using DegenerateInputError::DegenerateInputError;
};

/// Numerical failure at runtime (training divergence, non-finite loss).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cadi
