#pragma once

#include <stdexcept>
#include <string>

namespace forage {

/// Base for all library errors so callers can map them to exit codes in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph construction / validation.
struct DisconnectedGraph : Error { using Error::Error; };
struct BipartiteGraph : Error { using Error::Error; };
struct AdjacentGoals : Error { using Error::Error; };
struct InvalidGraph : Error { using Error::Error; };

// Kernel and matrix assembly.
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidEpsilon : Error { using Error::Error; };

// Iterative solvers.
struct NoConvergence : Error { using Error::Error; };

// Configuration and I/O.
struct ParseError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct MissingCoords : Error { using Error::Error; };

}  // namespace forage
