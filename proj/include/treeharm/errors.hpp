#pragma once

#include <stdexcept>
#include <string>

namespace treeharm {

// Invalid argument: wrong branching number, negative radius, mismatched
// parameters, malformed configuration.
class parameter_error : public std::invalid_argument {
 public:
  explicit parameter_error(const std::string& what)
      : std::invalid_argument(what) {}
};

// An operation would need data outside the finite ball it was given.
// Carries the radius that would have been required.
class truncation_error : public std::runtime_error {
 public:
  truncation_error(const std::string& what, int required_radius)
      : std::runtime_error(what + " (required radius " +
                           std::to_string(required_radius) + ")"),
        required_radius(required_radius) {}
  int required_radius;
};

// A spectral grid is too coarse for the requested reconstruction.
class resolution_error : public std::runtime_error {
 public:
  resolution_error(const std::string& what, int nodes, int needed)
      : std::runtime_error(what + " (" + std::to_string(nodes) +
                           " nodes, need at least " + std::to_string(needed) +
                           ")"),
        nodes(nodes),
        needed(needed) {}
  int nodes;
  int needed;
};

// A requested error budget cannot be met with the given truncation
// parameters.  Carries the bound that is achievable.
class tolerance_error : public std::runtime_error {
 public:
  tolerance_error(const std::string& what, double requested, double achievable)
      : std::runtime_error(what + " (requested " + std::to_string(requested) +
                           ", achievable " + std::to_string(achievable) + ")"),
        requested(requested),
        achievable(achievable) {}
  double requested;
  double achievable;
};

// Evaluation of a meromorphic quantity too close to one of its poles.
class pole_error : public std::runtime_error {
 public:
  explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace treeharm
