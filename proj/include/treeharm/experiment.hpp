#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "treeharm/tree.hpp"

namespace treeharm {

// Deterministic random source with a platform-independent value sequence:
// the mt19937_64 output stream is fixed by the standard, and the top 53 bits
// map to doubles the same way everywhere.  The std distributions make no
// such promise, so they are not used.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t bits() { return eng_(); }
  double uniform() { return (eng_() >> 11) * 0x1.0p-53; }   // [0, 1)
  double symmetric() { return 2.0 * uniform() - 1.0; }      // [-1, 1)

 private:
  std::mt19937_64 eng_;
};

// Random function on the ball of radius `radius`: independent values
// uniform in [-1,1) assigned in lexicographic vertex order.
TreeFunction seeded_function(const TreeParams& params, int radius,
                             std::uint64_t seed);

// Random radial function with complex entries, both parts uniform in [-1,1).
RadialFunction seeded_radial(int q, int shells, std::uint64_t seed);

struct ExperimentConfig {
  std::string command;          // verify | kernel | converge | heat | maximal
  int q = 2;
  int depth = 38;
  int nodes = 512;              // quadrature grid size
  int series_cutoff = 60;       // horocycle series terms
  int shells = 30;              // kernel range
  double z_re = 1.0;
  double z_im = 0.0;
  double r_min = 2.0;
  double r_max = 16384.0;
  int r_steps = 14;
  double tolerance = std::numeric_limits<double>::quiet_NaN();  // per-check default
  std::uint64_t seed = 0;
  std::string output;           // file prefix; empty = no files

  // Throws parameter_error on invalid combinations.
  void validate() const;

  // One-line canonical form, written into every output file.  The output
  // path itself is not part of it, so reruns into different files still
  // produce byte-identical contents.
  std::string canonical() const;

  // Geometric grid of thresholds from r_min to r_max; exact doubling when
  // the endpoints are powers of two and the step count matches.
  std::vector<double> r_grid() const;
};

struct CheckResult {
  std::string name;
  double observed;
  double bound;
  bool pass;
};

// Executes the configured command, writing CSV files under config.output
// and a summary to stdout.  Returns the process exit code: 0 ok, 1 a check
// failed, 2 bad configuration, 3 a numerical budget could not be met.
int run_command(const ExperimentConfig& config);

}  // namespace treeharm
