#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "droplet/potential.hpp"

namespace droplet::cli {

enum class Format { Csv, Json };

struct RunConfig {
  std::string subcommand;
  double tau = 0.0;
  double c = 0.0;
  std::string p = "0,0";
  int n = 0;  // 0: per-command default
  int k = 0;
  std::uint64_t seed = 1;
  std::string output;
  Format format = Format::Csv;
  bool deterministic = false;
  int threads = 0;
  std::string potential;  // Q, Qhat, Qp; empty picks Qp for an off-centre charge
  std::string ensemble = "complex";
  int max_iter = 20000;
  double tol = 1e-8;
};

enum ExitCode : int {
  kOk = 0,
  kOtherFailure = 1,
  kInvalidParams = 2,
  kPhaseFailure = 3,
  kNotConverged = 4,
  kVerificationFailed = 5,
};

/// Parses "re,im" (or a bare real number).
Complex parse_complex(const std::string& text);

/// Runs the command line `args` (without the program name). Data goes to
/// the output file or `out`; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace droplet::cli
