#pragma once

// bjq command-line front end and its file formats.
//
// Wavefunction CSV: header "x,re,im", one sample per row, uniform x spacing.
// Phase-grid CSV:   header "x,p,value", rows x-outer, values to 9 significant digits.

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include "bjq/phasespace.hpp"

namespace bjq::cli {

enum ExitCode : int { kOk = 0, kParse = 2, kSemantic = 3, kIo = 4, kFormat = 5 };

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

phasespace::WaveGrid read_wavefunction_csv(std::istream& in, double hbar);
void write_wavefunction_csv(std::ostream& out, const phasespace::WaveGrid& psi);
void write_phase_grid_csv(std::ostream& out, const phasespace::PhaseGrid& g);

/// %.9g
std::string format_number(double v);

/// Runs one command line (args excludes the program name). Never throws.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bjq::cli
