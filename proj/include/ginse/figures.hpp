#pragma once

#include "ginse/csv.hpp"

namespace ginse {

// Mean-overlap profiles: (a) bulk p-grid with (1/N) Dhat(sqrt(N) p) overlays,
// (b) edge chi-grid with (1/sqrt(N)) Dhat(sqrt(N)+chi) overlays.
CsvTable fig1(char variant, const RunConfig& cfg);

// Overlap-weight one-point functions: limiting surfaces and cross-sections
// with finite-N overlays (variants a..f).
CsvTable fig2(char variant, const RunConfig& cfg);

}  // namespace ginse
