#pragma once

#include "fpl/harness/sweep.hpp"

#include <string>

namespace fpl::harness {

/// Fixed grid.csv header.
inline constexpr const char* kGridHeader =
    "W_over_J,omega_over_J,mean_r,std_r,kld_pt,kld_pt_std,entropy_mean,entropy_std,"
    "support_mean,anticonc_mean,magnus_defect0,n_realizations";

/// 9 significant digits; NaN prints as an empty field.
std::string fmt(double x);

/// Cell label used in hist_<cell>.csv names, e.g. "c0003".
std::string cell_label(int index);

/// Writes grid.csv, cells.csv, hist_*.csv, refcurves.csv, kld_vs_m.csv and
/// digital_vs_analog.csv (when present) and run.json, per the output formats.
void emit(const SweepResult& result, const std::string& directory);

/// Tabulated reference densities: kind (COE, POI, GOE over r; PT over N p), x, density.
std::string refcurves_csv();

}  // namespace fpl::harness
