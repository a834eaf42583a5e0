#pragma once

#include <array>
#include <iosfwd>
#include <json.hpp>
#include <span>
#include <string>
#include <string_view>

#include "ks1d/functionals.hpp"
#include "ks1d/integrator.hpp"

namespace ks1d {

/// Column order of the snapshot CSV. Part of the output contract.
inline constexpr std::array<std::string_view, 22> kSnapshotColumns = {
    "t",        "dt",         "mass",           "sup_u",       "min_u",   "entropy",
    "G",        "L",          "L_dissipation",  "F_general",   "F_critical", "D",
    "R",        "F_identity_residual", "L_identity_residual", "prop41_gap", "regest3_gap",
    "cube_norm", "v_L2",      "vt_L2",          "cumulative_vt2", "vacuum_flag"};

/// 17 significant digits, '.' decimal point regardless of locale; "nan"/"inf" for non-finite.
std::string format_double(double x);

/// Header line plus one row per snapshot, LF line endings.
void write_snapshot_csv(std::ostream& os, std::span<const FunctionalSnapshot> snapshots);

/// Smallest C with values[k] <= C (1 + t[k]) for every k.
double linear_envelope(std::span<const double> t, std::span<const double> values);

/// Envelope coefficients of the run's cumulative R and of entropy + G.
struct EnvelopeFits {
  double R_cumulative = 0.0;
  double entropy_plus_G = 0.0;
};

EnvelopeFits fit_envelopes(std::span<const FunctionalSnapshot> snapshots);

/// Threshold below which a run is reported as having approached vacuum.
inline constexpr double kNearVacuum = 1e-10;

/// JSON summary written next to the CSV by `run`.
nlohmann::json run_summary(const RunOutcome& outcome);

}  // namespace ks1d
