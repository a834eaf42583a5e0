#include "ks1d/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace ks1d {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_snapshot_csv(std::ostream& os, std::span<const FunctionalSnapshot> snapshots) {
  for (std::size_t c = 0; c < kSnapshotColumns.size(); ++c) {
    if (c) os << ',';
    os << kSnapshotColumns[c];
  }
  os << '\n';
  for (const auto& s : snapshots) {
    const double fields[] = {s.t,
                             s.dt_current,
                             s.mass,
                             s.sup_u,
                             s.min_u,
                             s.entropy,
                             s.G,
                             s.L_classical,
                             s.L_dissipation,
                             s.F_general,
                             s.F_critical,
                             s.D_dissipation,
                             s.R_rate,
                             s.F_identity_residual,
                             s.L_identity_residual,
                             s.prop41_gap,
                             s.regest3_gap,
                             s.cube_norm,
                             s.v_L2,
                             s.vt_L2,
                             s.cumulative_vt2};
    for (double f : fields) os << format_double(f) << ',';
    os << (s.vacuum_flag ? 1 : 0) << '\n';
  }
}

double linear_envelope(std::span<const double> t, std::span<const double> values) {
  double c = 0.0;
  for (std::size_t k = 0; k < t.size() && k < values.size(); ++k) c = std::max(c, values[k] / (1.0 + t[k]));
  return c;
}

EnvelopeFits fit_envelopes(std::span<const FunctionalSnapshot> snapshots) {
  std::vector<double> t;
  std::vector<double> cum_r;
  std::vector<double> e_plus_g;
  for (const auto& s : snapshots) {
    t.push_back(s.t - snapshots.front().t);
    cum_r.push_back(s.cumulative_R);
    e_plus_g.push_back(s.entropy + s.G);
  }
  return EnvelopeFits{linear_envelope(t, cum_r), linear_envelope(t, e_plus_g)};
}

nlohmann::json run_summary(const RunOutcome& outcome) {
  using nlohmann::json;
  const auto& snaps = outcome.snapshots;
  double max_f = 0.0;
  double max_l = 0.0;
  double min_prop41 = std::numeric_limits<double>::infinity();
  double min_regest3 = std::numeric_limits<double>::infinity();
  bool any_vacuum = false;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    if (k > 0) {
      max_f = std::max(max_f, std::abs(snaps[k].F_identity_residual));
      max_l = std::max(max_l, std::abs(snaps[k].L_identity_residual));
    }
    min_prop41 = std::min(min_prop41, snaps[k].prop41_gap);
    min_regest3 = std::min(min_regest3, snaps[k].regest3_gap);
    any_vacuum = any_vacuum || snaps[k].vacuum_flag;
  }
  const bool critical = !snaps.empty() && !std::isnan(snaps.front().prop41_gap);
  const EnvelopeFits fits = fit_envelopes(snaps);

  json summary;
  summary["status"] = to_string(outcome.status);
  summary["t_final"] = outcome.final_state.t;
  summary["max_sup_u"] = outcome.stats.max_sup_u;
  summary["blowup_time_estimate"] =
      outcome.blowup_time_estimate ? json(*outcome.blowup_time_estimate) : json(nullptr);
  summary["fitted_linear_envelopes"] = {{"R_cumulative", fits.R_cumulative},
                                        {"entropy_plus_G", fits.entropy_plus_G}};
  summary["residual_maxima"] = {{"F_identity", max_f},
                                {"L_identity", max_l},
                                {"energy_bookkeeping", snaps.empty() ? 0.0 : std::abs(snaps.back().energy_residual)}};
  summary["gap_minima"] = {{"prop41_gap", critical ? json(min_prop41) : json(nullptr)},
                           {"regest3_gap", critical ? json(min_regest3) : json(nullptr)}};
  summary["mass_drift"] = outcome.stats.max_mass_drift;
  summary["min_u"] = outcome.stats.min_u_seen;
  summary["near_vacuum"] = outcome.stats.min_u_seen < kNearVacuum;
  summary["vacuum_flag"] = any_vacuum;
  summary["accepted_steps"] = outcome.stats.accepted_steps;
  summary["rejected_steps"] = outcome.stats.rejected_steps;
  summary["snapshots"] = snaps.size();
  return summary;
}

}  // namespace ks1d
