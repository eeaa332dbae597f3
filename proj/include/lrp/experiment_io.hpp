#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lrp/simulator.hpp"

namespace lrp {

std::string scheme_name(SchemeId scheme);
SchemeId parse_scheme(const std::string& name);

std::string reducer_tag_name(ReducerTag tag);
ReducerTag parse_reducer_tag(const std::string& name);

// Config files are flat key=value lines; '#' starts a comment, lists are
// comma-separated. Unknown keys are rejected. Recognized keys: n_t, n_r,
// snr_grid_db, schemes, n_channels, frames_per_channel, min_errors,
// min_channels, seed, sigma_mode, lll_delta, max_reduction_iters, threads.
SimConfig parse_sim_config(std::istream& in);
SimConfig load_sim_config(const std::string& path);

/// CSV "scheme,snr_db,bits,errors,ber,ci95", one row per point in input order.
void write_ber_csv(const std::string& path, const std::vector<BerPoint>& points);
std::vector<BerPoint> read_ber_csv(const std::string& path);

/// CSV "reducer,kappa,cdf", sorted by reducer name then kappa.
void write_cdf_csv(const std::string& path, const std::vector<CdfPoint>& points);
std::vector<CdfPoint> read_cdf_csv(const std::string& path);

}  // namespace lrp
