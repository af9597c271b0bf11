#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "swarmorbit/sim.hpp"

namespace swarmorbit {

inline constexpr const char* kRobotsCsvHeader = "t,id,x,y,theta,omega,e";
inline constexpr const char* kPairsCsvHeader = "t,i,j,distance,h,psi,lg_h_i,stage";
inline constexpr const char* kSummaryCsvHeader =
    "t,active_count,min_pairwise_distance,max_abs_omega,min_active_lg_h_i,collision_count,"
    "saturation_count,singularity_count,inside_virtual_zone_count,conflict_count";

// 17 significant digits, so every double survives a text round-trip.
std::string format_real(double v);

// Writes robots.csv, pairs.csv and summary.csv into out_dir (created if
// missing). Refuses to replace existing files unless `force`. Returns the
// written paths. Throws std::invalid_argument on an empty record stream and
// std::filesystem::filesystem_error / std::ios_base::failure on I/O errors.
std::vector<std::filesystem::path> emit_csv(std::span<const StepRecord> records,
                                            const std::filesystem::path& out_dir, bool force = false);

}  // namespace swarmorbit
