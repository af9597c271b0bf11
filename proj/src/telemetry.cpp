#include "swarmorbit/telemetry.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace swarmorbit {

namespace fs = std::filesystem;

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_csv(const fs::path& path, const char* header) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
    out << header << '\n';
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw std::ios_base::failure("write to '" + path.string() + "' failed");
}

}  // namespace

std::vector<fs::path> emit_csv(std::span<const StepRecord> records, const fs::path& out_dir, bool force) {
    if (records.empty()) throw std::invalid_argument("emit_csv: empty record stream");

    const fs::path robots_path = out_dir / "robots.csv";
    const fs::path pairs_path = out_dir / "pairs.csv";
    const fs::path summary_path = out_dir / "summary.csv";

    fs::create_directories(out_dir);
    if (!force) {
        for (const fs::path& p : {robots_path, pairs_path, summary_path})
            if (fs::exists(p))
                throw fs::filesystem_error("refusing to overwrite existing file (use --force)", p,
                                           std::make_error_code(std::errc::file_exists));
    }

    std::ofstream robots = open_csv(robots_path, kRobotsCsvHeader);
    std::ofstream pairs = open_csv(pairs_path, kPairsCsvHeader);
    std::ofstream summary = open_csv(summary_path, kSummaryCsvHeader);

    for (const StepRecord& rec : records) {
        const std::string t = format_real(rec.t);
        for (const RobotSample& s : rec.robots) {
            robots << t << ',' << s.id << ',' << format_real(s.p.x) << ',' << format_real(s.p.y) << ','
                   << format_real(s.theta) << ',' << format_real(s.omega) << ',' << format_real(s.e)
                   << '\n';
        }
        for (const PairSample& s : rec.pairs) {
            pairs << t << ',' << s.i << ',' << s.j << ',' << format_real(s.distance) << ','
                  << format_real(s.h) << ',' << format_real(s.psi) << ',' << format_real(s.lg_h_i) << ','
                  << to_string(s.stage) << '\n';
        }
        summary << t << ',' << rec.active_count << ',' << format_real(rec.min_pairwise_distance) << ','
                << format_real(rec.max_abs_omega) << ',' << format_real(rec.min_active_lg_h_i) << ','
                << rec.collision_count << ',' << rec.saturation_count << ',' << rec.singularity_count
                << ',' << rec.inside_virtual_zone_count << ',' << rec.conflict_count << '\n';
    }
    finish(robots, robots_path);
    finish(pairs, pairs_path);
    finish(summary, summary_path);
    return {robots_path, pairs_path, summary_path};
}

}  // namespace swarmorbit
