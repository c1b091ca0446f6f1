#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cotrack/metrics.hpp"
#include "cotrack/record.hpp"
#include "cotrack/replay.hpp"

namespace cotrack {

/// Parses a scenario JSON document. Streams may be inline arrays or CSV
/// paths resolved against `base_dir`. Syntax errors throw ParseError with a
/// line number; semantic errors throw ScenarioError naming the field. The
/// result has been validated.
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir,
                        const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Self-contained JSON with all streams inline.
std::string dump_scenario(const Scenario& scenario);

/// Groundtruth CSV: header `t_ms,lat,lon`.
std::vector<TimedGeoPoint> parse_groundtruth_csv(std::string_view text, const std::string& source = "<groundtruth>");
std::string format_groundtruth_csv(const std::vector<TimedGeoPoint>& gt);

/// `t_ms,gt_lat,gt_lon,pdr_lat,pdr_lon,aoe_lat,aoe_lon,errors`
std::string format_track_csv(const DeviceRecord& device);
DeviceRecord parse_track_csv(std::string_view text, const std::string& id, const std::string& source = "<track>");

/// `t_ms,id_a,id_b,ratio_a,updated_a`
std::string format_events_csv(const std::vector<CollabEvent>& events);
std::vector<CollabEvent> parse_events_csv(std::string_view text, const std::string& source = "<events>");

/// File name used for a device's track inside an output directory.
std::string track_file_name(const std::string& device_id);

}  // namespace cotrack
