#include "cotrack/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <json.hpp>

#include "cotrack/csv.hpp"
#include "cotrack/errors.hpp"

namespace cotrack {

using nlohmann::json;

namespace {

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

void reject_unknown_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ScenarioError(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ScenarioError(path.empty() ? "<root>" : path, "expected an object");
  return j;
}

double get_double(const json& obj, const std::string& path, const char* key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ScenarioError(path + key, "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ScenarioError(path + key, "must be finite");
  return v;
}

std::int64_t get_int(const json& obj, const std::string& path, const char* key, std::int64_t fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) throw ScenarioError(path + key, "expected an integer");
  if (it->is_number_unsigned() && it->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw ScenarioError(path + key, "out of range");
  }
  return it->get<std::int64_t>();
}

std::int32_t get_int32(const json& obj, const std::string& path, const char* key, std::int32_t fallback) {
  const std::int64_t v = get_int(obj, path, key, fallback);
  if (v < INT32_MIN || v > INT32_MAX) throw ScenarioError(path + key, "out of 32-bit range");
  return static_cast<std::int32_t>(v);
}

std::vector<TimedGeoPoint> groundtruth_from_json(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw ScenarioError(path, "expected an array of [t_ms, lat, lon]");
  std::vector<TimedGeoPoint> out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto& row = arr[k];
    if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() || !row[1].is_number() ||
        !row[2].is_number()) {
      throw ScenarioError(path + "[" + std::to_string(k) + "]", "expected [t_ms, lat, lon]");
    }
    out.push_back({row[0].get<std::int64_t>(), {row[1].get<double>(), row[2].get<double>()}});
  }
  return out;
}

std::vector<InertialSample> inertial_from_json(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw ScenarioError(path, "expected an array of [t_ms, ax, ay, az, gz]");
  std::vector<InertialSample> out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto& row = arr[k];
    bool ok = row.is_array() && row.size() == 5 && row[0].is_number_integer();
    for (std::size_t c = 1; ok && c < 5; ++c) ok = row[c].is_number();
    if (!ok) throw ScenarioError(path + "[" + std::to_string(k) + "]", "expected [t_ms, ax, ay, az, gz]");
    out.push_back({row[0].get<std::int64_t>(), row[1].get<double>(), row[2].get<double>(),
                   row[3].get<double>(), row[4].get<double>()});
  }
  return out;
}

DeviceSpec device_from_json(const json& j, const std::string& path, const std::filesystem::path& base_dir) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"id", "start_offset_ms", "step_length", "initial_heading", "groundtruth",
                                "groundtruth_csv", "inertial", "inertial_csv"});
  const std::string p = path + ".";
  DeviceSpec d;
  const auto id = j.find("id");
  if (id == j.end() || !id->is_string()) throw ScenarioError(p + "id", "expected a string");
  d.id = id->get<std::string>();
  d.start_offset_ms = get_int(j, p, "start_offset_ms", 0);
  d.step_length = get_double(j, p, "step_length", d.step_length);
  d.initial_heading = get_double(j, p, "initial_heading", 0.0);

  const bool gt_inline = j.contains("groundtruth");
  const bool gt_file = j.contains("groundtruth_csv");
  if (gt_inline == gt_file) throw ScenarioError(p + "groundtruth", "give exactly one of groundtruth / groundtruth_csv");
  if (gt_inline) {
    d.groundtruth = groundtruth_from_json(j.at("groundtruth"), p + "groundtruth");
  } else {
    if (!j.at("groundtruth_csv").is_string()) throw ScenarioError(p + "groundtruth_csv", "expected a path");
    const auto file = base_dir / j.at("groundtruth_csv").get<std::string>();
    d.groundtruth = parse_groundtruth_csv(csv::read_file(file), file.string());
  }

  const bool in_inline = j.contains("inertial");
  const bool in_file = j.contains("inertial_csv");
  if (in_inline && in_file) throw ScenarioError(p + "inertial", "give at most one of inertial / inertial_csv");
  if (in_inline) {
    d.inertial = inertial_from_json(j.at("inertial"), p + "inertial");
  } else if (in_file) {
    if (!j.at("inertial_csv").is_string()) throw ScenarioError(p + "inertial_csv", "expected a path");
    const auto file = base_dir / j.at("inertial_csv").get<std::string>();
    d.inertial = read_inertial_csv(file);
  }
  return d;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir, const std::string& source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  require_object(root, "");
  reject_unknown_keys(root, "", {"seed", "tick_ms", "proximity_cutoff", "error_growth", "exchange_interval_ms",
                                 "stationary_window_ms", "path_loss", "collab", "peak_detector", "devices"});

  Scenario sc;
  if (const auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
      throw ScenarioError("seed", "expected a non-negative integer");
    }
    sc.seed = it->get<std::uint64_t>();
  }
  sc.tick_ms = get_int(root, "", "tick_ms", sc.tick_ms);
  sc.proximity_cutoff = get_double(root, "", "proximity_cutoff", sc.proximity_cutoff);
  sc.exchange_interval_ms = get_int(root, "", "exchange_interval_ms", 0);
  sc.stationary_window_ms = get_int(root, "", "stationary_window_ms", sc.stationary_window_ms);
  if (const auto it = root.find("error_growth"); it != root.end()) {
    const std::string v = it->is_string() ? it->get<std::string>() : "";
    if (v == "per_step") {
      sc.error_growth = ErrorGrowth::PerStep;
    } else if (v == "per_tick") {
      sc.error_growth = ErrorGrowth::PerTick;
    } else {
      throw ScenarioError("error_growth", "expected \"per_step\" or \"per_tick\"");
    }
  }
  if (const auto it = root.find("path_loss"); it != root.end()) {
    require_object(*it, "path_loss");
    reject_unknown_keys(*it, "path_loss", {"p0", "exponent", "noise_sigma"});
    sc.path_loss.p0 = get_double(*it, "path_loss.", "p0", sc.path_loss.p0);
    sc.path_loss.exponent = get_double(*it, "path_loss.", "exponent", sc.path_loss.exponent);
    sc.path_loss.noise_sigma = get_double(*it, "path_loss.", "noise_sigma", sc.path_loss.noise_sigma);
  }
  if (const auto it = root.find("collab"); it != root.end()) {
    require_object(*it, "collab");
    reject_unknown_keys(*it, "collab", {"lower", "upper"});
    sc.collab.lower = get_int32(*it, "collab.", "lower", sc.collab.lower);
    sc.collab.upper = get_int32(*it, "collab.", "upper", sc.collab.upper);
  }
  if (const auto it = root.find("peak_detector"); it != root.end()) {
    require_object(*it, "peak_detector");
    reject_unknown_keys(*it, "peak_detector", {"min_peak_height", "min_peak_separation_ms", "smooth"});
    auto& pd = sc.peak_detector;
    pd.min_peak_height = get_double(*it, "peak_detector.", "min_peak_height", pd.min_peak_height);
    pd.min_peak_separation_ms = get_int(*it, "peak_detector.", "min_peak_separation_ms", pd.min_peak_separation_ms);
    if (const auto s = it->find("smooth"); s != it->end()) {
      if (!s->is_boolean()) throw ScenarioError("peak_detector.smooth", "expected a boolean");
      pd.smooth = s->get<bool>();
    }
  }
  const auto devs = root.find("devices");
  if (devs == root.end() || !devs->is_array()) throw ScenarioError("devices", "expected an array");
  for (std::size_t i = 0; i < devs->size(); ++i) {
    sc.devices.push_back(device_from_json((*devs)[i], "devices[" + std::to_string(i) + "]", base_dir));
  }
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(csv::read_file(path), path.parent_path(), path.string());
}

std::string dump_scenario(const Scenario& sc) {
  json root;
  root["seed"] = sc.seed;
  root["tick_ms"] = sc.tick_ms;
  root["proximity_cutoff"] = sc.proximity_cutoff;
  root["error_growth"] = sc.error_growth == ErrorGrowth::PerStep ? "per_step" : "per_tick";
  root["exchange_interval_ms"] = sc.exchange_interval_ms;
  root["stationary_window_ms"] = sc.stationary_window_ms;
  root["path_loss"] = {{"p0", sc.path_loss.p0},
                       {"exponent", sc.path_loss.exponent},
                       {"noise_sigma", sc.path_loss.noise_sigma}};
  root["collab"] = {{"lower", sc.collab.lower}, {"upper", sc.collab.upper}};
  root["peak_detector"] = {{"min_peak_height", sc.peak_detector.min_peak_height},
                           {"min_peak_separation_ms", sc.peak_detector.min_peak_separation_ms},
                           {"smooth", sc.peak_detector.smooth}};
  json devices = json::array();
  for (const auto& d : sc.devices) {
    json gt = json::array();
    for (const auto& g : d.groundtruth) gt.push_back({g.t_ms, g.p.lat, g.p.lon});
    json in = json::array();
    for (const auto& s : d.inertial) in.push_back({s.t_ms, s.ax, s.ay, s.az, s.gz});
    devices.push_back({{"id", d.id},
                       {"start_offset_ms", d.start_offset_ms},
                       {"step_length", d.step_length},
                       {"initial_heading", d.initial_heading},
                       {"groundtruth", std::move(gt)},
                       {"inertial", std::move(in)}});
  }
  root["devices"] = std::move(devices);
  return root.dump(1) + "\n";
}

namespace {

template <typename Fn>
void for_each_data_line(std::string_view text, const std::string& source, std::string_view header, Fn&& fn) {
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != header) throw ParseError(source, line_no, "expected header '" + std::string(header) + "'");
      header_seen = true;
      continue;
    }
    fn(csv::split(line), line_no);
  }
  if (!header_seen) throw ParseError(source, 1, "missing header");
}

double field_double(std::string_view f, const std::string& source, std::size_t line) {
  double v = 0.0;
  if (!csv::parse_double(f, v)) throw ParseError(source, line, "bad numeric field '" + std::string(f) + "'");
  return v;
}

std::int64_t field_int(std::string_view f, const std::string& source, std::size_t line) {
  long long v = 0;
  if (!csv::parse_int(f, v)) throw ParseError(source, line, "bad integer field '" + std::string(f) + "'");
  return v;
}

}  // namespace

std::vector<TimedGeoPoint> parse_groundtruth_csv(std::string_view text, const std::string& source) {
  std::vector<TimedGeoPoint> out;
  for_each_data_line(text, source, "t_ms,lat,lon", [&](const auto& f, std::size_t line) {
    if (f.size() != 3) throw ParseError(source, line, "expected 3 fields");
    TimedGeoPoint g{field_int(f[0], source, line), {field_double(f[1], source, line), field_double(f[2], source, line)}};
    if (!is_valid(g.p)) throw ParseError(source, line, "lat/lon out of range");
    if (!out.empty() && g.t_ms <= out.back().t_ms) throw ParseError(source, line, "timestamps must strictly increase");
    out.push_back(g);
  });
  return out;
}

std::string format_groundtruth_csv(const std::vector<TimedGeoPoint>& gt) {
  std::string out = "t_ms,lat,lon\n";
  for (const auto& g : gt) {
    out += std::to_string(g.t_ms) + ',' + csv::format_double(g.p.lat) + ',' + csv::format_double(g.p.lon) + '\n';
  }
  return out;
}

std::string format_track_csv(const DeviceRecord& device) {
  std::string out = "t_ms,gt_lat,gt_lon,pdr_lat,pdr_lon,aoe_lat,aoe_lon,errors\n";
  for (const auto& tp : device.track) {
    out += std::to_string(tp.t_ms);
    for (double v : {tp.groundtruth.lat, tp.groundtruth.lon, tp.pdr.lat, tp.pdr.lon, tp.aoe.lat, tp.aoe.lon}) {
      out += ',';
      out += csv::format_double(v);
    }
    out += ',' + std::to_string(tp.errors) + '\n';
  }
  return out;
}

DeviceRecord parse_track_csv(std::string_view text, const std::string& id, const std::string& source) {
  DeviceRecord d;
  d.id = id;
  for_each_data_line(text, source, "t_ms,gt_lat,gt_lon,pdr_lat,pdr_lon,aoe_lat,aoe_lon,errors",
                     [&](const auto& f, std::size_t line) {
                       if (f.size() != 8) throw ParseError(source, line, "expected 8 fields");
                       TrackPoint tp;
                       tp.t_ms = field_int(f[0], source, line);
                       tp.groundtruth = {field_double(f[1], source, line), field_double(f[2], source, line)};
                       tp.pdr = {field_double(f[3], source, line), field_double(f[4], source, line)};
                       tp.aoe = {field_double(f[5], source, line), field_double(f[6], source, line)};
                       const auto e = field_int(f[7], source, line);
                       if (e < 0 || e > INT32_MAX) throw ParseError(source, line, "errors out of range");
                       tp.errors = static_cast<std::int32_t>(e);
                       d.track.push_back(tp);
                     });
  if (!d.track.empty()) d.final_errors = d.track.back().errors;
  return d;
}

std::string format_events_csv(const std::vector<CollabEvent>& events) {
  std::string out = "t_ms,id_a,id_b,ratio_a,updated_a\n";
  for (const auto& e : events) {
    out += std::to_string(e.t_ms) + ',' + e.id_a + ',' + e.id_b + ',' + csv::format_double(e.ratio_a) + ',' +
           (e.updated_a ? "1" : "0") + '\n';
  }
  return out;
}

std::vector<CollabEvent> parse_events_csv(std::string_view text, const std::string& source) {
  std::vector<CollabEvent> out;
  for_each_data_line(text, source, "t_ms,id_a,id_b,ratio_a,updated_a", [&](const auto& f, std::size_t line) {
    if (f.size() != 5) throw ParseError(source, line, "expected 5 fields");
    CollabEvent e;
    e.t_ms = field_int(f[0], source, line);
    e.id_a = std::string(f[1]);
    e.id_b = std::string(f[2]);
    e.ratio_a = field_double(f[3], source, line);
    if (f[4] != "0" && f[4] != "1") throw ParseError(source, line, "updated_a must be 0 or 1");
    e.updated_a = f[4] == "1";
    out.push_back(std::move(e));
  });
  return out;
}

std::string track_file_name(const std::string& device_id) { return "track_" + device_id + ".csv"; }

}  // namespace cotrack
