#include "remsim/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "remsim/error.hpp"

namespace remsim {
namespace {

using json = nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ConfigError("field '" + path + "': " + what);
}

// Typed access to one JSON object with the path kept for diagnostics.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) field_error(path_.empty() ? "/" : path_, "expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }
  std::string at(const char* key) const { return path_ + "/" + key; }
  const json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void num(const char* key, double& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number()) field_error(at(key), "expected a number");
    out = v.get<double>();
  }
  void integer(const char* key, int& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number_integer()) field_error(at(key), "expected an integer");
    out = v.get<int>();
  }
  void u64(const char* key, std::uint64_t& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number_unsigned()) field_error(at(key), "expected a non-negative integer");
    out = v.get<std::uint64_t>();
  }
  void boolean(const char* key, bool& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_boolean()) field_error(at(key), "expected true or false");
    out = v.get<bool>();
  }
  template <class F>
  void text(const char* key, F&& assign) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_string()) field_error(at(key), "expected a string");
    try {
      assign(v.get<std::string>());
    } catch (const ConfigError& e) {
      field_error(at(key), e.what());
    }
  }
  std::vector<double> numbers(const char* key, std::size_t n) {
    const json& v = raw(key);
    if (!v.is_array() || (n && v.size() != n)) {
      field_error(at(key), n ? "expected an array of " + std::to_string(n) + " numbers" : "expected an array");
    }
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) field_error(at(key), "expected numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) field_error(path_ + "/" + it.key(), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Point2 point2(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    field_error(path, "expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

void read_bs_list(Reader& r, const char* key, Network net, std::vector<BsConfig>& out) {
  if (!r.has(key)) return;
  const json& v = r.raw(key);
  if (!v.is_array()) field_error(r.at(key), "expected an array");
  out.clear();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Reader b(v[i], r.at(key) + "/" + std::to_string(i));
    BsConfig bs;
    bs.network = net;
    b.integer("id", bs.id);
    if (!b.has("position")) field_error(b.at("position"), "missing");
    const auto pos = b.numbers("position", 3);
    bs.position = {pos[0], pos[1], pos[2]};
    b.num("max_power_dbm", bs.max_power_dbm);
    b.num("antenna_gain_dbi", bs.antenna_gain_dbi);
    b.finish();
    out.push_back(bs);
  }
}

void read_scenario(const json& j, Scenario& sc) {
  Reader r(j, "/scenario");
  r.num("area_width_m", sc.area_width_m);
  r.num("area_height_m", sc.area_height_m);
  if (r.has("building")) {
    const json& v = r.raw("building");
    if (!v.is_array()) field_error(r.at("building"), "expected an array of [x, y]");
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < v.size(); ++i) pts.push_back(point2(v[i], r.at("building") + "/" + std::to_string(i)));
    try {
      sc.building = Polygon(pts);
    } catch (const ConfigError& e) {
      field_error(r.at("building"), e.what());
    }
  }
  read_bs_list(r, "outdoor_bs", Network::outdoor, sc.outdoor_bs);
  read_bs_list(r, "indoor_bs", Network::indoor, sc.indoor_bs);
  if (r.has("outdoor_region")) {
    const auto v = r.numbers("outdoor_region", 4);
    sc.outdoor_region = {v[0], v[1], v[2], v[3]};
  }
  r.num("carrier_hz", sc.carrier_hz);
  r.num("bandwidth_hz", sc.bandwidth_hz);
  r.integer("n_rb", sc.n_rb);
  r.num("rb_bandwidth_hz", sc.rb_bandwidth_hz);
  r.num("ue_height_m", sc.ue_height_m);
  r.num("ue_noise_figure_db", sc.ue_noise_figure_db);
  r.num("ue_antenna_gain_dbi", sc.ue_antenna_gain_dbi);
  r.finish();
}

void read_class(const json& j, const std::string& path, ClassParams& p) {
  Reader r(j, path);
  r.num("reference_loss_db", p.reference_loss_db);
  r.num("exponent", p.exponent);
  r.num("wall_loss_db", p.wall_loss_db);
  r.finish();
}

FadingMode fading_from_string(const std::string& s) {
  if (s == "awgn") return FadingMode::awgn;
  if (s == "block_rayleigh") return FadingMode::block_rayleigh;
  throw ConfigError("unknown fading mode '" + s + "'");
}
std::string to_string(FadingMode m) { return m == FadingMode::awgn ? "awgn" : "block_rayleigh"; }

RateMode rate_mode_from_string(const std::string& s) {
  if (s == "narrowband_cqi") return RateMode::narrowband_cqi;
  if (s == "shannon") return RateMode::shannon;
  throw ConfigError("unknown rate mode '" + s + "'");
}
std::string to_string(RateMode m) { return m == RateMode::shannon ? "shannon" : "narrowband_cqi"; }

QuantizerMode quantizer_from_string(const std::string& s) {
  if (s == "none") return QuantizerMode::none;
  if (s == "two_bit") return QuantizerMode::two_bit;
  throw ConfigError("unknown quantizer '" + s + "'");
}
std::string to_string(QuantizerMode m) { return m == QuantizerMode::two_bit ? "two_bit" : "none"; }

SimulationConfig from_json(const json& j, const std::filesystem::path& base_dir) {
  SimulationConfig c;
  Reader r(j, "");
  if (!r.has("schema_version")) field_error("/schema_version", "missing");
  int version = 0;
  r.integer("schema_version", version);
  if (version != kConfigSchemaVersion) {
    field_error("/schema_version", "unsupported version " + std::to_string(version) + " (expected " +
                                       std::to_string(kConfigSchemaVersion) + ")");
  }
  r.u64("seed", c.seed);
  r.integer("iterations", c.iterations);
  r.integer("horizon_ms", c.horizon_ms);
  r.integer("warmup_ms", c.warmup_ms);
  r.integer("threads", c.threads);
  r.boolean("indoor_enabled", c.indoor_enabled);
  r.boolean("force_indoor_zero", c.force_indoor_zero);
  r.boolean("record_traces", c.record_traces);
  r.integer("trace_window_ms", c.trace_window_ms);
  r.text("scheme", [&](const std::string& s) { c.scheme.scheme = scheme_from_string(s); });
  if (r.has("scenario")) read_scenario(r.raw("scenario"), c.scenario);

  if (r.has("pathloss")) {
    Reader p(r.raw("pathloss"), "/pathloss");
    if (p.has("outdoor")) read_class(p.raw("outdoor"), "/pathloss/outdoor", c.outdoor_pathloss);
    if (p.has("indoor")) read_class(p.raw("indoor"), "/pathloss/indoor", c.indoor_pathloss);
    if (p.has("cross_wall")) read_class(p.raw("cross_wall"), "/pathloss/cross_wall", c.cross_wall_pathloss);
    p.finish();
  }

  if (r.has("users")) {
    Reader u(r.raw("users"), "/users");
    auto& n = c.users;
    u.integer("indoor_uniform", n.indoor_uniform);
    u.integer("indoor_cluster", n.indoor_cluster);
    u.integer("cluster_bs_id", n.cluster_bs_id);
    u.num("cluster_radius_m", n.cluster_radius_m);
    u.integer("outdoor", n.outdoor);
    u.num("nr_probability", n.nr_probability);
    u.num("walking_fraction", n.walking_fraction);
    u.num("static_speed_kmh", n.static_speed_kmh);
    u.num("walking_speed_kmh", n.walking_speed_kmh);
    u.num("outdoor_speed_kmh", n.outdoor_speed_kmh);
    u.finish();
  }

  if (r.has("controller")) {
    Reader s(r.raw("controller"), "/controller");
    auto& k = c.scheme;
    s.num("lsa_gamma_db", k.lsa_gamma_db);
    s.num("belt_gamma_db", k.belt_gamma_db);
    s.num("area_gamma_db", k.area_gamma_db);
    s.num("belt_spacing_m", k.belt_spacing_m);
    s.num("belt_offset_m", k.belt_offset_m);
    if (s.has("protection_region")) {
      const auto v = s.numbers("protection_region", 4);
      k.protection_region = {v[0], v[1], v[2], v[3]};
    }
    s.num("cbrs_pal_threshold_dbm", k.cbrs_pal_threshold_dbm);
    s.num("cbrs_interference_limit_dbm", k.cbrs_interference_limit_dbm);
    s.num("cbrs_grid_spacing_m", k.cbrs_grid_spacing_m);
    s.num("psi_percent", k.psi_percent);
    s.integer("update_period_ms", k.update_period_ms);
    s.integer("rem_delay_ms", k.rem_delay_ms);
    s.text("goal", [&](const std::string& v) { k.goal = goal_from_string(v); });
    s.num("model_error_scale", k.model_error_scale);
    s.finish();
  }

  if (r.has("link")) {
    Reader l(r.raw("link"), "/link");
    l.text("fading", [&](const std::string& v) { c.fading = fading_from_string(v); });
    l.text("beta_rate_mode", [&](const std::string& v) { c.beta_rate_mode = rate_mode_from_string(v); });
    l.boolean("icic", c.icic);
    l.num("pf_smoothing", c.pf_smoothing);
    l.num("pf_epsilon_bps", c.pf_epsilon_bps);
    l.num("nr_bonus", c.mapper.nr_bonus);
    if (l.has("cqi_table")) {
      const json& v = l.raw("cqi_table");
      try {
        if (v.is_string()) {
          std::filesystem::path p = v.get<std::string>();
          if (p.is_relative()) p = base_dir / p;
          c.mapper.table = CqiTable::load_csv(p);
        } else if (v.is_array()) {
          std::vector<CqiEntry> rows;
          for (const auto& row : v) {
            if (!row.is_array() || row.size() != 4) throw ConfigError("rows must be [cqi, min_sinr_db, efficiency, eesm_beta]");
            rows.push_back({row[0].get<int>(), row[1].get<double>(), row[2].get<double>(), row[3].get<double>()});
          }
          c.mapper.table = CqiTable(std::move(rows));
        } else {
          throw ConfigError("expected a file name or an array of rows");
        }
      } catch (const ConfigError& e) {
        field_error("/link/cqi_table", e.what());
      } catch (const json::exception& e) {
        field_error("/link/cqi_table", e.what());
      }
    }
    l.finish();
  }
  c.mapper.rb_bandwidth_hz = c.scenario.rb_bandwidth_hz;

  if (r.has("rem")) {
    Reader q(r.raw("rem"), "/rem");
    q.text("quantizer", [&](const std::string& v) { c.quantizer.mode = quantizer_from_string(v); });
    q.num("location_error_m", c.location_error_m);
    q.finish();
  }
  r.finish();
  return c;
}

json class_json(const ClassParams& p) {
  return {{"reference_loss_db", p.reference_loss_db}, {"exponent", p.exponent}, {"wall_loss_db", p.wall_loss_db}};
}

json bs_json(const std::vector<BsConfig>& list) {
  json out = json::array();
  for (const auto& b : list) {
    out.push_back({{"id", b.id},
                   {"position", {b.position.x, b.position.y, b.position.z}},
                   {"max_power_dbm", b.max_power_dbm},
                   {"antenna_gain_dbi", b.antenna_gain_dbi}});
  }
  return out;
}

json to_json(const SimulationConfig& c) {
  const auto& sc = c.scenario;
  json building = json::array();
  for (const auto& v : sc.building.vertices()) building.push_back({v.x, v.y});
  json table = json::array();
  for (const auto& e : c.mapper.table.entries()) table.push_back({e.index, e.min_sinr_db, e.efficiency, e.eesm_beta});
  const auto& k = c.scheme;
  const auto& u = c.users;
  return {
      {"schema_version", kConfigSchemaVersion},
      {"seed", c.seed},
      {"iterations", c.iterations},
      {"horizon_ms", c.horizon_ms},
      {"warmup_ms", c.warmup_ms},
      {"threads", c.threads},
      {"indoor_enabled", c.indoor_enabled},
      {"force_indoor_zero", c.force_indoor_zero},
      {"record_traces", c.record_traces},
      {"trace_window_ms", c.trace_window_ms},
      {"scheme", to_string(k.scheme)},
      {"scenario",
       {{"area_width_m", sc.area_width_m},
        {"area_height_m", sc.area_height_m},
        {"building", building},
        {"outdoor_bs", bs_json(sc.outdoor_bs)},
        {"indoor_bs", bs_json(sc.indoor_bs)},
        {"outdoor_region",
         {sc.outdoor_region.x_min, sc.outdoor_region.y_min, sc.outdoor_region.x_max, sc.outdoor_region.y_max}},
        {"carrier_hz", sc.carrier_hz},
        {"bandwidth_hz", sc.bandwidth_hz},
        {"n_rb", sc.n_rb},
        {"rb_bandwidth_hz", sc.rb_bandwidth_hz},
        {"ue_height_m", sc.ue_height_m},
        {"ue_noise_figure_db", sc.ue_noise_figure_db},
        {"ue_antenna_gain_dbi", sc.ue_antenna_gain_dbi}}},
      {"pathloss",
       {{"outdoor", class_json(c.outdoor_pathloss)},
        {"indoor", class_json(c.indoor_pathloss)},
        {"cross_wall", class_json(c.cross_wall_pathloss)}}},
      {"users",
       {{"indoor_uniform", u.indoor_uniform},
        {"indoor_cluster", u.indoor_cluster},
        {"cluster_bs_id", u.cluster_bs_id},
        {"cluster_radius_m", u.cluster_radius_m},
        {"outdoor", u.outdoor},
        {"nr_probability", u.nr_probability},
        {"walking_fraction", u.walking_fraction},
        {"static_speed_kmh", u.static_speed_kmh},
        {"walking_speed_kmh", u.walking_speed_kmh},
        {"outdoor_speed_kmh", u.outdoor_speed_kmh}}},
      {"controller",
       {{"lsa_gamma_db", k.lsa_gamma_db},
        {"belt_gamma_db", k.belt_gamma_db},
        {"area_gamma_db", k.area_gamma_db},
        {"belt_spacing_m", k.belt_spacing_m},
        {"belt_offset_m", k.belt_offset_m},
        {"protection_region",
         {k.protection_region.x_min, k.protection_region.y_min, k.protection_region.x_max, k.protection_region.y_max}},
        {"cbrs_pal_threshold_dbm", k.cbrs_pal_threshold_dbm},
        {"cbrs_interference_limit_dbm", k.cbrs_interference_limit_dbm},
        {"cbrs_grid_spacing_m", k.cbrs_grid_spacing_m},
        {"psi_percent", k.psi_percent},
        {"update_period_ms", k.update_period_ms},
        {"rem_delay_ms", k.rem_delay_ms},
        {"goal", to_string(k.goal)},
        {"model_error_scale", k.model_error_scale}}},
      {"link",
       {{"fading", to_string(c.fading)},
        {"beta_rate_mode", to_string(c.beta_rate_mode)},
        {"icic", c.icic},
        {"pf_smoothing", c.pf_smoothing},
        {"pf_epsilon_bps", c.pf_epsilon_bps},
        {"nr_bonus", c.mapper.nr_bonus},
        {"cqi_table", table}}},
      {"rem", {{"quantizer", to_string(c.quantizer.mode)}, {"location_error_m", c.location_error_m}}},
  };
}

void apply_override(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override key '" + key + "' has an empty component");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    json& next = (*node)[part];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) throw ConfigError("override key '" + key + "': '" + part + "' is not an object");
    node = &next;
    start = dot + 1;
  }
}

}  // namespace

SimulationConfig parse_config(const std::string& text, const std::string& source_name,
                            std::span<const std::string> overrides) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(source_name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
  for (const auto& o : overrides) apply_override(root, o);
  const auto base = std::filesystem::path(source_name).parent_path();
  SimulationConfig c;
  try {
    c = from_json(root, base);
  } catch (const ConfigError& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  c.validate();
  return c;
}

SimulationConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string(), overrides);
}

std::string config_to_json(const SimulationConfig& config, int indent) { return to_json(config).dump(indent); }

std::uint64_t config_hash(const SimulationConfig& config) {
  const std::string s = config_to_json(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace remsim
