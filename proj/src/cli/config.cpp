#include "csdirac/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace csdirac::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

double get_number(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + ": must be finite");
  return d;
}

int get_int(const json& obj, const std::string& where, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& where, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

ShapeConfig parse_shape(const json& obj, const std::string& where, ShapeConfig s) {
  check_keys(obj, where, {"shape", "value", "depth", "width", "v0", "smoothing"});
  s.shape = get_string(obj, where, "shape", s.shape);
  s.value = get_number(obj, where, "value", s.value);
  s.depth = get_number(obj, where, "depth", s.depth);
  s.width = get_number(obj, where, "width", s.width);
  s.v0 = get_number(obj, where, "v0", s.v0);
  s.smoothing = get_number(obj, where, "smoothing", s.smoothing);
  if (s.shape != "none" && s.shape != "constant" && s.shape != "smooth_well" && s.shape != "step")
    throw ConfigError(where + ".shape: unknown shape '" + s.shape + "'");
  if (s.shape == "smooth_well" && !(s.width > 0)) throw ConfigError(where + ".width: must be positive");
  if (s.shape == "step" && s.smoothing < 0) throw ConfigError(where + ".smoothing: must be non-negative");
  return s;
}

PacketParams parse_packet(const json& obj, const std::string& where, PacketParams p) {
  check_keys(obj, where, {"k0", "width", "x0", "alpha", "spin"});
  p.k0 = get_number(obj, where, "k0", p.k0);
  p.width = get_number(obj, where, "width", p.width);
  p.x0 = get_number(obj, where, "x0", p.x0);
  p.alpha = get_number(obj, where, "alpha", p.alpha);
  p.spin = get_int(obj, where, "spin", p.spin);
  if (p.spin != 1 && p.spin != -1) throw ConfigError(where + ".spin: must be +1 or -1");
  if (!(p.width > 0)) throw ConfigError(where + ".width: must be positive");
  if (p.alpha < 0) throw ConfigError(where + ".alpha: must be non-negative");
  return p;
}

json shape_json(const ShapeConfig& s) {
  return {{"shape", s.shape}, {"value", s.value}, {"depth", s.depth},
          {"width", s.width}, {"v0", s.v0},       {"smoothing", s.smoothing}};
}

json packet_json(const PacketParams& p) {
  return {{"k0", p.k0}, {"width", p.width}, {"x0", p.x0}, {"alpha", p.alpha}, {"spin", p.spin}};
}

Eigen::VectorXd shape_samples(const ShapeConfig& s, const Grid1D& grid) {
  if (s.shape == "constant") return Eigen::VectorXd::Constant(grid.size(), s.value);
  if (s.shape == "smooth_well") return gaussian_well(grid, s.depth, s.width);
  if (s.shape == "step") return smooth_step(grid, s.v0, s.smoothing);
  return Eigen::VectorXd::Zero(grid.size());
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  check_keys(root, "config",
             {"constants", "grid", "potential", "species", "charge_sign", "evolution", "packet", "klein", "zitter",
              "verify", "modes", "seed", "output_dir"});

  if (root.contains("constants")) {
    const json& c = root["constants"];
    check_keys(c, "constants", {"hbar", "c", "m", "e"});
    cfg.constants.hbar = get_number(c, "constants", "hbar", cfg.constants.hbar);
    cfg.constants.c = get_number(c, "constants", "c", cfg.constants.c);
    cfg.constants.m = get_number(c, "constants", "m", cfg.constants.m);
    cfg.constants.e = get_number(c, "constants", "e", cfg.constants.e);
    try {
      cfg.constants.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("constants: ") + e.what());
    }
  }
  if (root.contains("grid")) {
    const json& g = root["grid"];
    check_keys(g, "grid", {"n_points", "length"});
    cfg.n_points = get_int(g, "grid", "n_points", cfg.n_points);
    cfg.length = get_number(g, "grid", "length", cfg.length);
  }
  if (root.contains("potential")) {
    json p = root["potential"];
    if (!p.is_object()) throw ConfigError("potential: expected an object");
    if (p.contains("drive")) {
      const json& d = p["drive"];
      check_keys(d, "potential.drive", {"profile", "amplitude", "omega", "switch_off"});
      DriveConfig drive;
      if (d.contains("profile")) drive.profile = parse_shape(d["profile"], "potential.drive.profile", drive.profile);
      drive.amplitude = get_number(d, "potential.drive", "amplitude", drive.amplitude);
      drive.omega = get_number(d, "potential.drive", "omega", drive.omega);
      if (d.contains("switch_off")) drive.switch_off = get_number(d, "potential.drive", "switch_off", 0);
      cfg.drive = drive;
      p.erase("drive");
    }
    cfg.potential = parse_shape(p, "potential", cfg.potential);
  }
  cfg.species = get_string(root, "config", "species", cfg.species);
  if (cfg.species != "particle" && cfg.species != "antiparticle")
    throw ConfigError("species: must be 'particle' or 'antiparticle'");
  if (root.contains("charge_sign")) {
    const int s = get_int(root, "config", "charge_sign", 1);
    if (s != 1 && s != -1) throw ConfigError("charge_sign: must be +1 or -1");
    cfg.charge_sign = s;
  }
  if (root.contains("evolution")) {
    const json& e = root["evolution"];
    check_keys(e, "evolution", {"dt", "steps", "projection", "record_every", "write_fields"});
    cfg.evolution.dt = get_number(e, "evolution", "dt", cfg.evolution.dt);
    cfg.evolution.steps = get_int(e, "evolution", "steps", cfg.evolution.steps);
    cfg.evolution.record_every = get_int(e, "evolution", "record_every", cfg.evolution.record_every);
    cfg.write_fields = get_bool(e, "evolution", "write_fields", cfg.write_fields);
    try {
      cfg.evolution.projection =
          projection_from_string(get_string(e, "evolution", "projection", std::string(to_string(cfg.evolution.projection))));
      cfg.evolution.validate();
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(std::string("evolution: ") + ex.what());
    }
  }
  if (root.contains("packet")) cfg.packet = parse_packet(root["packet"], "packet", cfg.packet);
  if (root.contains("klein")) {
    const json& k = root["klein"];
    check_keys(k, "klein", {"points", "simulate", "n_points", "length", "packet_width", "smoothing_cells", "dt"});
    if (k.contains("points")) {
      if (!k["points"].is_array()) throw ConfigError("klein.points: expected an array");
      cfg.klein_points.clear();
      for (std::size_t i = 0; i < k["points"].size(); ++i) {
        const std::string where = "klein.points[" + std::to_string(i) + "]";
        const json& pt = k["points"][i];
        check_keys(pt, where, {"E", "v0"});
        if (!pt.contains("E") || !pt.contains("v0")) throw ConfigError(where + ": needs E and v0");
        cfg.klein_points.push_back({get_number(pt, where, "E", 0), get_number(pt, where, "v0", 0)});
      }
    }
    cfg.klein_simulate = get_bool(k, "klein", "simulate", cfg.klein_simulate);
    cfg.klein_grid.n_points = get_int(k, "klein", "n_points", cfg.klein_grid.n_points);
    cfg.klein_grid.length = get_number(k, "klein", "length", cfg.klein_grid.length);
    cfg.klein_grid.packet_width = get_number(k, "klein", "packet_width", cfg.klein_grid.packet_width);
    cfg.klein_grid.smoothing_cells = get_number(k, "klein", "smoothing_cells", cfg.klein_grid.smoothing_cells);
    cfg.klein_grid.dt = get_number(k, "klein", "dt", cfg.klein_grid.dt);
  }
  if (root.contains("zitter")) {
    json z = root["zitter"];
    if (!z.is_object()) throw ConfigError("zitter: expected an object");
    json packet = json::object();
    for (const char* key : {"k0", "width", "x0", "alpha", "spin"}) {
      if (z.contains(key)) {
        packet[key] = z[key];
        z.erase(key);
      }
    }
    check_keys(z, "zitter", {"n_points", "length", "duration", "dt"});
    cfg.zitter_packet = parse_packet(packet, "zitter", cfg.zitter_packet);
    cfg.zitter_n_points = get_int(z, "zitter", "n_points", cfg.zitter_n_points);
    cfg.zitter_length = get_number(z, "zitter", "length", cfg.zitter_length);
    cfg.zitter_duration = get_number(z, "zitter", "duration", cfg.zitter_duration);
    cfg.zitter_dt = get_number(z, "zitter", "dt", cfg.zitter_dt);
  }
  if (root.contains("verify")) {
    const json& v = root["verify"];
    check_keys(v, "verify", {"samples", "k_max", "grid_points", "grid_length", "fault_injection"});
    cfg.verify_samples = get_int(v, "verify", "samples", cfg.verify_samples);
    cfg.verify_k_max = get_number(v, "verify", "k_max", cfg.verify_k_max);
    cfg.verify_grid_points = get_int(v, "verify", "grid_points", cfg.verify_grid_points);
    cfg.verify_grid_length = get_number(v, "verify", "grid_length", cfg.verify_grid_length);
    cfg.fault_injection = get_string(v, "verify", "fault_injection", cfg.fault_injection);
    if (!cfg.fault_injection.empty() && cfg.fault_injection != "corrupt_c_matrix" &&
        cfg.fault_injection != "scale_gamma4")
      throw ConfigError("verify.fault_injection: unknown fault '" + cfg.fault_injection + "'");
    if (cfg.verify_samples < 1) throw ConfigError("verify.samples: must be >= 1");
  }
  if (root.contains("modes")) {
    const json& m = root["modes"];
    check_keys(m, "modes", {"k_max", "count"});
    cfg.modes_k_max = get_number(m, "modes", "k_max", cfg.modes_k_max);
    cfg.modes_count = get_int(m, "modes", "count", cfg.modes_count);
    if (cfg.modes_count < 1) throw ConfigError("modes.count: must be >= 1");
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  cfg.output_dir = get_string(root, "config", "output_dir", cfg.output_dir);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const RunConfig& cfg) {
  json j;
  j["constants"] = {{"hbar", cfg.constants.hbar}, {"c", cfg.constants.c}, {"m", cfg.constants.m}, {"e", cfg.constants.e}};
  j["grid"] = {{"n_points", cfg.n_points}, {"length", cfg.length}};
  json pot = shape_json(cfg.potential);
  if (cfg.drive) {
    json d = {{"profile", shape_json(cfg.drive->profile)}, {"amplitude", cfg.drive->amplitude}, {"omega", cfg.drive->omega}};
    if (cfg.drive->switch_off) d["switch_off"] = *cfg.drive->switch_off;
    pot["drive"] = d;
  }
  j["potential"] = pot;
  j["species"] = cfg.species;
  j["charge_sign"] = resolved_charge_sign(cfg);
  j["evolution"] = {{"dt", cfg.evolution.dt},
                    {"steps", cfg.evolution.steps},
                    {"projection", std::string(to_string(cfg.evolution.projection))},
                    {"record_every", cfg.evolution.record_every},
                    {"write_fields", cfg.write_fields}};
  j["packet"] = packet_json(cfg.packet);
  json points = json::array();
  for (const auto& p : cfg.klein_points) points.push_back({{"E", p.energy}, {"v0", p.v0}});
  j["klein"] = {{"points", points},
                {"simulate", cfg.klein_simulate},
                {"n_points", cfg.klein_grid.n_points},
                {"length", cfg.klein_grid.length},
                {"packet_width", cfg.klein_grid.packet_width},
                {"smoothing_cells", cfg.klein_grid.smoothing_cells},
                {"dt", cfg.klein_grid.dt}};
  json z = packet_json(cfg.zitter_packet);
  z["n_points"] = cfg.zitter_n_points;
  z["length"] = cfg.zitter_length;
  z["duration"] = cfg.zitter_duration;
  z["dt"] = cfg.zitter_dt;
  j["zitter"] = z;
  j["verify"] = {{"samples", cfg.verify_samples},
                 {"k_max", cfg.verify_k_max},
                 {"grid_points", cfg.verify_grid_points},
                 {"grid_length", cfg.verify_grid_length},
                 {"fault_injection", cfg.fault_injection}};
  j["modes"] = {{"k_max", cfg.modes_k_max}, {"count", cfg.modes_count}};
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  return j.dump();
}

Grid1D make_grid(const RunConfig& cfg) {
  try {
    return Grid1D(cfg.n_points, cfg.length);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

PotentialSpec make_potential(const RunConfig& cfg, const Grid1D& grid) {
  PotentialSpec p = PotentialSpec::none(grid.size());
  p.a0 = shape_samples(cfg.potential, grid);
  if (cfg.drive) {
    p.drive_a0 = shape_samples(cfg.drive->profile, grid);
    p.time_profile.amplitude = cfg.drive->amplitude;
    p.time_profile.omega = cfg.drive->omega;
    if (cfg.drive->switch_off) p.time_profile.switch_off = *cfg.drive->switch_off;
  }
  return p;
}

int resolved_charge_sign(const RunConfig& cfg) {
  if (cfg.charge_sign) return *cfg.charge_sign;
  return default_charge_sign(cfg.species == "particle" ? Species::particle : Species::antiparticle);
}

}  // namespace csdirac::cli
