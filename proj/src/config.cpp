#include "omt/config.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace omt {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error(path + ": JSON parse error: " + e.what());
  }
  return j;
}

double get_num(const json& j, const std::string& ctx, const char* key,
               bool required = true, double fallback = 0.0) {
  if (!j.contains(key)) {
    if (required) throw config_error(ctx + "." + key + ": missing required field");
    return fallback;
  }
  if (!j[key].is_number())
    throw config_error(ctx + "." + key + ": must be a number");
  return j[key].get<double>();
}

SystemParams params_from_json(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw config_error(ctx + ": must be an object");
  SystemParams p;
  p.gamma0_plus = get_num(j, ctx, "gamma0_plus");
  p.gamma0_minus = get_num(j, ctx, "gamma0_minus");
  p.gammae_plus = get_num(j, ctx, "gammae_plus", false, 0.0);
  p.gammae_minus = get_num(j, ctx, "gammae_minus", false, 0.0);
  p.gamma0_center = get_num(j, ctx, "gamma0_center");
  p.gammae_center = get_num(j, ctx, "gammae_center", false, 0.0);
  p.gamma_m = get_num(j, ctx, "gamma_m");
  p.eta_plus = get_num(j, ctx, "eta_plus");
  p.eta_minus = get_num(j, ctx, "eta_minus");
  p.pump_amplitude = get_num(j, ctx, "pump_amplitude");
  p.n_thermal = get_num(j, ctx, "n_thermal", false, 0.0);
  for (const char* key : {"omega_m", "omega_0", "omega_plus", "omega_minus"}) {
    if (j.contains(key) && !j[key].is_null()) {
      const double v = get_num(j, ctx, key);
      if (std::string(key) == "omega_m") p.omega_m = v;
      else if (std::string(key) == "omega_0") p.omega_0 = v;
      else if (std::string(key) == "omega_plus") p.omega_plus = v;
      else p.omega_minus = v;
    }
  }
  return p;
}

// All rates in units of gamma_m internally; absolute-rate configs rescale.
void normalize_units(SystemParams& p, const std::string& units,
                     std::vector<double>* omegas = nullptr) {
  if (units == "gamma_m") return;
  if (units != "rad_per_s" && units != "rad/s")
    throw config_error("units: must be \"gamma_m\" or \"rad_per_s\"");
  const double gm = p.gamma_m;
  if (!(gm > 0)) throw config_error("params.gamma_m: must be > 0 to rescale units");
  p.gamma0_plus /= gm;
  p.gamma0_minus /= gm;
  p.gammae_plus /= gm;
  p.gammae_minus /= gm;
  p.gamma0_center /= gm;
  p.gammae_center /= gm;
  p.eta_plus /= gm;
  p.eta_minus /= gm;
  p.gamma_m = 1.0;
  if (omegas)
    for (double& w : *omegas) w /= gm;
}

OmegaGrid omega_grid_from_json(const json& j, const std::string& ctx) {
  OmegaGrid g;
  g.scale = j.value("scale", "linear");
  if (g.scale != "linear" && g.scale != "log")
    throw config_error(ctx + ".scale: must be \"linear\" or \"log\"");
  g.min = get_num(j, ctx, "min");
  g.max = get_num(j, ctx, "max");
  if (!j.contains("points") || !j["points"].is_number_integer())
    throw config_error(ctx + ".points: missing or not an integer");
  g.points = j["points"].get<int>();
  if (g.points < 2) throw config_error(ctx + ".points: need >= 2 points");
  if (!(g.max > g.min)) throw config_error(ctx + ": max must exceed min");
  if (g.scale == "log" && !(g.min > 0))
    throw config_error(ctx + ": log scale requires min > 0");
  return g;
}

}  // namespace

std::vector<double> OmegaGrid::values() const {
  std::vector<double> v(points);
  if (scale == "log") {
    const double l0 = std::log(min), l1 = std::log(max);
    for (int i = 0; i < points; ++i)
      v[i] = std::exp(l0 + (l1 - l0) * i / (points - 1));
  } else {
    for (int i = 0; i < points; ++i)
      v[i] = min + (max - min) * i / (points - 1);
  }
  return v;
}

RunConfig load_run_config(const std::string& path) {
  const json j = load_json_file(path);
  RunConfig cfg;
  cfg.units = j.value("units", "gamma_m");
  if (!j.contains("params")) throw config_error("params: missing required section");
  cfg.params = params_from_json(j["params"], "params");

  if (!j.contains("sweep") || !j["sweep"].is_object())
    throw config_error("sweep: missing required section");
  const json& sw = j["sweep"];
  const std::string kind = sw.value("kind", "omega");
  if (kind == "omega") cfg.sweep.kind = SweepSpec::Kind::omega;
  else if (kind == "power") cfg.sweep.kind = SweepSpec::Kind::power;
  else if (kind == "loss") cfg.sweep.kind = SweepSpec::Kind::loss;
  else throw config_error("sweep.kind: must be omega, power, or loss");
  if (!sw.contains("omega") || !sw["omega"].is_object())
    throw config_error("sweep.omega: missing frequency grid");
  cfg.sweep.omega = omega_grid_from_json(sw["omega"], "sweep.omega");
  if (cfg.sweep.kind != SweepSpec::Kind::omega) {
    if (!sw.contains("scales") || !sw["scales"].is_array() || sw["scales"].empty())
      throw config_error("sweep.scales: power/loss sweeps need a non-empty array");
    for (const auto& s : sw["scales"]) {
      if (!s.is_number() || !(s.get<double>() >= 0))
        throw config_error("sweep.scales: entries must be numbers >= 0");
      cfg.sweep.scales.push_back(s.get<double>());
    }
  }

  if (!j.contains("channels") || !j["channels"].is_array() || j["channels"].empty())
    throw config_error("channels: need a non-empty list of channel labels");
  for (const auto& c : j["channels"]) {
    if (!c.is_string()) throw config_error("channels: entries must be strings");
    cfg.channels.push_back(c.get<std::string>());
  }

  if (j.contains("output")) {
    cfg.out_path = j["output"].value("path", cfg.out_path);
    cfg.format = j["output"].value("format", cfg.format);
    if (cfg.format != "csv" && cfg.format != "json")
      throw config_error("output.format: must be csv or json");
  }

  const double gm_orig = cfg.params.gamma_m;
  normalize_units(cfg.params, cfg.units);
  if (cfg.units != "gamma_m") {
    cfg.sweep.omega.min /= gm_orig;
    cfg.sweep.omega.max /= gm_orig;
  }
  cfg.params.validate();
  return cfg;
}

std::vector<ChannelSpec> resolve_channels(const std::vector<std::string>& names,
                                          const SystemParams& params) {
  const DerivedCouplings c = derive_couplings(params);
  std::vector<ChannelSpec> specs;
  for (const std::string& name : names) {
    ChannelSpec spec;
    spec.name = name;
    if (name == "optimal") {
      spec.per_frequency_optimal = true;
    } else if (name == "difference") {
      spec.weights = balanced_difference();
    } else if (name == "sum") {
      spec.weights = balanced_sum();
    } else if (name == "beta-plus") {
      spec.weights = alpha_beta_weights(c).beta_plus;
    } else if (name == "beta-minus") {
      spec.weights = alpha_beta_weights(c).beta_minus;
    } else if (name == "beta-composite") {
      spec.weights = composite_beta_combination(params, c, BetaCoefficient::exact);
    } else if (name == "beta-composite-asymptotic") {
      spec.weights = composite_beta_combination(params, c, BetaCoefficient::asymptotic);
    } else {
      throw config_error("channels: unknown channel label '" + name + "'");
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int n_workers = std::min(threads, n);
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<BudgetRow> compute_budget(const SystemParams& params,
                                      const std::vector<double>& omegas,
                                      const std::vector<ChannelSpec>& channels,
                                      int threads) {
  if (channels.empty()) throw config_error("budget: empty channel list");
  const auto n_ch = channels.size();
  std::vector<BudgetRow> rows(omegas.size() * n_ch);
  std::exception_ptr first_error;
  std::mutex err_mutex;

  parallel_for(static_cast<int>(omegas.size()), threads, [&](int i) {
    try {
      const TransferSet t = output_transfer(params, omegas[i]);
      for (size_t k = 0; k < n_ch; ++k) {
        BudgetRow& out = rows[i * n_ch + k];
        out.omega = omegas[i];
        out.channel = channels[k].name;
        if (channels[k].per_frequency_optimal) {
          auto [w, smin] = optimal_weights(t);
          out.row = force_referred_psd(t, w, params.n_thermal);
        } else {
          out.row = force_referred_psd(t, channels[k].weights, params.n_thermal);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  });
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

namespace {

constexpr const char* kCsvHeader =
    "omega,channel,s_total,s_aplus,s_aminus,s_eplus,s_eminus,s_thermal,"
    "s_sql,ratio_R,signal_gain";

void append_row_csv(std::ostream& os, const BudgetRow& r) {
  os << format_double(r.omega) << ',' << r.channel;
  os << ',' << format_double(r.row.s_total);
  for (double s : r.row.s_by_channel) os << ',' << format_double(s);
  os << ',' << format_double(r.row.s_thermal) << ',' << format_double(r.row.s_sql)
     << ',' << format_double(r.row.ratio_R) << ','
     << format_double(r.row.signal_gain) << '\n';
}

}  // namespace

void write_budget_csv(const std::string& path, const std::vector<BudgetRow>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("cannot write output file: " + path);
  os << kCsvHeader << '\n';
  for (const BudgetRow& r : rows) append_row_csv(os, r);
}

void write_budget_json(const std::string& path, const std::vector<BudgetRow>& rows) {
  json out = json::array();
  for (const BudgetRow& r : rows) {
    out.push_back({{"omega", r.omega},
                   {"channel", r.channel},
                   {"s_total", r.row.s_total},
                   {"s_aplus", r.row.s_by_channel[0]},
                   {"s_aminus", r.row.s_by_channel[1]},
                   {"s_eplus", r.row.s_by_channel[2]},
                   {"s_eminus", r.row.s_by_channel[3]},
                   {"s_thermal", r.row.s_thermal},
                   {"s_sql", r.row.s_sql},
                   {"ratio_R", r.row.ratio_R},
                   {"signal_gain", r.row.signal_gain}});
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("cannot write output file: " + path);
  os << out.dump(2) << '\n';
}

OracleConfig load_oracle_config(const std::string& path) {
  const json j = load_json_file(path);
  OracleConfig cfg;
  if (!j.contains("params")) throw config_error("params: missing required section");
  cfg.params = params_from_json(j["params"], "params");
  normalize_units(cfg.params, j.value("units", "gamma_m"));
  cfg.params.validate();

  if (!j.contains("sim") || !j["sim"].is_object())
    throw config_error("sim: missing required section");
  const json& sim = j["sim"];
  cfg.sim.dt = get_num(sim, "sim", "dt");
  cfg.sim.total_time = get_num(sim, "sim", "total_time");
  cfg.sim.seed = sim.value("seed", 12345);
  if (sim.contains("signal") && !sim["signal"].is_null()) {
    const json& sig = sim["signal"];
    const std::string kind = sig.value("kind", "none");
    if (kind == "none") cfg.sim.signal.kind = SignalSpec::Kind::none;
    else if (kind == "sinusoid") {
      cfg.sim.signal.kind = SignalSpec::Kind::sinusoid;
      cfg.sim.signal.amplitude = get_num(sig, "sim.signal", "amplitude");
      cfg.sim.signal.omega_s = get_num(sig, "sim.signal", "omega_s");
    } else if (kind == "pulse") {
      cfg.sim.signal.kind = SignalSpec::Kind::pulse;
      cfg.sim.signal.amplitude = get_num(sig, "sim.signal", "amplitude");
      cfg.sim.signal.tau = get_num(sig, "sim.signal", "tau");
    } else {
      throw config_error("sim.signal.kind: must be none, sinusoid, or pulse");
    }
  }

  if (!j.contains("welch") || !j["welch"].is_object())
    throw config_error("welch: missing required section");
  cfg.segment_length = j["welch"].value("segment_length", 0);
  if (cfg.segment_length < 16)
    throw config_error("welch.segment_length: must be >= 16");
  cfg.overlap_fraction = j["welch"].value("overlap_fraction", 0.0);

  if (j.contains("band")) {
    if (!j["band"].is_array() || j["band"].size() != 2)
      throw config_error("band: must be [lo, hi]");
    cfg.band_lo = j["band"][0].get<double>();
    cfg.band_hi = j["band"][1].get<double>();
  }
  cfg.channel = j.value("channel", "difference");
  if (j.contains("output")) cfg.out_path = j["output"].value("path", cfg.out_path);
  return cfg;
}

OverlapConfig load_overlap_config(const std::string& path) {
  const json j = load_json_file(path);
  OverlapConfig cfg;
  if (j.contains("modes")) {
    const json& m = j["modes"];
    cfg.n0 = m.value("n0", 0);
    cfg.n1 = m.value("n1", 1);
    cfg.n2 = m.value("n2", 2);
    cfg.waist0 = m.value("waist0", 1.0);
    cfg.waist1 = m.value("waist1", 1.0);
    cfg.waist2 = m.value("waist2", 1.0);
  }
  if (j.contains("mechanical")) {
    const json& m = j["mechanical"];
    cfg.mech_n = m.value("n", 1);
    cfg.mech_waist = m.value("waist", 1.0);
  }
  if (j.contains("reference")) {
    cfg.reference = params_from_json(j["reference"], "reference");
    normalize_units(cfg.reference, j.value("units", "gamma_m"));
    cfg.has_reference = true;
  }
  cfg.write_params_path = j.value("write_params", "");
  return cfg;
}

void write_params_json(const std::string& path, const SystemParams& p) {
  json j = {{"gamma0_plus", p.gamma0_plus},
            {"gamma0_minus", p.gamma0_minus},
            {"gammae_plus", p.gammae_plus},
            {"gammae_minus", p.gammae_minus},
            {"gamma0_center", p.gamma0_center},
            {"gammae_center", p.gammae_center},
            {"gamma_m", p.gamma_m},
            {"eta_plus", p.eta_plus},
            {"eta_minus", p.eta_minus},
            {"pump_amplitude", p.pump_amplitude},
            {"n_thermal", p.n_thermal}};
  if (p.omega_m) j["omega_m"] = *p.omega_m;
  if (p.omega_0) j["omega_0"] = *p.omega_0;
  if (p.omega_plus) j["omega_plus"] = *p.omega_plus;
  if (p.omega_minus) j["omega_minus"] = *p.omega_minus;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("cannot write params file: " + path);
  os << j.dump(2) << '\n';
}

SystemParams params_from_json_file(const std::string& path) {
  const json j = load_json_file(path);
  return params_from_json(j, "params");
}

}  // namespace omt
