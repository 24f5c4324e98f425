#pragma once

#include <string>
#include <vector>

#include "omt/combine.hpp"
#include "omt/model.hpp"
#include "omt/oracle.hpp"

namespace omt {

struct OmegaGrid {
  std::string scale = "linear";  // "linear" | "log"
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  std::vector<double> values() const;
};

struct SweepSpec {
  enum class Kind { omega, power, loss };
  Kind kind = Kind::omega;
  OmegaGrid omega;
  // power: pump power multipliers; loss: gammae multipliers.
  std::vector<double> scales;
};

struct RunConfig {
  SystemParams params;
  SweepSpec sweep;
  std::vector<std::string> channels;
  std::string out_path = "budget";
  std::string format = "csv";  // "csv" | "json"
  std::string units = "gamma_m";
};

RunConfig load_run_config(const std::string& path);

// A measurement channel by name: one of
//   optimal | difference | sum | beta-plus | beta-minus |
//   beta-composite | beta-composite-asymptotic
// "optimal" re-solves the matched filter at every frequency.
struct ChannelSpec {
  std::string name;
  bool per_frequency_optimal = false;
  CombinationWeights weights;  // unused when per_frequency_optimal
};

std::vector<ChannelSpec> resolve_channels(const std::vector<std::string>& names,
                                          const SystemParams& params);

struct BudgetRow {
  double omega = 0.0;
  std::string channel;
  NoiseBudgetRow row;
};

// Full sweep over a frequency grid and channel list; rows ordered by omega
// then channel regardless of thread count.
std::vector<BudgetRow> compute_budget(const SystemParams& params,
                                      const std::vector<double>& omegas,
                                      const std::vector<ChannelSpec>& channels,
                                      int threads = 1);

void write_budget_csv(const std::string& path, const std::vector<BudgetRow>& rows);
void write_budget_json(const std::string& path, const std::vector<BudgetRow>& rows);

// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

// Oracle run configuration (time-domain validation).
struct OracleConfig {
  SystemParams params;
  SimConfig sim;
  int segment_length = 0;
  double overlap_fraction = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  std::string channel = "difference";
  std::string out_path = "oracle";
};

OracleConfig load_oracle_config(const std::string& path);

// Overlap run configuration (mode profiles -> coupling ratio).
struct OverlapConfig {
  int n0 = 0, n1 = 1, n2 = 2;
  double waist0 = 1.0, waist1 = 1.0, waist2 = 1.0;
  // mechanical profile: hermite-gauss order + waist
  int mech_n = 1;
  double mech_waist = 1.0;
  SystemParams reference;     // eta_minus anchors the absolute scale
  bool has_reference = false;
  std::string write_params_path;  // optional: emit updated params file
};

OverlapConfig load_overlap_config(const std::string& path);

void write_params_json(const std::string& path, const SystemParams& params);
SystemParams params_from_json_file(const std::string& path);

}  // namespace omt
