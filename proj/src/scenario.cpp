// Copyright 2026 The hbepp-link Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hbepp/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "hbepp/analytic.hpp"
#include "hbepp/errors.hpp"
#include "hbepp/kernels.hpp"
#include "hbepp/keyrate.hpp"

namespace hbepp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ParseError(key, "expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

int parse_int(const std::string& key, std::string_view value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(key, "expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParseError(key, "expected true or false, got '" + std::string(value) + "'");
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ParseError(key, message);
}

const std::set<std::string, std::less<>> kSweepVariables = {"theta_deg", "g", "mu", "loss2_db"};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_value(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", *v);
  return buf;
}

std::string_view form_key(SourceForm f) { return f == SourceForm::kGain ? "source.g" : "source.mu"; }

std::string arm_key(int arm, ArmForm f) {
  return "channel." + std::string(f == ArmForm::kTransmittance ? "tau" : "loss") +
         std::to_string(arm) + (f == ArmForm::kLossDb ? "_db" : "");
}

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kText:
      return "text";
    default:
      return "auto";
  }
}

// ---------------------------------------------------------------------------
// Result rendering.

struct Column {
  std::string name;
  std::string unit;
};

struct ResultTable {
  std::string title;
  std::vector<Column> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  bool is_sweep = true;
};

std::string render(const ResultTable& t, OutputFormat format) {
  const bool csv = format == OutputFormat::kCsv ||
                   (format == OutputFormat::kAuto && t.is_sweep);
  std::ostringstream out;
  if (csv) {
    out << "# hbepp-link " << t.title << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << (i ? "," : "") << t.columns[i].name << "[" << t.columns[i].unit << "]";
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i]);
      out << "\n";
    }
    for (const auto& [k, v] : t.summary) out << "# " << k << " = " << v << "\n";
  } else {
    out << "# hbepp-link " << t.title << "\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (t.rows.size() > 1) out << "[point " << r << "]\n";
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out << t.columns[i].name << "[" << t.columns[i].unit << "] = " << format_value(t.rows[r][i])
            << "\n";
      }
      if (r + 1 < t.rows.size()) out << "\n";
    }
    for (const auto& [k, v] : t.summary) out << k << " = " << v << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Subcommands.

SweepSpec sweep_or(const ScenarioConfig& config, SweepSpec fallback,
                   std::initializer_list<std::string_view> allowed) {
  const SweepSpec spec = config.sweep.value_or(fallback);
  if (std::find(allowed.begin(), allowed.end(), spec.variable) == allowed.end()) {
    std::string list;
    for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw ParseError("sweep.variable", "'" + spec.variable + "' is not usable here (allowed: " +
                                           list + ")");
  }
  return spec;
}

// Config with the sweep variable set to `value`.
ScenarioConfig at_point(const ScenarioConfig& base, const std::string& variable, double value) {
  ScenarioConfig c = base;
  if (variable == "theta_deg") {
    c.theta1_deg = base.theta2_deg + value;
  } else if (variable == "g") {
    c.source_form = SourceForm::kGain;
    c.source_value = value;
  } else if (variable == "mu") {
    c.source_form = SourceForm::kMeanPhoton;
    c.source_value = value;
  } else if (variable == "loss2_db") {
    c.arm2_form = ArmForm::kLossDb;
    c.arm2_value = value;
  }
  return c;
}

Column sweep_column(const std::string& variable) {
  if (variable == "theta_deg") return {"theta", "deg"};
  if (variable == "g") return {"g", "-"};
  if (variable == "mu") return {"mu", "pairs/mode"};
  return {"L2", "dB"};
}

// Sweep variable, plus the gain when the sweep is not over g.
std::vector<Column> leading_columns(const std::string& variable) {
  std::vector<Column> cols{sweep_column(variable)};
  if (variable != "g") cols.push_back({"g", "-"});
  return cols;
}

std::vector<std::optional<double>> leading_values(const std::string& variable, double value,
                                                  const ScenarioConfig& c) {
  std::vector<std::optional<double>> row{value};
  if (variable != "g") row.push_back(c.source().gain());
  return row;
}

std::string rate_unit(const ScenarioConfig& c) { return c.per_second ? "1/s" : "prob/mode"; }

double rate_scale(const ScenarioConfig& c) {
  return c.per_second ? 1.0 / (c.coherence_time_ns * 1e-9) : 1.0;
}

ResultTable run_probs(const ScenarioConfig& config) {
  ResultTable t;
  t.title = "probs";
  std::vector<ScenarioConfig> points;
  if (config.sweep) {
    const SweepSpec spec = sweep_or(config, {}, {"theta_deg", "g", "mu", "loss2_db"});
    t.columns.push_back(sweep_column(spec.variable));
    for (double v : spec.values()) points.push_back(at_point(config, spec.variable, v));
  } else {
    t.is_sweep = false;
    points.push_back(config);
  }
  for (const ClickPattern& p : kCanonicalPatterns) t.columns.push_back({"P_" + p.bits(), "prob/mode"});

  std::vector<ScenarioPoint> grid;
  for (const auto& c : points) grid.push_back({c.source(), c.channel(), c.angles()});
  const auto tables = parallel::evaluate_tables(grid);
  const auto values = config.sweep ? config.sweep->values() : std::vector<double>{};
  for (std::size_t i = 0; i < tables.size(); ++i) {
    std::vector<std::optional<double>> row;
    if (config.sweep) row.push_back(values[i]);
    for (double v : tables[i].values()) row.push_back(v);
    t.rows.push_back(std::move(row));
  }
  if (!t.is_sweep) {
    // Describe the single point alongside the table.
    const ScenarioConfig& c = config;
    t.summary = {{"g", format_value(c.source().gain())},
                 {"mu", format_value(c.source().mean_photon_number())},
                 {"tau1", format_value(c.channel().tau1())},
                 {"tau2", format_value(c.channel().tau2())},
                 {"dark_count", format_value(c.dark_count)},
                 {"theta_deg", format_value(c.theta1_deg - c.theta2_deg)}};
  }
  return t;
}

ResultTable run_chsh(const ScenarioConfig& config) {
  const SweepSpec spec = sweep_or(config, {"g", 0.05, 0.9, 18}, {"g", "mu", "loss2_db"});
  ResultTable t;
  t.title = "chsh";
  t.columns = leading_columns(spec.variable);
  t.columns.insert(t.columns.end(), {{"S_squash", "-"}, {"S_discard", "-"}});
  const auto values = spec.values();
  t.rows = parallel::generate(values.size(), [&](std::size_t i) {
    const ScenarioConfig c = at_point(config, spec.variable, values[i]);
    auto row = leading_values(spec.variable, values[i], c);
    row.push_back(chsh(c.source(), c.channel(), PostprocessingModel::kSquash));
    row.push_back(chsh(c.source(), c.channel(), PostprocessingModel::kDiscard));
    return row;
  });
  return t;
}

ResultTable run_keyrate(const ScenarioConfig& config) {
  const SweepSpec spec = sweep_or(config, {"g", 0.05, 0.9, 18}, {"g", "mu", "loss2_db"});
  const std::string unit = rate_unit(config);
  const double scale = rate_scale(config);
  ResultTable t;
  t.title = "keyrate";
  t.columns = leading_columns(spec.variable);
  t.columns.insert(t.columns.end(), {{"qber_squash", "-"},
                                     {"R_sift_squash", unit},
                                     {"R_sec_squash", unit},
                                     {"qber_discard", "-"},
                                     {"R_sift_discard", unit},
                                     {"R_sec_discard", unit}});
  const auto values = spec.values();
  t.rows = parallel::generate(values.size(), [&](std::size_t i) {
    const ScenarioConfig c = at_point(config, spec.variable, values[i]);
    const KeyRateReport sq = key_rate(c.source(), c.channel(), PostprocessingModel::kSquash);
    const KeyRateReport di = key_rate(c.source(), c.channel(), PostprocessingModel::kDiscard);
    auto row = leading_values(spec.variable, values[i], c);
    row.insert(row.end(), {sq.qber, sq.sifted_rate * scale, sq.secure_rate * scale, di.qber,
                           di.sifted_rate * scale, di.secure_rate * scale});
    return row;
  });
  return t;
}

ResultTable run_optimize(const ScenarioConfig& config) {
  GainBounds bounds;
  if (config.sweep) {
    const SweepSpec spec = sweep_or(config, {}, {"g"});
    bounds = {spec.start, spec.stop};
  }
  const ChannelParams channel = config.channel();
  const OptimizationResult r = optimize_gain(channel, bounds, {}, config.model);
  ResultTable t;
  t.title = "optimize";
  t.is_sweep = false;
  t.columns = {{"L1", "dB"},          {"L2", "dB"},       {"dark_count", "prob/mode"},
               {"g_opt", "-"},        {"mu_opt", "pairs/mode"},
               {"R_sec_opt", rate_unit(config)},
               {"iterations", "-"},   {"bracket_lo", "-"}, {"bracket_hi", "-"}};
  t.rows.push_back({channel.loss1_db(), channel.loss2_db(), channel.dark_count(), r.g_opt, r.mu_opt,
                    r.secure_rate_at_opt * rate_scale(config), static_cast<double>(r.iterations),
                    r.bracket_lo, r.bracket_hi});
  t.summary = {{"model", std::string(to_string(config.model))},
               {"status", r.g_opt ? "ok" : "no positive secure rate in bracket"}};
  return t;
}

ResultTable run_sweep(const ScenarioConfig& config) {
  const SweepSpec spec = sweep_or(config, {"loss2_db", 20.0, 45.0, 26}, {"loss2_db"});
  const double mu_fixed = config.source().mean_photon_number();
  const auto losses = spec.values();
  const PassiveSweep sweep = passive_performance(mu_fixed, config.channel(), losses);
  const std::string unit = rate_unit(config);
  const double scale = rate_scale(config);
  ResultTable t;
  t.title = "sweep";
  t.columns = {{"L2", "dB"},
               {"R_sec_fixed", unit},
               {"R_sec_opt", unit},
               {"mu_opt", "pairs/mode"},
               {"ratio", "-"}};
  for (const PassivePoint& p : sweep.points) {
    t.rows.push_back({p.loss2_db, p.secure_rate_fixed * scale, p.secure_rate_opt * scale, p.mu_opt,
                      p.ratio});
  }
  t.summary = {{"mu_fixed", format_value(mu_fixed)}, {"min_ratio", format_value(sweep.min_ratio)}};
  return t;
}

// Uniform double in [0,1) from a 64-bit engine; identical on every platform.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ResultTable run_oracle_check(const ScenarioConfig& config) {
  std::vector<ScenarioConfig> points;
  if (config.sweep) {
    const SweepSpec spec = sweep_or(config, {}, {"theta_deg", "g", "mu", "loss2_db"});
    for (double v : spec.values()) points.push_back(at_point(config, spec.variable, v));
  } else {
    std::mt19937_64 rng(20260101);
    for (int i = 0; i < 24; ++i) {
      ScenarioConfig c = config;
      c.source_form = SourceForm::kGain;
      c.source_value = 0.7 * unit_uniform(rng);
      c.arm1_form = ArmForm::kTransmittance;
      c.arm1_value = 0.01 + 0.99 * unit_uniform(rng);
      c.arm2_form = ArmForm::kTransmittance;
      c.arm2_value = 0.01 + 0.99 * unit_uniform(rng);
      c.theta1_deg = 180.0 * unit_uniform(rng);
      c.theta2_deg = 0.0;
      c.dark_count = (i % 2 == 0) ? 0.0 : 1e-3;
      points.push_back(c);
    }
  }
  ResultTable t;
  t.title = "oracle-check";
  t.columns = {{"g", "-"},         {"tau1", "-"},          {"tau2", "-"},
               {"theta", "deg"},   {"dark_count", "prob/mode"},
               {"max_abs_dev", "prob/mode"}, {"truncation_bound", "prob/mode"}};
  double worst = 0.0;
  double worst_bound = 0.0;
  bool pass = true;
  for (const ScenarioConfig& c : points) {
    const SourceParams s = c.source();
    const ChannelParams ch = c.channel();
    const MeasurementAngles a = c.angles();
    const double dev =
        outcome_probabilities(s, ch, a).max_abs_difference(fock::oracle_probabilities(s, ch, a, c.n_max));
    const double bound = fock::truncation_error_bound(s.gain(), c.n_max);
    worst = std::max(worst, dev);
    worst_bound = std::max(worst_bound, bound);
    pass = pass && dev <= bound + 1e-10;
    t.rows.push_back({s.gain(), ch.tau1(), ch.tau2(), c.theta1_deg - c.theta2_deg, ch.dark_count(),
                      dev, bound});
  }
  t.summary = {{"n_max", std::to_string(config.n_max)},
               {"max_abs_deviation", format_value(worst)},
               {"max_truncation_bound", format_value(worst_bound)},
               {"status", pass ? "pass" : "fail"}};
  return t;
}

}  // namespace

std::vector<double> SweepSpec::values() const {
  std::vector<double> v;
  if (steps <= 1) return {start};
  v.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    v.push_back(i + 1 == steps ? stop : start + (stop - start) * i / (steps - 1));
  }
  return v;
}

SourceParams ScenarioConfig::source() const {
  return source_form == SourceForm::kGain ? SourceParams::from_gain(source_value)
                                          : SourceParams::from_mean_photon(source_value);
}

ChannelParams ScenarioConfig::channel() const {
  const double t1 =
      arm1_form == ArmForm::kTransmittance ? arm1_value : transmittance_from_db(arm1_value);
  const double t2 =
      arm2_form == ArmForm::kTransmittance ? arm2_value : transmittance_from_db(arm2_value);
  return ChannelParams::from_transmittance(t1, t2, dark_count);
}

MeasurementAngles ScenarioConfig::angles() const {
  return MeasurementAngles::from_degrees(theta1_deg, theta2_deg);
}

ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base) {
  ScenarioConfig c = base;
  std::set<std::string, std::less<>> seen;
  const auto exclusive = [&](const std::string& key, const std::string& other) {
    require(!seen.count(other), key, "conflicts with " + other + " (set exactly one)");
  };

  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no), "expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    require(!seen.count(key), key, "given more than once");
    seen.insert(key);

    if (key == "source.g") {
      exclusive(key, "source.mu");
      const double g = parse_double(key, value);
      require(g >= 0.0 && g < 1.0, key, "must lie in [0,1)");
      c.source_form = SourceForm::kGain;
      c.source_value = g;
    } else if (key == "source.mu") {
      exclusive(key, "source.g");
      const double mu = parse_double(key, value);
      require(mu >= 0.0, key, "must be >= 0");
      c.source_form = SourceForm::kMeanPhoton;
      c.source_value = mu;
    } else if (key == "channel.tau1" || key == "channel.tau2") {
      const int arm = key.back() - '0';
      exclusive(key, arm_key(arm, ArmForm::kLossDb));
      const double tau = parse_double(key, value);
      require(tau > 0.0 && tau <= 1.0, key, "must lie in (0,1]");
      (arm == 1 ? c.arm1_form : c.arm2_form) = ArmForm::kTransmittance;
      (arm == 1 ? c.arm1_value : c.arm2_value) = tau;
    } else if (key == "channel.loss1_db" || key == "channel.loss2_db") {
      const int arm = key[12] - '0';
      exclusive(key, arm_key(arm, ArmForm::kTransmittance));
      const double db = parse_double(key, value);
      require(db >= 0.0, key, "must be >= 0");
      (arm == 1 ? c.arm1_form : c.arm2_form) = ArmForm::kLossDb;
      (arm == 1 ? c.arm1_value : c.arm2_value) = db;
    } else if (key == "detector.dark_count") {
      const double d = parse_double(key, value);
      require(d >= 0.0 && d < 1.0, key, "must lie in [0,1)");
      c.dark_count = d;
    } else if (key == "angles.theta1_deg") {
      c.theta1_deg = parse_double(key, value);
    } else if (key == "angles.theta2_deg") {
      c.theta2_deg = parse_double(key, value);
    } else if (key.starts_with("sweep.")) {
      SweepSpec& s = c.sweep ? *c.sweep : c.sweep.emplace();
      if (key == "sweep.variable") {
        require(kSweepVariables.count(value) > 0, key,
                "must be one of theta_deg, g, mu, loss2_db");
        s.variable = std::string(value);
      } else if (key == "sweep.start") {
        s.start = parse_double(key, value);
      } else if (key == "sweep.stop") {
        s.stop = parse_double(key, value);
      } else if (key == "sweep.steps") {
        s.steps = parse_int(key, value);
        require(s.steps >= 1 && s.steps <= 100000, key, "must lie in [1,100000]");
      } else {
        throw ParseError(key, "unknown key");
      }
    } else if (key == "model") {
      const auto m = parse_model(value);
      require(m.has_value(), key, "must be squash or discard");
      c.model = *m;
    } else if (key == "oracle.n_max") {
      c.n_max = parse_int(key, value);
      require(c.n_max >= 0 && c.n_max <= 200, key, "must lie in [0,200]");
    } else if (key == "output.per_second") {
      c.per_second = parse_bool(key, value);
    } else if (key == "output.format") {
      if (value == "csv") {
        c.format = OutputFormat::kCsv;
      } else if (value == "text") {
        c.format = OutputFormat::kText;
      } else if (value == "auto") {
        c.format = OutputFormat::kAuto;
      } else {
        throw ParseError(key, "must be csv, text or auto");
      }
    } else if (key == "metadata.wavelength_nm") {
      c.wavelength_nm = parse_double(key, value);
      require(c.wavelength_nm > 0.0, key, "must be > 0");
    } else if (key == "metadata.window_ns") {
      c.window_ns = parse_double(key, value);
      require(c.window_ns > 0.0, key, "must be > 0");
    } else if (key == "metadata.coherence_time_ns") {
      c.coherence_time_ns = parse_double(key, value);
      require(c.coherence_time_ns > 0.0, key, "must be > 0");
    } else {
      throw ParseError(key, "unknown key");
    }
  }
  if (c.sweep) {
    require(!c.sweep->variable.empty(), "sweep.variable", "required when any sweep.* key is set");
  }
  return c;
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << form_key(c.source_form) << " = " << format_number(c.source_value) << "\n";
  out << arm_key(1, c.arm1_form) << " = " << format_number(c.arm1_value) << "\n";
  out << arm_key(2, c.arm2_form) << " = " << format_number(c.arm2_value) << "\n";
  out << "detector.dark_count = " << format_number(c.dark_count) << "\n";
  out << "angles.theta1_deg = " << format_number(c.theta1_deg) << "\n";
  out << "angles.theta2_deg = " << format_number(c.theta2_deg) << "\n";
  if (c.sweep) {
    out << "sweep.variable = " << c.sweep->variable << "\n";
    out << "sweep.start = " << format_number(c.sweep->start) << "\n";
    out << "sweep.stop = " << format_number(c.sweep->stop) << "\n";
    out << "sweep.steps = " << c.sweep->steps << "\n";
  }
  out << "model = " << to_string(c.model) << "\n";
  out << "oracle.n_max = " << c.n_max << "\n";
  out << "output.per_second = " << (c.per_second ? "true" : "false") << "\n";
  out << "output.format = " << format_name(c.format) << "\n";
  out << "metadata.wavelength_nm = " << format_number(c.wavelength_nm) << "\n";
  out << "metadata.window_ns = " << format_number(c.window_ns) << "\n";
  out << "metadata.coherence_time_ns = " << format_number(c.coherence_time_ns) << "\n";
  return out.str();
}

std::string run_subcommand(std::string_view name, const ScenarioConfig& config) {
  static const std::map<std::string, std::function<ResultTable(const ScenarioConfig&)>, std::less<>>
      kHandlers = {{"probs", run_probs},       {"chsh", run_chsh},   {"keyrate", run_keyrate},
                   {"optimize", run_optimize}, {"sweep", run_sweep}, {"oracle-check", run_oracle_check}};
  const auto it = kHandlers.find(name);
  if (it == kHandlers.end()) {
    throw ParseError("subcommand", "unknown subcommand '" + std::string(name) + "'");
  }
  return render(it->second(config), config.format);
}

}  // namespace hbepp
