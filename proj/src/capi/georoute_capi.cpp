#include "georoute/georoute.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "harness.hpp"
#include "output.hpp"

struct geo_world {
  georoute::World world;
};

struct geo_report {
  georoute::SweepReport report;
};

struct geo_trace {
  georoute::World world;
  georoute::TrialOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

geo_status fail(geo_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

/// Runs `fn`, mapping exceptions onto status codes.
template <typename Fn>
geo_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::bad_alloc&) {
    return fail(GEO_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::logic_error& e) {  // bad configuration or input
    return fail(GEO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const georoute::WorldError& e) {
    return fail(GEO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(GEO_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(GEO_ERR_RUNTIME, "unknown error");
  }
}

geo_status copy_out(const std::string& text, char* buf, std::size_t cap, std::size_t* needed) {
  if (!needed) return fail(GEO_ERR_INVALID_ARGUMENT, "needed must not be null");
  *needed = text.size();
  if (!buf || cap < text.size() + 1) {
    return fail(GEO_ERR_BUFFER_TOO_SMALL, "buffer too small: need " + std::to_string(text.size() + 1) + " bytes");
  }
  std::memcpy(buf, text.data(), text.size());
  buf[text.size()] = '\0';
  return GEO_OK;
}

void init_params(geo_params* p) {
  const georoute::RoutingParams defaults;
  p->beta = defaults.beta;
  p->epsilon = defaults.epsilon;
  p->contour_clamped = 0;
  p->disable_out_of_bounds = 0;
  p->ltp_backtrack_budget = georoute::ExperimentConfig{}.ltp_backtrack_budget;
}

void apply_params(const geo_params& p, georoute::ExperimentConfig& c) {
  c.params.beta = p.beta;
  c.params.epsilon = p.epsilon;
  c.params.contour_turn = p.contour_clamped ? georoute::ContourTurn::Clamped : georoute::ContourTurn::Scaled;
  c.disable_out_of_bounds = p.disable_out_of_bounds != 0;
  c.ltp_backtrack_budget = p.ltp_backtrack_budget;
}

const char* require_name(const char* s, const char* what) {
  if (!s) throw std::invalid_argument(std::string(what) + " must not be null");
  return s;
}

}  // namespace

extern "C" {

const char* geo_version(void) { return "1.0.0"; }

const char* geo_last_error(void) { return g_last_error.c_str(); }

void geo_sweep_config_init(geo_sweep_config* config) {
  if (!config) return;
  *config = geo_sweep_config{};
  config->algorithm = "gric+";
  config->obstacle = "none";
  config->trials_per_point = georoute::ExperimentConfig{}.trials_per_point;
  config->workers = 1;
  init_params(&config->params);
}

geo_status geo_sweep_run(const geo_sweep_config* config, geo_report** out) {
  if (!config || !out) return fail(GEO_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (config->density_count > 0 && !config->densities) return fail(GEO_ERR_INVALID_ARGUMENT, "densities is null");
  return guarded([&] {
    georoute::ExperimentConfig c;
    c.obstacle = georoute::parse_obstacle(require_name(config->obstacle, "obstacle"));
    c.densities.assign(config->densities, config->densities + config->density_count);
    c.trials_per_point = config->trials_per_point;
    c.master_seed = config->master_seed;
    c.workers = config->workers;
    apply_params(config->params, c);

    const std::string name = require_name(config->algorithm, "algorithm");
    std::vector<georoute::Algorithm> algos;
    if (name == "all") {
      algos.assign(std::begin(georoute::kAllAlgorithms), std::end(georoute::kAllAlgorithms));
    } else {
      algos.push_back(georoute::parse_algorithm(name));
    }
    c.algorithm = algos.front();
    auto report = std::make_unique<geo_report>(geo_report{georoute::run_sweep(c, algos)});
    *out = report.release();
    return GEO_OK;
  });
}

size_t geo_report_row_count(const geo_report* report) { return report ? report->report.rows.size() : 0; }

geo_status geo_report_get_row(const geo_report* report, size_t index, geo_report_row* out) {
  if (!report || !out) return fail(GEO_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.rows.size()) return fail(GEO_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = report->report.rows[index];
  *out = geo_report_row{georoute::to_string(r.algorithm),
                        georoute::to_string(r.obstacle),
                        r.density,
                        r.trials,
                        r.successes,
                        r.success_rate,
                        r.median_hops,
                        r.median_distance,
                        r.fail_ttl,
                        r.fail_oob,
                        r.fail_stuck,
                        r.fail_no_nodes};
  return GEO_OK;
}

geo_status geo_report_csv(const geo_report* report, char* buf, size_t cap, size_t* needed) {
  if (!report) return fail(GEO_ERR_INVALID_ARGUMENT, "null report");
  return guarded([&] {
    std::ostringstream os;
    georoute::write_csv(os, report->report);
    return copy_out(os.str(), buf, cap, needed);
  });
}

void geo_report_free(geo_report* report) { delete report; }

geo_status geo_world_create(double density, const char* obstacle, uint64_t master_seed, size_t trial_index,
                            geo_world** out) {
  if (!out) return fail(GEO_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    georoute::ExperimentConfig c;
    c.obstacle = georoute::parse_obstacle(require_name(obstacle, "obstacle"));
    c.master_seed = master_seed;
    if (!(density >= 0.0) || !std::isfinite(density)) throw std::invalid_argument("density must be finite and >= 0");
    auto w = std::make_unique<geo_world>(geo_world{georoute::build_trial_world(c, density, trial_index)});
    *out = w.release();
    return GEO_OK;
  });
}

geo_status geo_world_get_stats(const geo_world* world, geo_world_stats* out) {
  if (!world || !out) return fail(GEO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto s = georoute::compute_stats(world->world);
    *out = geo_world_stats{s.nodes,          s.links,         s.mean_degree,
                           s.interior_mean_degree, s.interior_nodes, s.gabriel_edges,
                           s.gabriel_planar ? 1 : 0, s.components};
    return GEO_OK;
  });
}

geo_status geo_world_dump(const geo_world* world, char* buf, size_t cap, size_t* needed) {
  if (!world) return fail(GEO_ERR_INVALID_ARGUMENT, "null world");
  return guarded([&] {
    std::ostringstream os;
    georoute::write_world(os, world->world);
    return copy_out(os.str(), buf, cap, needed);
  });
}

void geo_world_free(geo_world* world) { delete world; }

void geo_trace_config_init(geo_trace_config* config) {
  if (!config) return;
  *config = geo_trace_config{};
  config->algorithm = "gric-";
  config->obstacle = "none";
  config->density = 6.0;
  init_params(&config->params);
}

geo_status geo_trace_run(const geo_trace_config* config, geo_trace** out) {
  if (!config || !out) return fail(GEO_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    georoute::ExperimentConfig c;
    c.algorithm = georoute::parse_algorithm(require_name(config->algorithm, "algorithm"));
    c.obstacle = georoute::parse_obstacle(require_name(config->obstacle, "obstacle"));
    c.master_seed = config->master_seed;
    c.densities = {config->density};
    apply_params(config->params, c);
    c.validate();
    georoute::World world = georoute::build_trial_world(c, config->density, config->trial_index);
    auto outcome = georoute::run_trial(c, world, config->density, config->trial_index, true);
    auto t = std::make_unique<geo_trace>(geo_trace{std::move(world), std::move(outcome)});
    *out = t.release();
    return GEO_OK;
  });
}

geo_status geo_trace_get_info(const geo_trace* trace, geo_trace_info* out) {
  if (!trace || !out) return fail(GEO_ERR_INVALID_ARGUMENT, "null argument");
  const auto& o = trace->outcome;
  *out = geo_trace_info{georoute::to_string(o.status), o.status == georoute::TrialStatus::Success ? 1 : 0, o.hops,
                        o.distance, o.path.size()};
  return GEO_OK;
}

geo_status geo_trace_svg(const geo_trace* trace, char* buf, size_t cap, size_t* needed) {
  if (!trace) return fail(GEO_ERR_INVALID_ARGUMENT, "null trace");
  return guarded([&] {
    std::ostringstream os;
    georoute::write_trace_svg(os, trace->world, trace->outcome, georoute::kSourcePoint,
                              georoute::kDestinationPoint);
    return copy_out(os.str(), buf, cap, needed);
  });
}

geo_status geo_trace_csv(const geo_trace* trace, char* buf, size_t cap, size_t* needed) {
  if (!trace) return fail(GEO_ERR_INVALID_ARGUMENT, "null trace");
  return guarded([&] {
    std::ostringstream os;
    georoute::write_trace_csv(os, trace->outcome);
    return copy_out(os.str(), buf, cap, needed);
  });
}

void geo_trace_free(geo_trace* trace) { delete trace; }

}  // extern "C"
