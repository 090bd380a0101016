#include "snowsim.h"

#include <exception>
#include <memory>
#include <string>

#include "snowsim/errors.hpp"
#include "snowsim/oracle.hpp"
#include "snowsim/runner.hpp"

// The C enum must track the library's error codes value for value.
static_assert(SNOWSIM_INVALID_ARGUMENT ==
              static_cast<int>(snowsim::ErrorCode::InvalidArgument));
static_assert(SNOWSIM_NO_SUCH_QUBIT ==
              static_cast<int>(snowsim::ErrorCode::NoSuchQubit));
static_assert(SNOWSIM_SELF_FUSION ==
              static_cast<int>(snowsim::ErrorCode::SelfFusion));
static_assert(SNOWSIM_EMPTY_INPUT ==
              static_cast<int>(snowsim::ErrorCode::EmptyInput));
static_assert(SNOWSIM_NOT_CONNECTED ==
              static_cast<int>(snowsim::ErrorCode::NotConnected));
static_assert(SNOWSIM_TIMEOUT == static_cast<int>(snowsim::ErrorCode::Timeout));
static_assert(SNOWSIM_INSUFFICIENT_PERIMETER ==
              static_cast<int>(snowsim::ErrorCode::InsufficientPerimeter));
static_assert(SNOWSIM_NO_FEASIBLE_SCHEDULE ==
              static_cast<int>(snowsim::ErrorCode::NoFeasibleSchedule));
static_assert(SNOWSIM_GRID_CAPPED ==
              static_cast<int>(snowsim::ErrorCode::GridCapped));
static_assert(SNOWSIM_NO_TRIALS ==
              static_cast<int>(snowsim::ErrorCode::NoTrials));
static_assert(SNOWSIM_INSUFFICIENT_DATA ==
              static_cast<int>(snowsim::ErrorCode::InsufficientData));
static_assert(SNOWSIM_INTERNAL ==
              static_cast<int>(snowsim::ErrorCode::Internal));

namespace {

thread_local std::string t_last_error;

int fail(int code, const char* message) {
  t_last_error = message;
  return code;
}

int fail(const snowsim::SimError& e) {
  t_last_error = e.what();
  return static_cast<int>(e.code());
}

int fail(const std::exception& e) {
  t_last_error = e.what();
  return SNOWSIM_INTERNAL;
}

}  // namespace

struct snowsim_run {
  snowsim::runner::ExperimentConfig config;
  snowsim::runner::RunResult result;
  bool executed = false;
};

extern "C" {

int snowsim_run_create(const char* config_text, snowsim_run** out) {
  if (!out) return fail(SNOWSIM_INVALID_ARGUMENT, "out must not be null");
  *out = nullptr;
  if (!config_text)
    return fail(SNOWSIM_INVALID_ARGUMENT, "config_text must not be null");
  try {
    auto run = std::make_unique<snowsim_run>();
    run->config = snowsim::runner::parse_config_text(config_text);
    *out = run.release();
    t_last_error.clear();
    return SNOWSIM_OK;
  } catch (const snowsim::SimError& e) {
    return fail(e);
  } catch (const std::exception& e) {
    return fail(e);
  }
}

int snowsim_run_execute(snowsim_run* run) {
  if (!run) return fail(SNOWSIM_INVALID_ARGUMENT, "run must not be null");
  if (run->executed) {
    t_last_error.clear();
    return SNOWSIM_OK;
  }
  try {
    run->result = snowsim::runner::run_experiment(run->config);
    run->executed = true;
    t_last_error.clear();
    return SNOWSIM_OK;
  } catch (const snowsim::SimError& e) {
    return fail(e);
  } catch (const std::exception& e) {
    return fail(e);
  }
}

const char* snowsim_run_trial_csv(const snowsim_run* run) {
  if (!run || !run->executed) return nullptr;
  return run->result.trial_csv.c_str();
}

const char* snowsim_run_summary_csv(const snowsim_run* run) {
  if (!run || !run->executed) return nullptr;
  return run->result.summary_csv.c_str();
}

const char* snowsim_run_svg(const snowsim_run* run) {
  if (!run || !run->executed || run->result.svg.empty()) return nullptr;
  return run->result.svg.c_str();
}

uint64_t snowsim_run_checks(const snowsim_run* run) {
  return run && run->executed ? run->result.checks : 0;
}

uint64_t snowsim_run_mismatches(const snowsim_run* run) {
  return run && run->executed ? run->result.mismatches : 0;
}

void snowsim_run_destroy(snowsim_run* run) { delete run; }

const char* snowsim_last_error(void) { return t_last_error.c_str(); }

int snowsim_verify_oracle(int32_t max_n, uint64_t* checks_out,
                          uint64_t* mismatches_out) {
  try {
    const auto sweep = snowsim::oracle::verify_measurement_rules(max_n);
    if (checks_out) *checks_out = sweep.checks;
    if (mismatches_out) *mismatches_out = sweep.mismatches;
    t_last_error.clear();
    return SNOWSIM_OK;
  } catch (const snowsim::SimError& e) {
    return fail(e);
  } catch (const std::exception& e) {
    return fail(e);
  }
}

}  // extern "C"
