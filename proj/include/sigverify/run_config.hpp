#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sigverify/evaluation.hpp"
#include "sigverify/pipeline.hpp"
#include "sigverify/verifier.hpp"

namespace sigverify {

/// Every tunable of a run in one document.
struct RunConfig {
  PipelineConfig pipeline;
  /// Empty means "calibrate".
  std::optional<double> k = kDefaultK;
  KSweep sweep;
  ProtocolSpec protocol;

  void validate() const;
};

/// Parses the JSON form. Missing keys keep their defaults; unknown keys are
/// rejected so that typos do not silently fall back to defaults.
/// `lpq.freq_a` defaults to 1 / `lpq.window_size`. `ocsvm.nu` and
/// `ocsvm.sigma` apply to both models unless `lpq_nu`, `dwt_nu`,
/// `lpq_sigma` or `dwt_sigma` override them.
RunConfig parse_run_config(const std::string& text);
RunConfig read_run_config(const std::filesystem::path& path);
std::string dump_run_config(const RunConfig& cfg);

}  // namespace sigverify
