#include "sigverify/run_config.hpp"

#include <fstream>
#include <sstream>

#include "json_codec.hpp"
#include "sigverify/error.hpp"

namespace sigverify {

using detail::get_or;
using detail::json;
using detail::require_keys;

void RunConfig::validate() const {
  pipeline.validate();
  sweep.validate();
  protocol.validate();
}

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, "config: byte " + std::to_string(e.byte) + ": " + e.what());
  }
  require_keys(doc, {"preprocess", "lpq", "dwt", "ocsvm", "verifier", "protocol"}, "config");

  RunConfig cfg;
  PipelineConfig& p = cfg.pipeline;
  const json empty = json::object();
  auto section = [&](const char* name) -> const json& {
    const auto it = doc.find(name);
    return it == doc.end() ? empty : *it;
  };

  const json& pre = section("preprocess");
  require_keys(pre, {"sigma", "radius", "margin"}, "preprocess");
  p.preprocess.gaussian_sigma = get_or(pre, "sigma", p.preprocess.gaussian_sigma, "preprocess");
  p.preprocess.gaussian_radius = get_or(pre, "radius", p.preprocess.gaussian_radius, "preprocess");
  p.preprocess.crop_margin = get_or(pre, "margin", p.preprocess.crop_margin, "preprocess");

  const json& lpq = section("lpq");
  require_keys(lpq, {"window_size", "freq_a", "border_policy"}, "lpq");
  p.lpq.window_size = get_or(lpq, "window_size", p.lpq.window_size, "lpq");
  if (p.lpq.window_size <= 0) throw Error(ErrorCode::invalid_argument, "lpq.window_size must be positive");
  p.lpq.freq_a = get_or(lpq, "freq_a", 1.0 / p.lpq.window_size, "lpq");
  p.lpq.border_policy = detail::parse_border_policy(get_or<std::string>(lpq, "border_policy", "skip_border", "lpq"));

  const json& dwt = section("dwt");
  require_keys(dwt, {"levels", "canonical_size", "bins", "wavelet"}, "dwt");
  p.dwt.levels = get_or(dwt, "levels", p.dwt.levels, "dwt");
  if (const auto it = dwt.find("canonical_size"); it != dwt.end()) {
    if (it->is_number_unsigned()) {
      p.dwt.canonical_width = p.dwt.canonical_height = it->get<std::size_t>();
    } else if (it->is_array() && it->size() == 2 && (*it)[0].is_number_unsigned() && (*it)[1].is_number_unsigned()) {
      p.dwt.canonical_width = (*it)[0].get<std::size_t>();
      p.dwt.canonical_height = (*it)[1].get<std::size_t>();
    } else {
      detail::throw_type_error("dwt", "canonical_size");
    }
  }
  p.dwt.histogram_bins = get_or(dwt, "bins", p.dwt.histogram_bins, "dwt");
  p.wavelet = detail::parse_wavelet(get_or<std::string>(dwt, "wavelet", "haar", "dwt"));

  const json& svm = section("ocsvm");
  require_keys(svm,
               {"nu", "sigma", "lpq_nu", "dwt_nu", "lpq_sigma", "dwt_sigma", "tolerance", "max_iterations", "kernel",
                "degree", "coef", "scale"},
               "ocsvm");
  KernelParams kernel;
  kernel.kind = detail::parse_kernel_kind(get_or<std::string>(svm, "kernel", "rbf", "ocsvm"));
  kernel.sigma = get_or(svm, "sigma", kernel.sigma, "ocsvm");
  kernel.degree = get_or(svm, "degree", kernel.degree, "ocsvm");
  kernel.coef = get_or(svm, "coef", kernel.coef, "ocsvm");
  kernel.scale = get_or(svm, "scale", kernel.scale, "ocsvm");
  SolverConfig solver;
  solver.nu = get_or(svm, "nu", solver.nu, "ocsvm");
  solver.tolerance = get_or(svm, "tolerance", solver.tolerance, "ocsvm");
  solver.max_iterations = get_or(svm, "max_iterations", solver.max_iterations, "ocsvm");
  p.lpq_svm = {kernel, solver};
  p.dwt_svm = {kernel, solver};
  p.lpq_svm.kernel.sigma = get_or(svm, "lpq_sigma", kernel.sigma, "ocsvm");
  p.dwt_svm.kernel.sigma = get_or(svm, "dwt_sigma", kernel.sigma, "ocsvm");
  p.lpq_svm.solver.nu = get_or(svm, "lpq_nu", solver.nu, "ocsvm");
  p.dwt_svm.solver.nu = get_or(svm, "dwt_nu", solver.nu, "ocsvm");

  const json& ver = section("verifier");
  require_keys(ver, {"k", "k_min", "k_max", "steps", "threshold_stats"}, "verifier");
  if (const auto it = ver.find("k"); it != ver.end()) {
    if (it->is_number()) {
      cfg.k = it->get<double>();
    } else if (it->is_string() && it->get<std::string>() == "calibrate") {
      cfg.k.reset();
    } else {
      throw Error(ErrorCode::parse, "verifier.k must be a number or \"calibrate\"");
    }
  }
  cfg.sweep.k_min = get_or(ver, "k_min", cfg.sweep.k_min, "verifier");
  cfg.sweep.k_max = get_or(ver, "k_max", cfg.sweep.k_max, "verifier");
  cfg.sweep.steps = get_or(ver, "steps", cfg.sweep.steps, "verifier");
  p.threshold_stats =
      detail::parse_threshold_stats(get_or<std::string>(ver, "threshold_stats", "leave_one_out", "verifier"));

  const json& proto = section("protocol");
  require_keys(proto, {"n_genuine_train", "n_genuine_test", "n_forgery_test", "repeats", "seed"}, "protocol");
  ProtocolSpec& ps = cfg.protocol;
  ps.n_genuine_train = get_or(proto, "n_genuine_train", ps.n_genuine_train, "protocol");
  ps.n_genuine_test = get_or(proto, "n_genuine_test", ps.n_genuine_test, "protocol");
  ps.n_forgery_test = get_or(proto, "n_forgery_test", ps.n_forgery_test, "protocol");
  ps.repeats = get_or(proto, "repeats", ps.repeats, "protocol");
  ps.rng_seed = get_or(proto, "seed", ps.rng_seed, "protocol");

  cfg.validate();
  return cfg;
}

RunConfig read_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_run_config(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string dump_run_config(const RunConfig& cfg) {
  const PipelineConfig& p = cfg.pipeline;
  json doc;
  doc["preprocess"] = {{"sigma", p.preprocess.gaussian_sigma},
                       {"radius", p.preprocess.gaussian_radius},
                       {"margin", p.preprocess.crop_margin}};
  doc["lpq"] = {{"window_size", p.lpq.window_size},
                {"freq_a", p.lpq.freq_a},
                {"border_policy", detail::to_string(p.lpq.border_policy)}};
  doc["dwt"] = {{"levels", p.dwt.levels},
                {"canonical_size", {p.dwt.canonical_width, p.dwt.canonical_height}},
                {"bins", p.dwt.histogram_bins},
                {"wavelet", detail::to_string(p.wavelet)}};
  const KernelParams& k = p.lpq_svm.kernel;
  doc["ocsvm"] = {{"kernel", detail::to_string(k.kind)},
                  {"lpq_nu", p.lpq_svm.solver.nu},
                  {"dwt_nu", p.dwt_svm.solver.nu},
                  {"lpq_sigma", k.sigma},
                  {"dwt_sigma", p.dwt_svm.kernel.sigma},
                  {"degree", k.degree},
                  {"coef", k.coef},
                  {"scale", k.scale},
                  {"tolerance", p.lpq_svm.solver.tolerance},
                  {"max_iterations", p.lpq_svm.solver.max_iterations}};
  doc["verifier"] = {{"k", cfg.k ? json(*cfg.k) : json("calibrate")},
                     {"k_min", cfg.sweep.k_min},
                     {"k_max", cfg.sweep.k_max},
                     {"steps", cfg.sweep.steps},
                     {"threshold_stats", detail::to_string(p.threshold_stats)}};
  doc["protocol"] = {{"n_genuine_train", cfg.protocol.n_genuine_train},
                     {"n_genuine_test", cfg.protocol.n_genuine_test},
                     {"n_forgery_test", cfg.protocol.n_forgery_test},
                     {"repeats", cfg.protocol.repeats},
                     {"seed", cfg.protocol.rng_seed}};
  return doc.dump(2) + "\n";
}

}  // namespace sigverify
