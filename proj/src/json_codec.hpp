#pragma once

// JSON converters shared by the config and archive readers.

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "sigverify/pipeline.hpp"

namespace sigverify::detail {

using json = nlohmann::ordered_json;

/// Throws ErrorCode::parse naming `where` if `obj` is not an object or holds
/// a key outside `allowed`.
void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where);

[[noreturn]] void throw_type_error(const std::string& where, const char* key);

/// obj[key] converted to T, or `fallback` when absent. Type errors become
/// ErrorCode::parse naming `where.key`.
template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->template get<T>();
  } catch (const json::exception&) {
    throw_type_error(where, key);
  }
}

std::string to_string(KernelKind k);
std::string to_string(BorderPolicy p);
std::string to_string(WaveletFamily w);
std::string to_string(ThresholdStats t);
KernelKind parse_kernel_kind(const std::string& s);
BorderPolicy parse_border_policy(const std::string& s);
WaveletFamily parse_wavelet(const std::string& s);
ThresholdStats parse_threshold_stats(const std::string& s);

json kernel_to_json(const KernelParams& k);
KernelParams kernel_from_json(const json& j, const std::string& where);
json solver_to_json(const SolverConfig& s);
SolverConfig solver_from_json(const json& j, const std::string& where);

/// Complete, explicit form of a pipeline config (used in archives).
json pipeline_to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_from_json(const json& j, const std::string& where);

}  // namespace sigverify::detail
