#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sigverify/verifier.hpp"

namespace sigverify {

inline constexpr int kArchiveFormatVersion = 1;

struct ProfileArchive {
  int format_version = kArchiveFormatVersion;
  /// ISO-8601 UTC. Left empty unless the caller sets it, so that repeated
  /// runs produce identical files.
  std::optional<std::string> timestamp;
  std::string corpus_id;
  double k = kDefaultK;
  std::vector<WriterProfile> profiles;

  const WriterProfile& find(const std::string& writer_id) const;
};

/// Timestamp taken from SOURCE_DATE_EPOCH when set, otherwise empty.
std::optional<std::string> archive_timestamp_from_env();

std::string dump_archive(const ProfileArchive& archive);
/// Unknown keys are ignored. A format_version above the supported one
/// raises ErrorCode::unsupported_version; malformed JSON raises
/// ErrorCode::parse with the byte offset.
ProfileArchive parse_archive(const std::string& text);

void save_profiles(const ProfileArchive& archive, const std::filesystem::path& path);
ProfileArchive load_profiles(const std::filesystem::path& path);

}  // namespace sigverify
