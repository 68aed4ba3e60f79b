#pragma once

// One file per experiment, `<dir>/<id>.hctps.jsonl`:
//   line 1      header  {"schema": ..., experiment fields, "status": ...}
//   line 2..n   one phase per line, in phase order
//   last line   {"checksum": "fnv1a64:<hex>", "lines": n}
// The checksum covers every byte before the checksum line. Files are replaced
// atomically (write to a temporary, then rename) on every commit.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hctps/error.hpp"
#include "hctps/experiment.hpp"
#include "hctps/json_io.hpp"

namespace hctps {

inline constexpr std::string_view kRecordSchema = "hctps-experiment/1";
inline constexpr std::string_view kRecordExtension = ".hctps.jsonl";

inline std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xFU];
    v >>= 4U;
  }
  return out;
}

inline std::string persist(const ExperimentRecord& record) {
  std::string body;
  json header = record_header_json(record);
  header["schema"] = kRecordSchema;
  body += header.dump();
  body += '\n';
  for (std::size_t i = 0; i < record.phases.size(); ++i) {
    json phase = record.phases[i];
    phase["phase_index"] = i;
    body += phase.dump();
    body += '\n';
  }
  const json trailer = {{"checksum", "fnv1a64:" + hex64(fnv1a64(body))}, {"lines", record.phases.size() + 1}};
  body += trailer.dump();
  body += '\n';
  return body;
}

inline ExperimentRecord load(std::string_view stored) {
  auto corrupt = [](const std::string& why) { return Error(ErrorKind::CorruptRecord, why); };

  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < stored.size()) {
    const std::size_t nl = stored.find('\n', pos);
    if (nl == std::string_view::npos) throw corrupt("record does not end with a newline");
    lines.push_back(stored.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.size() < 2) throw corrupt("record is truncated");

  const std::string_view body = stored.substr(0, stored.size() - lines.back().size() - 1);
  json trailer;
  try {
    trailer = json::parse(lines.back());
  } catch (const json::exception&) {
    throw corrupt("missing checksum line");
  }
  if (!trailer.is_object() || !trailer.contains("checksum")) throw corrupt("missing checksum line");
  if (trailer.at("checksum") != "fnv1a64:" + hex64(fnv1a64(body))) throw corrupt("checksum mismatch");
  if (trailer.value("lines", std::size_t{0}) != lines.size() - 1) throw corrupt("line count mismatch");

  ExperimentRecord record;
  try {
    const json header = json::parse(lines.front());
    if (header.value("schema", std::string{}) != kRecordSchema) throw corrupt("unsupported schema version");
    apply_record_header(header, record);
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
      const json phase = json::parse(lines[i]);
      if (phase.at("phase_index").get<std::size_t>() != i - 1) throw corrupt("phases out of order");
      record.phases.push_back(phase.get<PhaseResult>());
    }
  } catch (const json::exception& e) {
    throw corrupt(std::string("malformed record: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CorruptRecord) throw;
    throw corrupt(e.what());
  }
  return record;
}

inline bool valid_experiment_id(std::string_view id) {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
           c == '.';
  });
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorKind::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename onto " + path.string() + ": " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Directory of experiment files.
class ExperimentStore {
 public:
  explicit ExperimentStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + dir_.string() + ": " + ec.message());
  }

  [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }

  [[nodiscard]] std::filesystem::path path_for(std::string_view id) const {
    if (!valid_experiment_id(id)) throw Error(ErrorKind::InvalidConfig, "invalid experiment id '" + std::string(id) + "'");
    return dir_ / (std::string(id) + std::string(kRecordExtension));
  }

  void save(const ExperimentRecord& record) const { write_file_atomic(path_for(record.experiment_id), persist(record)); }

  [[nodiscard]] bool exists(std::string_view id) const { return std::filesystem::exists(path_for(id)); }

  [[nodiscard]] ExperimentRecord load_record(std::string_view id) const {
    const auto path = path_for(id);
    if (!std::filesystem::exists(path)) throw Error(ErrorKind::UnknownExperiment, std::string(id));
    return load(read_file(path));
  }

  [[nodiscard]] std::vector<std::string> list_ids() const {
    std::vector<std::string> ids;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > kRecordExtension.size() && name.ends_with(kRecordExtension)) {
        ids.push_back(name.substr(0, name.size() - kRecordExtension.size()));
      }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace hctps
