#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lenssplit/record.hpp"

namespace lenssplit::harness {

/// Shortest decimal that reads back to the same double.
std::string format_double(double value);

/// Collects the files of one output directory and writes manifest.txt last.
/// All failures surface as IoError.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Writes a CSV file with the given header and rows of preformatted cells.
  void write_table(const std::string& name, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

  /// series_<observable>.csv (n,t,s,value), snapshots.csv index plus one
  /// snapshot_<k>_<lens|physical>.csv (coord,re,im,abs) per snapshot, and
  /// blowup.csv when a marker is present. Snapshots are thinned to at most
  /// max_points rows by a constant stride.
  void write_record(const ExperimentRecord& record, std::size_t max_points);

  void add_meta(std::string key, std::string value) { meta_.emplace_back(std::move(key), std::move(value)); }
  void add_meta(const ExperimentRecord& record);

  /// manifest.txt: "key = value" lines followed by the list of files written.
  void write_manifest();

  const std::vector<std::string>& files() const noexcept { return files_; }

 private:
  void write_file(const std::string& name, const std::string& content);

  std::filesystem::path root_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> files_;
};

}  // namespace lenssplit::harness
