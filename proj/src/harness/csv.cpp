#include "lenssplit/harness/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <fstream>
#include <system_error>

#include "lenssplit/harness/config.hpp"

namespace lenssplit::harness {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec || !std::filesystem::is_directory(root_))
    throw IoError("cannot create output directory " + root_.string() + (ec ? ": " + ec.message() : ""));
}

void OutputDir::write_file(const std::string& name, const std::string& content) {
  const auto path = root_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("error writing " + path.string());
  files_.push_back(name);
}

void OutputDir::write_table(const std::string& name, const std::vector<std::string>& header,
                            const std::vector<std::vector<std::string>>& rows) {
  std::string text;
  const auto append_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text += ',';
      text += cells[i];
    }
    text += '\n';
  };
  append_row(header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument(name + ": row width differs from header");
    append_row(row);
  }
  write_file(name, text);
}

void OutputDir::write_record(const ExperimentRecord& record, std::size_t max_points) {
  for (const auto& [name, rows] : record.series) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& r : rows)
      cells.push_back({std::to_string(r.n), format_double(r.t), format_double(r.s), format_double(r.value)});
    write_table("series_" + name + ".csv", {"n", "t", "s", "value"}, cells);
  }

  if (!record.snapshots.empty()) {
    std::vector<std::vector<std::string>> index;
    std::size_t k = 0;
    for (const auto& snap : record.snapshots) {
      const bool lens = snap.space == Snapshot::Space::Lens;
      char id[16];
      std::snprintf(id, sizeof id, "%04zu", k);
      const std::string file = std::string("snapshot_") + id + (lens ? "_lens.csv" : "_physical.csv");
      const std::size_t count = snap.coords.size();
      const std::size_t stride = max_points ? std::max<std::size_t>(1, (count + max_points - 1) / max_points) : 1;
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < count; i += stride) {
        const cplx v = snap.values[i];
        rows.push_back({format_double(snap.coords[i]), format_double(v.real()), format_double(v.imag()),
                        format_double(std::abs(v))});
      }
      write_table(file, {"coord", "re", "im", "abs"}, rows);
      index.push_back({std::to_string(k), lens ? "lens" : "physical", std::to_string(snap.n), format_double(snap.t),
                       format_double(snap.s), file});
      if (!lens) ++k;
    }
    write_table("snapshots.csv", {"index", "space", "n", "t", "s", "file"}, index);
  }

  if (record.blowup) {
    const auto& b = *record.blowup;
    write_table("blowup.csv", {"n", "t_lo", "t_hi", "s_lo", "s_hi", "gradient", "threshold"},
                {{std::to_string(b.n), format_double(b.t_lo), format_double(b.t_hi), format_double(b.s_lo),
                  format_double(b.s_hi), format_double(b.gradient), format_double(b.threshold)}});
  }
}

void OutputDir::add_meta(const ExperimentRecord& record) {
  for (const auto& [k, v] : record.meta) add_meta(k, v);
}

void OutputDir::write_manifest() {
  std::string text;
  for (const auto& [k, v] : meta_) {
    std::string value = v;
    for (auto& c : value)
      if (c == '\n') c = ' ';
    text += k + " = " + value + "\n";
  }
  text += "\n[files]\n";
  for (const auto& f : files_) text += f + "\n";
  const auto path = root_ / "manifest.txt";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace lenssplit::harness
