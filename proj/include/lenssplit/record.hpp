#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lenssplit/types.hpp"

namespace lenssplit {

struct SeriesRow {
  std::size_t n = 0;
  double t = 0.0;
  double s = 0.0;
  double value = 0.0;
};

struct Snapshot {
  enum class Space { Physical, Lens };
  Space space = Space::Lens;
  std::size_t n = 0;
  double t = 0.0;
  double s = 0.0;
  std::vector<double> coords;  ///< x for Physical, y for Lens
  std::vector<cplx> values;    ///< u for Physical, the transformed unknown for Lens
};

/// Gradient blow-up detected between steps n and n + 1.
struct BlowUpMarker {
  std::size_t n = 0;
  double t_lo = 0.0, t_hi = 0.0;
  double s_lo = 0.0, s_hi = 0.0;
  double gradient = 0.0;   ///< ||d_y field|| at step n + 1
  double threshold = 0.0;
};

/// Everything one run produces: configuration echo, observable time series
/// (keyed by observable name), field snapshots and an optional blow-up marker.
struct ExperimentRecord {
  std::vector<std::pair<std::string, std::string>> meta;
  std::map<std::string, std::vector<SeriesRow>> series;
  std::vector<Snapshot> snapshots;
  std::optional<BlowUpMarker> blowup;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  const std::string* find_meta(const std::string& key) const {
    for (const auto& [k, v] : meta)
      if (k == key) return &v;
    return nullptr;
  }
};

}  // namespace lenssplit
