#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ghartree/grid.hpp"
#include "ghartree/observables.hpp"

namespace ghartree {

/// CSV time series with the fixed observable schema. Throws on empty input
/// or I/O failure.
void write_timeseries(const std::vector<ObservableRecord>& records, int dim,
                      const std::filesystem::path& path);

/// Binary snapshot: magic "GHRT", version u32, N u32, n per axis (u32),
/// L per axis (f64), t (f64), then n^N little-endian complex128 values,
/// row-major.
void write_snapshot(const Field& field, const std::filesystem::path& path);
Field read_snapshot(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ghartree
