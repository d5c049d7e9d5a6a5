#include "ghartree/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ghartree {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'G', 'H', 'R', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("snapshot truncated");
  return value;
}

}  // namespace

void write_timeseries(const std::vector<ObservableRecord>& records, int dim,
                      const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("no records to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << ObservableRecord::csv_header(dim) << "\n";
  for (const auto& r : records) out << r.csv_row(dim) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_snapshot(const Field& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(kMagic, 4);
  write_raw(out, kVersion);
  write_raw(out, static_cast<std::uint32_t>(field.grid.dim));
  for (int a = 0; a < field.grid.dim; ++a)
    write_raw(out, static_cast<std::uint32_t>(field.grid.npts[a]));
  for (int a = 0; a < field.grid.dim; ++a) write_raw(out, field.grid.length[a]);
  write_raw(out, field.time);
  out.write(reinterpret_cast<const char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(complexd)));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Field read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a GHRT snapshot: " + path.string());
  if (read_raw<std::uint32_t>(in) != kVersion)
    throw std::runtime_error("unsupported snapshot version");
  Field f;
  f.grid.dim = static_cast<int>(read_raw<std::uint32_t>(in));
  if (f.grid.dim < 1 || f.grid.dim > 3)
    throw std::runtime_error("invalid snapshot dimension");
  for (int a = 0; a < f.grid.dim; ++a)
    f.grid.npts[a] = static_cast<int>(read_raw<std::uint32_t>(in));
  for (int a = 0; a < f.grid.dim; ++a) f.grid.length[a] = read_raw<double>(in);
  f.time = read_raw<double>(in);
  f.values.resize(f.grid.size());
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(complexd)));
  if (!in) throw std::runtime_error("snapshot truncated: " + path.string());
  return f;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace ghartree
