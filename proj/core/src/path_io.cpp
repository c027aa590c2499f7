#include <bit>
#include <cstring>
#include <fstream>

#include "incexp/error.hpp"
#include "incexp/pathgen.hpp"

namespace incexp {

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xFFu) << (8 * (7 - i));
  return r;
}

void put_u64(std::ostream& os, std::uint64_t v) {
  const std::uint64_t le = to_little(v);
  os.write(reinterpret_cast<const char*>(&le), sizeof le);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t le = 0;
  if (!is.read(reinterpret_cast<char*>(&le), sizeof le)) throw InvalidParameter("path file truncated");
  return to_little(le);
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_path(const PathSample& path, const std::string& file) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw InvalidParameter("cannot open '" + file + "' for writing");
  put_u64(os, path.grid.n);
  put_f64(os, path.grid.T);
  put_u64(os, path.seed);
  put_u64(os, path.model_spec.size());
  os.write(path.model_spec.data(), static_cast<std::streamsize>(path.model_spec.size()));
  for (double v : path.values) put_f64(os, v);
  if (!os) throw InvalidParameter("failed writing '" + file + "'");
}

PathSample read_path(const std::string& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw InvalidParameter("cannot open '" + file + "'");
  PathSample p;
  p.grid.n = get_u64(is);
  p.grid.T = get_f64(is);
  p.grid.validate();
  p.seed = get_u64(is);
  const std::uint64_t len = get_u64(is);
  if (len > (1u << 20)) throw InvalidParameter("path file: implausible model spec length");
  p.model_spec.resize(len);
  if (!is.read(p.model_spec.data(), static_cast<std::streamsize>(len))) throw InvalidParameter("path file truncated");
  p.values.resize(p.grid.n + 1);
  for (auto& v : p.values) v = get_f64(is);
  return p;
}

}  // namespace incexp
