#include "diraclab/spectral/sample_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "diraclab/errors.hpp"

namespace dlab::spectral {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary sample files assume a little-endian host");

void validate(const NodalSamples& s, const std::string& where) {
  if (s.n_theta < 1 || s.n_phi < 1)
    throw ParseError(where + ": node counts must be positive");
  if (s.values.size() != static_cast<std::size_t>(s.n_theta) * s.n_phi)
    throw ParseError(where + ": expected " + std::to_string(s.n_theta * s.n_phi) +
                     " values, found " + std::to_string(s.values.size()));
}

NodalSamples read_text(std::istream& in, const std::string& where) {
  NodalSamples s;
  bool have_L = false, have_t = false, have_p = false;
  std::string line;
  while ((!have_L || !have_t || !have_p) && std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    int value = 0;
    if (!(ls >> key >> value)) throw ParseError(where + ": malformed header line '" + line + "'");
    if (key == "L") s.L = value, have_L = true;
    else if (key == "n_theta") s.n_theta = value, have_t = true;
    else if (key == "n_phi") s.n_phi = value, have_p = true;
    else throw ParseError(where + ": unknown header key '" + key + "'");
  }
  if (!have_L || !have_t || !have_p) throw ParseError(where + ": incomplete header");
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::getline(in, line);
      continue;
    }
    try {
      s.values.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ParseError(where + ": bad value '" + tok + "'");
    }
  }
  validate(s, where);
  return s;
}

}  // namespace

NodalSamples read_nodal_samples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() == 4 && std::memcmp(magic, "DLCF", 4) == 0) {
    std::int32_t header[3];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in) throw ParseError(path.string() + ": truncated binary header");
    NodalSamples s{header[0], header[1], header[2], {}};
    if (s.n_theta < 1 || s.n_phi < 1) throw ParseError(path.string() + ": bad node counts");
    s.values.resize(static_cast<std::size_t>(s.n_theta) * s.n_phi);
    in.read(reinterpret_cast<char*>(s.values.data()),
            static_cast<std::streamsize>(s.values.size() * sizeof(double)));
    if (!in) throw ParseError(path.string() + ": truncated binary payload");
    return s;
  }
  in.clear();
  in.seekg(0);
  return read_text(in, path.string());
}

void write_nodal_samples(const std::filesystem::path& path, const NodalSamples& s,
                         bool binary) {
  validate(s, path.string());
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot write " + path.string());
  if (binary) {
    const std::int32_t header[3] = {s.L, s.n_theta, s.n_phi};
    out.write("DLCF", 4);
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    out.write(reinterpret_cast<const char*>(s.values.data()),
              static_cast<std::streamsize>(s.values.size() * sizeof(double)));
  } else {
    out << "# conformal exponent u, Gauss-Legendre x uniform azimuth, cos(theta)-major\n";
    out << "L " << s.L << "\nn_theta " << s.n_theta << "\nn_phi " << s.n_phi << "\n";
    out << std::setprecision(17);
    for (int i = 0; i < s.n_theta; ++i) {
      for (int p = 0; p < s.n_phi; ++p) out << (p ? " " : "") << s.values[i * s.n_phi + p];
      out << "\n";
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace dlab::spectral
