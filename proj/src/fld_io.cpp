#include "spinlab/fld_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace spinlab {
namespace {

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  unsigned char buf[8];
  for (int b = 0; b < 8; ++b) buf[b] = static_cast<unsigned char>(bits >> (8 * b));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

double get_f64(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw FormatError("FLD1 payload truncated");
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void header(std::ostream& os, const char* kind, const Grid2D& g) {
  os << "FLD1 " << kind << ' ' << g.nx << ' ' << g.ny << ' ' << fmt_double(g.dx) << ' '
     << fmt_double(g.dy) << ' ' << fmt_double(g.x0) << ' ' << fmt_double(g.y0) << '\n';
}

}  // namespace

void write_fld(std::ostream& os, const ScalarField& f) {
  header(os, "real", f.grid());
  for (double v : f.values()) put_f64(os, v);
}

void write_fld(std::ostream& os, const CplxField& f) {
  header(os, "cplx", f.grid());
  for (const cplx& v : f.values()) put_f64(os, v.real()), put_f64(os, v.imag());
}

void write_fld(std::ostream& os, const Vec3Field& f) {
  header(os, "vec3", f.grid());
  for (const Vec3& v : f.values()) put_f64(os, v.x()), put_f64(os, v.y()), put_f64(os, v.z());
}

AnyField read_fld(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing FLD1 header");
  std::istringstream hs(line);
  std::string magic, kind;
  Grid2D g;
  if (!(hs >> magic >> kind >> g.nx >> g.ny >> g.dx >> g.dy >> g.x0 >> g.y0) || magic != "FLD1")
    throw FormatError("malformed FLD1 header: " + line);
  g.validate();
  if (kind == "real") {
    ScalarField f(g);
    for (auto& v : f.values()) v = get_f64(is);
    return f;
  }
  if (kind == "cplx") {
    CplxField f(g);
    for (auto& v : f.values()) {
      const double re = get_f64(is);
      v = cplx(re, get_f64(is));
    }
    return f;
  }
  if (kind == "vec3") {
    Vec3Field f(g);
    for (auto& v : f.values()) {
      const double a = get_f64(is), b = get_f64(is);
      v = Vec3(a, b, get_f64(is));
    }
    return f;
  }
  throw FormatError("unknown FLD1 kind '" + kind + "'");
}

template <class T>
void write_fld_file(const std::string& path, const Field<T>& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  write_fld(os, f);
  if (!os) throw FormatError("write failed for " + path);
}

template void write_fld_file<double>(const std::string&, const ScalarField&);
template void write_fld_file<cplx>(const std::string&, const CplxField&);
template void write_fld_file<Vec3>(const std::string&, const Vec3Field&);

AnyField read_fld_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path);
  return read_fld(is);
}

}  // namespace spinlab
