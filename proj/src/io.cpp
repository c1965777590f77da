#include "dislo/io.hpp"

#include <cstdio>
#include <fstream>

#include "dislo/error.hpp"

namespace dislo {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep LF endings
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_vtk(const std::string& path, const Field& f, const std::string& name) {
  const GridSpec& g = f.grid();
  std::ofstream out = open_out(path);
  out << "# vtk DataFile Version 3.0\n"
      << name << "\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << g.dims[0] << " " << g.dims[1] << " " << g.dims[2]
      << "\n"
      << "ORIGIN " << format_g17(g.origin[0]) << " " << format_g17(g.origin[1])
      << " " << format_g17(g.origin[2]) << "\n"
      << "SPACING " << format_g17(g.spacing[0]) << " "
      << format_g17(g.spacing[1]) << " " << format_g17(g.spacing[2]) << "\n"
      << "POINT_DATA " << g.node_count() << "\n"
      << "FIELD FieldData 1\n"
      << name << " " << f.ncomp() << " " << g.node_count() << " double\n";
  // VTK structured points vary x fastest.
  for (int k = 0; k < g.dims[2]; ++k)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int i = 0; i < g.dims[0]; ++i) {
        const double* p = f.node(g.index(i, j, k));
        for (int c = 0; c < f.ncomp(); ++c) {
          out << format_g17(p[c]);
          out << (c + 1 == f.ncomp() ? '\n' : ' ');
        }
      }
  if (!out) throw Error("write failed for '" + path + "'");
}

void write_field_csv(const std::string& path, const Field& f) {
  const GridSpec& g = f.grid();
  std::ofstream out = open_out(path);
  out << "node,y1,y2,y3";
  for (int c = 0; c < f.ncomp(); ++c) out << ",c" << c;
  out << "\n";
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Vec3 y = g.coord(g.unindex(n));
    out << n << "," << format_g17(y[0]) << "," << format_g17(y[1]) << ","
        << format_g17(y[2]);
    const double* p = f.node(n);
    for (int c = 0; c < f.ncomp(); ++c) out << "," << format_g17(p[c]);
    out << "\n";
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace dislo
