#ifndef DISLO_IO_HPP_
#define DISLO_IO_HPP_

#include <string>

#include "dislo/field.hpp"

namespace dislo {

// Legacy ASCII VTK structured-points dump, one field per file.
// 17 significant digits, '.' decimal separator, LF line endings.
void write_vtk(const std::string& path, const Field& f, const std::string& name);

// Flat CSV: node index, chart coordinates, components. Same formatting rules.
void write_field_csv(const std::string& path, const Field& f);

// %.17g with a locale-independent decimal point.
std::string format_g17(double v);

}  // namespace dislo

#endif  // DISLO_IO_HPP_
