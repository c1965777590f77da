#ifndef DISLO_INTERP_HPP_
#define DISLO_INTERP_HPP_

#include <span>

#include "dislo/field.hpp"

namespace dislo {

// Trilinear interpolation of all components at a chart point; throws with
// the offending point if it leaves the grid.
void sample_field(const Field& f, const Vec3& y, std::span<double> out);

Mat3 sample_mat(const Field& f, const Vec3& y);
Vec3 sample_vec(const Field& f, const Vec3& y);

}  // namespace dislo

#endif  // DISLO_INTERP_HPP_
