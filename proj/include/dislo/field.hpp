#ifndef DISLO_FIELD_HPP_
#define DISLO_FIELD_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "dislo/grid.hpp"
#include "dislo/linalg3.hpp"

namespace dislo {

// Variance of a body-space index slot.
enum class Slot : std::uint8_t { kBodyCov, kBodyContra };

// Index bookkeeping for double-space fields: the ordered body slots plus an
// optional contravariant Burgers-space index. Burgers indices are never acted
// on by the body metric or the connection.
struct Signature {
  std::vector<Slot> body;
  int burgers = 0;  // 0 or 1 in this engine

  int rank() const { return burgers + static_cast<int>(body.size()); }
  int ncomp() const {
    int n = 1;
    for (int r = 0; r < rank(); ++r) n *= 3;
    return n;
  }
  bool operator==(const Signature&) const = default;

  static Signature scalar() { return {{}, 0}; }
  static Signature body_vector() { return {{Slot::kBodyContra}, 0}; }
  static Signature body_covector() { return {{Slot::kBodyCov}, 0}; }
  static Signature body_cov2() { return {{Slot::kBodyCov, Slot::kBodyCov}, 0}; }
  static Signature body_mixed() { return {{Slot::kBodyContra, Slot::kBodyCov}, 0}; }
  static Signature burgers_vector() { return {{}, 1}; }
  // T-hat, rho, j, grad w: one Burgers index plus one covariant body index.
  static Signature distortion() { return {{Slot::kBodyCov}, 1}; }
  // S-hat: contravariant body index; the (covariant) Burgers index is tracked
  // through the burgers count like every other Burgers slot.
  static Signature inverse_distortion() { return {{Slot::kBodyContra}, 1}; }
};

// Grid-sampled tensor field. Component layout per node is row-major over the
// index tuple with the Burgers index slowest, nodes major.
class Field {
 public:
  Field() = default;
  Field(Signature sig, GridSpec grid)
      : sig_(std::move(sig)), grid_(grid),
        data_(grid_.node_count() * sig_.ncomp(), 0.0) {}

  const Signature& sig() const { return sig_; }
  const GridSpec& grid() const { return grid_; }
  int ncomp() const { return sig_.ncomp(); }
  std::size_t node_count() const { return grid_.node_count(); }

  double* node(std::size_t n) { return data_.data() + n * sig_.ncomp(); }
  const double* node(std::size_t n) const {
    return data_.data() + n * sig_.ncomp();
  }
  double& at(std::size_t n, int c) { return data_[n * sig_.ncomp() + c]; }
  double at(std::size_t n, int c) const { return data_[n * sig_.ncomp() + c]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  // Rank-2 view: first index is row (for T-hat the Burgers index).
  Mat3 mat(std::size_t n) const {
    const double* p = node(n);
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m.a[r][c] = p[3 * r + c];
    return m;
  }
  void set_mat(std::size_t n, const Mat3& m) {
    double* p = node(n);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) p[3 * r + c] = m.a[r][c];
  }

  Vec3 vec(std::size_t n) const {
    const double* p = node(n);
    return {p[0], p[1], p[2]};
  }
  void set_vec(std::size_t n, const Vec3& v) {
    double* p = node(n);
    p[0] = v[0];
    p[1] = v[1];
    p[2] = v[2];
  }

  // Fails loudly on the first non-finite value, naming the node.
  void check_finite(const char* what) const;

 private:
  Signature sig_;
  GridSpec grid_{{4, 4, 4}, {0, 0, 0}, {1, 1, 1}};
  std::vector<double> data_;
};

struct Norms {
  double l2 = 0.0;   // root mean square over nodes and components
  double max = 0.0;  // max-abs
};

// Discrete norms over the interior shrunk by `shrink` cells per face.
Norms field_norms(const Field& f, int shrink = 2);

}  // namespace dislo

#endif  // DISLO_FIELD_HPP_
