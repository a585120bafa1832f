#pragma once

#include <string>
#include <vector>

#include "parabarrier/linalg.hpp"
#include "parabarrier/phi.hpp"

namespace parabarrier {

/// Node layout for the 2D solver: tensor grid on a box, or polar grid on an
/// annulus (i radial, j angular and periodic).
struct GridGeometry {
  enum class Kind { Box, Annulus };
  Kind kind = Kind::Box;
  int n1 = 2, n2 = 2;
  Vec lo{0.0, 0.0}, hi{1.0, 1.0};
  Vec center{0.0, 0.0};
  double inner = 0.0, outer = 1.0;

  static GridGeometry box(int nx, int ny, Vec lo, Vec hi);
  static GridGeometry annulus(int nr, int ntheta, Vec center, double inner, double outer);

  int nodes() const { return n1 * n2; }
  int idx(int i, int j) const { return i * n2 + j; }
  Vec position(int i, int j) const;
  bool is_boundary(int i, int j) const;
  double d1() const;  // dx, or dr
  double d2() const;  // dy, or dtheta
};

/// Space-time lattice of solution values. Level 0 is the initial slice; the
/// boundary mask nodes carry h exactly at every level.
struct GridField {
  GridGeometry geom;
  std::vector<std::vector<double>> levels;
  std::vector<double> times;
  std::vector<double> dt_history;

  int nt() const { return static_cast<int>(levels.size()); }
  double at(int lev, int i, int j) const { return levels[lev][geom.idx(i, j)]; }
  double& at(int lev, int i, int j) { return levels[lev][geom.idx(i, j)]; }
  const std::vector<double>& level(int lev) const { return levels[lev]; }

  /// "PBAR1" binary format: magic, geometry kind byte, dims, last dt, four
  /// geometry doubles, then row-major float64 values per level.
  void write_binary(const std::string& path) const;
  static GridField read_binary(const std::string& path);
  void write_slices_csv(const std::string& path) const;  // t,x,y,u rows
};

enum class TransformDirection { ToV, ToU };

/// Pointwise change of variables across the whole lattice: v = φ⁻¹(u) or
/// u = φ(v). Values outside the covered range raise NumericError listing the
/// offending node indices.
GridField transform_field(TransformDirection dir, const GridField& field,
                          const PhiSolution& phi);

}  // namespace parabarrier
