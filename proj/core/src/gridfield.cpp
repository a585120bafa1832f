#include "parabarrier/gridfield.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "parabarrier/errors.hpp"

namespace parabarrier {

GridGeometry GridGeometry::box(int nx, int ny, Vec lo, Vec hi) {
  if (nx < 3 || ny < 3) throw InputError("GridGeometry::box: need at least 3x3 nodes");
  if (!(lo[0] < hi[0] && lo[1] < hi[1])) throw InputError("GridGeometry::box: empty box");
  GridGeometry g;
  g.kind = Kind::Box;
  g.n1 = nx;
  g.n2 = ny;
  g.lo = std::move(lo);
  g.hi = std::move(hi);
  return g;
}

GridGeometry GridGeometry::annulus(int nr, int ntheta, Vec center, double inner,
                                   double outer) {
  if (nr < 3 || ntheta < 8)
    throw InputError("GridGeometry::annulus: need nr >= 3, ntheta >= 8");
  if (!(0.0 < inner && inner < outer))
    throw InputError("GridGeometry::annulus: require 0 < inner < outer");
  GridGeometry g;
  g.kind = Kind::Annulus;
  g.n1 = nr;
  g.n2 = ntheta;
  g.center = std::move(center);
  g.inner = inner;
  g.outer = outer;
  return g;
}

Vec GridGeometry::position(int i, int j) const {
  if (kind == Kind::Box) {
    return {lo[0] + (hi[0] - lo[0]) * i / (n1 - 1),
            lo[1] + (hi[1] - lo[1]) * j / (n2 - 1)};
  }
  double r = inner + (outer - inner) * i / (n1 - 1);
  double th = 2.0 * M_PI * j / n2;
  return {center[0] + r * std::cos(th), center[1] + r * std::sin(th)};
}

bool GridGeometry::is_boundary(int i, int j) const {
  if (kind == Kind::Box) return i == 0 || j == 0 || i == n1 - 1 || j == n2 - 1;
  return i == 0 || i == n1 - 1;  // θ is periodic
}

double GridGeometry::d1() const {
  if (kind == Kind::Box) return (hi[0] - lo[0]) / (n1 - 1);
  return (outer - inner) / (n1 - 1);
}

double GridGeometry::d2() const {
  if (kind == Kind::Box) return (hi[1] - lo[1]) / (n2 - 1);
  return 2.0 * M_PI / n2;
}

namespace {

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void GridField::write_binary(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("write_binary: cannot open " + path);
  os.write("PBAR1", 5);
  put<std::uint8_t>(os, geom.kind == GridGeometry::Kind::Box ? 0 : 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(geom.n1));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(geom.n2));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(levels.size()));
  put<double>(os, dt_history.empty() ? 0.0 : dt_history.back());
  if (geom.kind == GridGeometry::Kind::Box) {
    put<double>(os, geom.lo[0]);
    put<double>(os, geom.lo[1]);
    put<double>(os, geom.hi[0]);
    put<double>(os, geom.hi[1]);
  } else {
    put<double>(os, geom.center[0]);
    put<double>(os, geom.center[1]);
    put<double>(os, geom.inner);
    put<double>(os, geom.outer);
  }
  for (const auto& lev : levels)
    os.write(reinterpret_cast<const char*>(lev.data()),
             static_cast<std::streamsize>(lev.size() * sizeof(double)));
}

GridField GridField::read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("read_binary: cannot open " + path);
  char magic[5];
  is.read(magic, 5);
  if (std::memcmp(magic, "PBAR1", 5) != 0)
    throw InputError("read_binary: bad magic, not a PBAR1 file");
  std::uint8_t kind = get<std::uint8_t>(is);
  int n1 = static_cast<int>(get<std::uint32_t>(is));
  int n2 = static_cast<int>(get<std::uint32_t>(is));
  int nlev = static_cast<int>(get<std::uint32_t>(is));
  double dt = get<double>(is);
  double g0 = get<double>(is), g1 = get<double>(is), g2 = get<double>(is),
         g3 = get<double>(is);
  GridField f;
  f.geom = kind == 0 ? GridGeometry::box(n1, n2, {g0, g1}, {g2, g3})
                     : GridGeometry::annulus(n1, n2, {g0, g1}, g2, g3);
  f.levels.assign(nlev, std::vector<double>(static_cast<size_t>(n1) * n2));
  for (auto& lev : f.levels) {
    is.read(reinterpret_cast<char*>(lev.data()),
            static_cast<std::streamsize>(lev.size() * sizeof(double)));
    if (!is) throw InputError("read_binary: truncated file " + path);
  }
  f.times.resize(nlev);
  for (int m = 0; m < nlev; ++m) f.times[m] = m * dt;
  if (nlev > 1) f.dt_history.assign(nlev - 1, dt);
  return f;
}

void GridField::write_slices_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw InputError("write_slices_csv: cannot open " + path);
  os << "t,x,y,u\n";
  char buf[160];
  for (int m = 0; m < nt(); ++m) {
    for (int i = 0; i < geom.n1; ++i) {
      for (int j = 0; j < geom.n2; ++j) {
        Vec x = geom.position(i, j);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", times[m], x[0],
                      x[1], at(m, i, j));
        os << buf;
      }
    }
  }
}

GridField transform_field(TransformDirection dir, const GridField& field,
                          const PhiSolution& phi) {
  GridField out = field;
  std::vector<int> offending;
  for (int m = 0; m < field.nt(); ++m) {
    for (int i = 0; i < field.geom.n1; ++i) {
      for (int j = 0; j < field.geom.n2; ++j) {
        double v = field.at(m, i, j);
        bool ok = dir == TransformDirection::ToV
                      ? (v >= phi.range_lo() - 1e-9 && v <= phi.range_hi() + 1e-9)
                      : (v >= phi.tau_lo() - 1e-9 && v <= phi.tau_hi() + 1e-9);
        if (!ok) {
          if (offending.size() < 20)
            offending.push_back(m * field.geom.nodes() + field.geom.idx(i, j));
          continue;
        }
        out.at(m, i, j) =
            dir == TransformDirection::ToV ? phi.phi_inverse(v) : phi.phi(v);
      }
    }
  }
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "transform_field: " << offending.size()
        << "+ values outside the covered range at flat indices";
    for (int ix : offending) msg << ' ' << ix;
    throw NumericError(msg.str());
  }
  return out;
}

}  // namespace parabarrier
