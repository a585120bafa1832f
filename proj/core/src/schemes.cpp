#include "parabarrier/schemes.hpp"

#include <cmath>

#include "parabarrier/errors.hpp"

namespace parabarrier {

namespace {

constexpr double kEpsReg = 1e-12;  // |∇u| regularization in the plap coefficient

std::vector<double> name_params(const std::string& name) {
  std::vector<double> out;
  size_t paren = name.find('(');
  if (paren == std::string::npos) return out;
  size_t close = name.find(')', paren);
  std::string inner = name.substr(paren + 1, close - paren - 1);
  size_t pos = 0;
  while (pos < inner.size()) {
    size_t comma = inner.find(',', pos);
    out.push_back(std::stod(inner.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

SchemeKey scheme_from_key(const std::string& key) {
  if (key == "inf") return SchemeKey::Inf;
  if (key == "plap") return SchemeKey::PLap;
  if (key == "pucci") return SchemeKey::Pucci;
  throw InputError("unknown scheme key: " + key);
}

std::string to_string(SchemeKey k) {
  switch (k) {
    case SchemeKey::Inf: return "inf";
    case SchemeKey::PLap: return "plap";
    case SchemeKey::Pucci: return "pucci";
  }
  return "?";
}

SchemeContext make_scheme_context(SchemeKey scheme, const Operator& op) {
  SchemeContext ctx;
  ctx.key = scheme;
  std::string base = op.name.substr(0, op.name.find('('));
  std::vector<double> ps = name_params(op.name);
  switch (scheme) {
    case SchemeKey::Inf:
      if (base != "inf_laplacian")
        throw InapplicableError("scheme inf requires the inf_laplacian operator, got " +
                                op.name);
      break;
    case SchemeKey::PLap: {
      if (base != "p_laplacian_variant" || ps.size() != 2)
        throw InapplicableError("scheme plap requires p_laplacian_variant(q,a), got " +
                                op.name);
      if (std::abs(ps[0] - ps[1]) > 1e-12)
        throw InapplicableError(
            "scheme plap covers the divergence form div(|Du|^q Du) only (a == q)");
      ctx.q = ps[0];
      break;
    }
    case SchemeKey::Pucci: {
      if ((base != "pucci_plus" && base != "pucci_minus") || ps.size() != 3)
        throw InapplicableError("scheme pucci requires pucci_{plus,minus}, got " +
                                op.name);
      ctx.theta = ps[0];
      ctx.vartheta = ps[1];
      ctx.q = ps[2];
      ctx.pucci_plus = base == "pucci_plus";
      break;
    }
  }
  return ctx;
}

namespace {

struct Stencil {
  // values and geometry around node (i,j); annulus wraps j periodically
  const GridGeometry& g;
  const std::vector<double>& u;
  int i, j;
  double val(int di, int dj) const {
    int jj = j + dj;
    if (g.kind == GridGeometry::Kind::Annulus) jj = (jj % g.n2 + g.n2) % g.n2;
    return u[g.idx(i + di, jj)];
  }
};

SchemeEval inf_scheme(const Stencil& st, double aug) {
  // Wide-stencil min+max over the 8 grid directions: the normalized second
  // derivative along the gradient is 2(g⁺+g⁻)/(d⁺+d⁻), the gradient modulus
  // (g⁺-g⁻)/2, and Δ∞ their product with |∇u|².
  const GridGeometry& g = st.g;
  Vec x0 = g.position(st.i, st.j);
  double gmax = -1e300, gmin = 1e300, dmax = 1.0, dmin_dir = 1.0;
  double dmin = 1e300;
  const int off[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                         {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  double u0 = st.val(0, 0);
  for (const auto& o : off) {
    int jj = st.j + o[1];
    if (g.kind == GridGeometry::Kind::Annulus) jj = (jj % g.n2 + g.n2) % g.n2;
    Vec xn = g.position(st.i + o[0], jj);
    double d = norm(xn - x0);
    double q = (st.val(o[0], o[1]) - u0) / d;
    if (q > gmax) { gmax = q; dmax = d; }
    if (q < gmin) { gmin = q; dmin_dir = d; }
    dmin = std::min(dmin, d);
  }
  double second = 2.0 * (gmax + gmin) / (dmax + dmin_dir);
  double grad = 0.5 * (gmax - gmin);
  SchemeEval ev;
  ev.grad_mag = grad;
  ev.H = grad * grad * second + aug * grad * grad * grad * grad;
  ev.lipschitz = 2.0 * grad * std::abs(second) / dmin +
                 4.0 * grad * grad / (dmin * dmin) +
                 4.0 * std::abs(aug) * grad * grad * grad / dmin;
  return ev;
}

double face_coef(double gr1, double gr2, double q) {
  return std::pow(gr1 * gr1 + gr2 * gr2 + kEpsReg * kEpsReg, 0.5 * q);
}

SchemeEval plap_box(const Stencil& st, double q, double aug) {
  const GridGeometry& g = st.g;
  double dx = g.d1(), dy = g.d2();
  double u0 = st.val(0, 0);
  double uE = st.val(1, 0), uW = st.val(-1, 0), uN = st.val(0, 1), uS = st.val(0, -1);

  double aE = face_coef((uE - u0) / dx,
                        (st.val(1, 1) + uN - st.val(1, -1) - uS) / (4.0 * dy), q);
  double aW = face_coef((u0 - uW) / dx,
                        (uN + st.val(-1, 1) - uS - st.val(-1, -1)) / (4.0 * dy), q);
  double aN = face_coef((uN - u0) / dy,
                        (st.val(1, 1) + uE - st.val(-1, 1) - uW) / (4.0 * dx), q);
  double aS = face_coef((u0 - uS) / dy,
                        (uE + st.val(1, -1) - uW - st.val(-1, -1)) / (4.0 * dx), q);

  double gx = (uE - uW) / (2.0 * dx), gy = (uN - uS) / (2.0 * dy);
  double grad = std::sqrt(gx * gx + gy * gy);

  SchemeEval ev;
  ev.grad_mag = grad;
  ev.H = (aE * (uE - u0) - aW * (u0 - uW)) / (dx * dx) +
         (aN * (uN - u0) - aS * (u0 - uS)) / (dy * dy) +
         aug * (1.0 + q) * std::pow(grad, q + 2.0);
  double dmin = std::min(dx, dy);
  ev.lipschitz = 2.0 * ((aE + aW) / (dx * dx) + (aN + aS) / (dy * dy)) +
                 4.0 * std::abs(aug) * (1.0 + q) * std::pow(grad, q + 1.0) / dmin;
  return ev;
}

SchemeEval plap_annulus(const Stencil& st, double q, double aug) {
  const GridGeometry& g = st.g;
  double dr = g.d1(), dth = g.d2();
  double r = g.inner + dr * st.i;
  double rE = r + 0.5 * dr, rW = r - 0.5 * dr;
  double u0 = st.val(0, 0);
  double uE = st.val(1, 0), uW = st.val(-1, 0), uN = st.val(0, 1), uS = st.val(0, -1);

  double aE = face_coef((uE - u0) / dr,
                        (st.val(1, 1) + uN - st.val(1, -1) - uS) / (4.0 * dth) / rE, q);
  double aW = face_coef((u0 - uW) / dr,
                        (uN + st.val(-1, 1) - uS - st.val(-1, -1)) / (4.0 * dth) / rW, q);
  double aN = face_coef((st.val(1, 1) + uE - st.val(-1, 1) - uW) / (4.0 * dr),
                        (uN - u0) / (r * dth), q);
  double aS = face_coef((uE + st.val(1, -1) - uW - st.val(-1, -1)) / (4.0 * dr),
                        (u0 - uS) / (r * dth), q);

  double ur = (uE - uW) / (2.0 * dr), uth = (uN - uS) / (2.0 * dth);
  double grad = std::sqrt(ur * ur + (uth / r) * (uth / r));

  SchemeEval ev;
  ev.grad_mag = grad;
  ev.H = (rE * aE * (uE - u0) - rW * aW * (u0 - uW)) / (r * dr * dr) +
         (aN * (uN - u0) - aS * (u0 - uS)) / (r * r * dth * dth) +
         aug * (1.0 + q) * std::pow(grad, q + 2.0);
  double dmin = std::min(dr, r * dth);
  ev.lipschitz = 2.0 * ((rE * aE + rW * aW) / (r * dr * dr) +
                        (aN + aS) / (r * r * dth * dth)) +
                 4.0 * std::abs(aug) * (1.0 + q) * std::pow(grad, q + 1.0) / dmin;
  return ev;
}

SchemeEval pucci_eval(const SchemeContext& ctx, double gx, double gy, double hxx,
                      double hxy, double hyy, double spacing_min, double aug) {
  hxx += aug * gx * gx;
  hxy += aug * gx * gy;
  hyy += aug * gy * gy;
  double mean = 0.5 * (hxx + hyy);
  double disc = std::sqrt(0.25 * (hxx - hyy) * (hxx - hyy) + hxy * hxy);
  double l1 = mean + disc, l2 = mean - disc;
  double grad = std::sqrt(gx * gx + gy * gy);
  double w = ctx.q == 0.0 ? 1.0 : std::pow(grad, ctx.q);
  double cp = ctx.pucci_plus ? ctx.vartheta : ctx.theta;   // weight on λ ≥ 0
  double cm = ctx.pucci_plus ? ctx.theta : ctx.vartheta;   // weight on λ < 0
  double val = (l1 >= 0.0 ? cp * l1 : cm * l1) + (l2 >= 0.0 ? cp * l2 : cm * l2);
  SchemeEval ev;
  ev.grad_mag = grad;
  ev.H = w * val;
  double s2 = spacing_min * spacing_min;
  ev.lipschitz = w * ctx.vartheta * 6.0 / s2 +
                 (ctx.q > 0.0
                      ? ctx.q * std::pow(std::max(grad, 1e-12), ctx.q - 1.0) *
                            std::abs(val) / spacing_min
                      : 0.0) +
                 std::abs(aug) * w * ctx.vartheta * 4.0 * grad / spacing_min;
  return ev;
}

SchemeEval pucci_box(const SchemeContext& ctx, const Stencil& st, double aug) {
  const GridGeometry& g = st.g;
  double dx = g.d1(), dy = g.d2();
  double u0 = st.val(0, 0);
  double gx = (st.val(1, 0) - st.val(-1, 0)) / (2.0 * dx);
  double gy = (st.val(0, 1) - st.val(0, -1)) / (2.0 * dy);
  double hxx = (st.val(1, 0) - 2.0 * u0 + st.val(-1, 0)) / (dx * dx);
  double hyy = (st.val(0, 1) - 2.0 * u0 + st.val(0, -1)) / (dy * dy);
  double hxy = (st.val(1, 1) + st.val(-1, -1) - st.val(1, -1) - st.val(-1, 1)) /
               (4.0 * dx * dy);
  return pucci_eval(ctx, gx, gy, hxx, hxy, hyy, std::min(dx, dy), aug);
}

SchemeEval pucci_annulus(const SchemeContext& ctx, const Stencil& st, double aug) {
  const GridGeometry& g = st.g;
  double dr = g.d1(), dth = g.d2();
  double r = g.inner + dr * st.i;
  double th = 2.0 * M_PI * st.j / g.n2;
  double c = std::cos(th), s = std::sin(th);
  double u0 = st.val(0, 0);
  double ur = (st.val(1, 0) - st.val(-1, 0)) / (2.0 * dr);
  double ut = (st.val(0, 1) - st.val(0, -1)) / (2.0 * dth);
  double urr = (st.val(1, 0) - 2.0 * u0 + st.val(-1, 0)) / (dr * dr);
  double utt = (st.val(0, 1) - 2.0 * u0 + st.val(0, -1)) / (dth * dth);
  double urt = (st.val(1, 1) + st.val(-1, -1) - st.val(1, -1) - st.val(-1, 1)) /
               (4.0 * dr * dth);

  double gx = c * ur - s * ut / r;
  double gy = s * ur + c * ut / r;
  double mixed = urt / r - ut / (r * r);
  double angular = ur / r + utt / (r * r);
  double hxx = c * c * urr - 2.0 * c * s * mixed + s * s * angular;
  double hyy = s * s * urr + 2.0 * c * s * mixed + c * c * angular;
  double hxy = c * s * (urr - angular) + (c * c - s * s) * mixed;
  return pucci_eval(ctx, gx, gy, hxx, hxy, hyy, std::min(dr, r * dth), aug);
}

}  // namespace

SchemeEval apply_scheme(const SchemeContext& ctx, const GridGeometry& geom,
                        const std::vector<double>& u, int i, int j, double aug_coef) {
  Stencil st{geom, u, i, j};
  switch (ctx.key) {
    case SchemeKey::Inf:
      return inf_scheme(st, aug_coef);
    case SchemeKey::PLap:
      return geom.kind == GridGeometry::Kind::Box ? plap_box(st, ctx.q, aug_coef)
                                                  : plap_annulus(st, ctx.q, aug_coef);
    case SchemeKey::Pucci:
      return geom.kind == GridGeometry::Kind::Box ? pucci_box(ctx, st, aug_coef)
                                                  : pucci_annulus(ctx, st, aug_coef);
  }
  throw InputError("apply_scheme: unknown scheme");
}

}  // namespace parabarrier
