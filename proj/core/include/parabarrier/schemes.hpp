#pragma once

#include <string>

#include "parabarrier/gridfield.hpp"
#include "parabarrier/operators.hpp"

namespace parabarrier {

/// Spatial discretizations: `inf` is the wide-stencil min+max scheme for the
/// ∞-Laplacian, `plap` conservative differencing for div(|Du|^q Du), `pucci`
/// a discrete-Hessian eigenvalue split.
enum class SchemeKey { Inf, PLap, Pucci };

SchemeKey scheme_from_key(const std::string& key);
std::string to_string(SchemeKey k);

/// Stencil parameters extracted from the operator once per solve. Throws
/// InapplicableError unless the operator matches the stencil family
/// (inf_laplacian / divergence-form p_laplacian_variant / pucci_*).
struct SchemeContext {
  SchemeKey key = SchemeKey::Inf;
  double q = 0.0;         // gradient exponent (plap, pucci)
  double theta = 1.0, vartheta = 1.0;  // pucci ellipticity bounds
  bool pucci_plus = true;
};

SchemeContext make_scheme_context(SchemeKey scheme, const Operator& op);

inline void check_scheme_compatible(SchemeKey scheme, const Operator& op) {
  (void)make_scheme_context(scheme, op);
}

struct SchemeEval {
  double H = 0.0;         // discrete H(Du, D²u) (+ augmentation)
  double grad_mag = 0.0;  // |∇u| estimate for the χ term
  double lipschitz = 0.0; // local explicit-update Lipschitz bound
};

/// Discrete operator at interior node (i, j). aug_coef adds the
/// c·Du⊗Du Hessian augmentation of the transformed equation.
SchemeEval apply_scheme(const SchemeContext& ctx, const GridGeometry& geom,
                        const std::vector<double>& u, int i, int j,
                        double aug_coef = 0.0);

}  // namespace parabarrier
